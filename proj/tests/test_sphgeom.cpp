#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvsph/rng.hpp"
#include "tvsph/sphgeom.hpp"

using namespace tvsph;

namespace {

constexpr double kPi = 3.14159265358979323846;

// deterministic random 4 points on S^3; returns false when too flat
bool random_vertices(std::uint64_t seed, std::uint64_t index, Eigen::Matrix4d& M) {
    CounterRng rng(seed, index);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double u1 = rng.next(), u2 = rng.next();
            M(i, j) = std::sqrt(-2.0 * std::log(u1 + 1e-300)) *
                      std::cos(2.0 * kPi * u2);
        }
        M.row(i).normalize();
    }
    return gram_det(lengths_from_vertices(M)) > 1e-2;
}

}  // namespace

TEST_CASE("triangle existence, both geometries") {
    CHECK(triangle_exists(1.0, 1.0, 1.0, TriGeometry::Euclidean));
    CHECK(!triangle_exists(1.0, 1.0, 2.5, TriGeometry::Euclidean));
    CHECK(triangle_exists(1.0, 1.0, 2.5, TriGeometry::Spherical) ==
          false);  // ordinary inequality still applies
    CHECK(triangle_exists(2.0, 2.0, 2.0, TriGeometry::Spherical));
    // perimeter bound is spherical-only
    CHECK(!triangle_exists(2.5, 2.5, 2.0, TriGeometry::Spherical));
    CHECK(triangle_exists(2.5, 2.5, 2.0, TriGeometry::Euclidean));
}

TEST_CASE("triangle determinant factorizations") {
    for (auto geom : {TriGeometry::Euclidean, TriGeometry::Spherical}) {
        for (double a : {0.4, 0.9}) {
            for (double b : {0.7, 1.3}) {
                for (double c : {0.8, 1.1}) {
                    auto f = triangle_gram_factorization(a, b, c, geom);
                    CHECK(f.determinant ==
                          doctest::Approx(f.product).epsilon(1e-11));
                }
            }
        }
    }
    // direct value: unit Euclidean triangle, (2! Area)^2 = 3/4
    auto f = triangle_gram_factorization(1.0, 1.0, 1.0, TriGeometry::Euclidean);
    CHECK(f.determinant == doctest::Approx(0.75));
}

TEST_CASE("Cayley-Menger values") {
    // unit triangle (n=2): (2! * sqrt(3)/4)^2 = 3/4
    CHECK(cayley_menger_det({1.0, 1.0, 1.0}, 2) == doctest::Approx(0.75));
    // regular unit tetrahedron (n=3): Vol = 1/(6 sqrt 2), so (3! Vol)^2 = 1/2
    CHECK(cayley_menger_det({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, 3) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // degenerate: four collinear-ish points give 0
    CHECK(cayley_menger_det({1.0, 2.0, 3.0, 1.0, 2.0, 1.0}, 3) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("realization round trip and dihedral oracle") {
    int done = 0;
    for (std::uint64_t idx = 0; idx < 40 && done < 15; ++idx) {
        Eigen::Matrix4d M;
        if (!random_vertices(11, idx, M)) continue;
        ++done;
        EdgeLengths6 l = lengths_from_vertices(M);
        REQUIRE(tetra_exists_spherical(l));
        Eigen::Matrix4d R = realize_spherical(l);
        EdgeLengths6 back = lengths_from_vertices(R);
        for (int s = 0; s < 6; ++s)
            CHECK(back[static_cast<size_t>(s)] ==
                  doctest::Approx(l[static_cast<size_t>(s)]).epsilon(1e-10));
        // cofactor dihedral formula against tangent-space measurement
        auto cof = dihedral_angles(l);
        auto meas = measured_dihedral_angles(M);
        for (int s = 0; s < 6; ++s)
            CHECK(cof[static_cast<size_t>(s)] ==
                  doctest::Approx(meas[static_cast<size_t>(s)]).epsilon(1e-9));
    }
    CHECK(done == 15);
}

TEST_CASE("orthant tetrahedron") {
    EdgeLengths6 l;
    l.fill(kPi / 2.0);
    CHECK(gram_det(l) == doctest::Approx(1.0));
    auto phi = dihedral_angles(l);
    for (double p : phi) CHECK(p == doctest::Approx(kPi / 2.0));
    // one sixteenth of the 3-sphere volume 2 pi^2
    CHECK(spherical_volume(l, 1e-9) ==
          doctest::Approx(kPi * kPi / 8.0).epsilon(1e-7));
}

TEST_CASE("nonexistent lengths are rejected") {
    EdgeLengths6 bad{0.1, 0.1, 0.1, 2.0, 2.0, 2.0};
    CHECK(!tetra_exists_spherical(bad));
    CHECK_THROWS_AS(realize_spherical(bad), GeometryError);
}

TEST_CASE("derivative of an opposite dihedral angle") {
    // d(phi_cd)/d(l_ab) with the other lengths fixed equals
    // sin(l_ab) sin(l_cd) / sqrt(G), positive in the interior convention
    int done = 0;
    const double h = 1e-6;
    for (std::uint64_t idx = 0; idx < 60 && done < 15; ++idx) {
        Eigen::Matrix4d M;
        if (!random_vertices(23, idx, M)) continue;
        ++done;
        EdgeLengths6 l = lengths_from_vertices(M);
        double G = gram_det(l);
        for (int ab = 0; ab < 6; ++ab) {
            int cd = 5 - ab;
            EdgeLengths6 lp = l, lm = l;
            lp[static_cast<size_t>(ab)] += h;
            lm[static_cast<size_t>(ab)] -= h;
            double d = (dihedral_angles(lp)[static_cast<size_t>(cd)] -
                        dihedral_angles(lm)[static_cast<size_t>(cd)]) /
                       (2.0 * h);
            double closed = std::sin(l[static_cast<size_t>(ab)]) *
                            std::sin(l[static_cast<size_t>(cd)]) / std::sqrt(G);
            CHECK(d == doctest::Approx(closed).epsilon(1e-5));
        }
    }
    CHECK(done == 15);
}

TEST_CASE("Schlafli differential") {
    // 2 dVol = sum_e l_e dphi_e with interior angles (equivalently
    // -sum l dtheta with exterior ones)
    const double h = 1e-6;
    int done = 0;
    for (std::uint64_t idx = 0; idx < 60 && done < 6; ++idx) {
        Eigen::Matrix4d M;
        if (!random_vertices(37, idx, M)) continue;
        ++done;
        EdgeLengths6 l = lengths_from_vertices(M);
        for (int pert : {0, 3, 5}) {
            EdgeLengths6 lp = l, lm = l;
            lp[static_cast<size_t>(pert)] += h;
            lm[static_cast<size_t>(pert)] -= h;
            double dv2 = (spherical_volume(lp, 1e-11) - spherical_volume(lm, 1e-11)) / h;
            auto ap = dihedral_angles(lp), am = dihedral_angles(lm);
            double rhs = 0.0;
            for (int e = 0; e < 6; ++e)
                rhs += l[static_cast<size_t>(e)] *
                       (ap[static_cast<size_t>(e)] - am[static_cast<size_t>(e)]) /
                       (2.0 * h);
            CHECK(dv2 == doctest::Approx(rhs).epsilon(2e-4));
        }
    }
    CHECK(done == 6);
}

TEST_CASE("full geometry bundle is internally consistent") {
    Eigen::Matrix4d M;
    std::uint64_t idx = 0;
    while (!random_vertices(5, idx, M)) {
        ++idx;
        REQUIRE(idx < 100);
    }
    EdgeLengths6 l = lengths_from_vertices(M);
    TetraGeometry g = tetra_geometry(l);
    CHECK(g.gram == doctest::Approx(gram_det(l)));
    for (int s = 0; s < 6; ++s) {
        CHECK(g.exterior[static_cast<size_t>(s)] ==
              doctest::Approx(kPi - g.interior[static_cast<size_t>(s)]));
    }
    CHECK(g.volume > 0.0);
    CHECK(g.volume < 2.0 * kPi * kPi);
}

TEST_CASE("edge slot layout") {
    CHECK(edge_slot(0, 1) == 0);
    CHECK(edge_slot(0, 2) == 1);
    CHECK(edge_slot(0, 3) == 2);
    CHECK(edge_slot(1, 2) == 3);
    CHECK(edge_slot(1, 3) == 4);
    CHECK(edge_slot(2, 3) == 5);
    CHECK(edge_slot(3, 2) == 5);  // order-insensitive
}
