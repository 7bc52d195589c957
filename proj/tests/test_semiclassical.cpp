#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvsph/semiclassical.hpp"

using namespace tvsph;

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrapped(double omega) { return std::abs(std::remainder(omega, 2.0 * kPi)); }

// a realized configuration with comfortably non-degenerate tetrahedra,
// signs flipped globally when needed so the sign product is -1 (the
// orientation in which H_CC comes out positive definite)
RealizedConfig good_config(std::uint64_t seed, const Triangulation& fc) {
    for (std::uint64_t idx = 0;; ++idx) {
        RealizedConfig cfg = sample_fivecell_config(fc, seed, idx);
        double gmin = 1e9;
        for (int tet = 0; tet < 5; ++tet)
            gmin = std::min(gmin, gram_det(tet_lengths(fc, cfg.lengths, tet)));
        if (gmin < 1e-2) continue;
        int prod = 1;
        for (int s : cfg.signs) prod *= s;
        if (prod == 1)
            for (int& s : cfg.signs) s = -s;  // defects shift by a full turn only
        return cfg;
    }
}

}  // namespace

TEST_CASE("regular five-cell labelling is flat with all-plus signs") {
    Triangulation fc = fivecell();
    Labelling l(static_cast<size_t>(fc.num_edges()), std::acos(-0.25));
    SignAssignment s(5, 1);
    CHECK(in_labelling_space(fc, l));
    for (double w : all_defects(fc, l, s)) CHECK(wrapped(w) < 1e-12);
}

TEST_CASE("realized configurations are flat") {
    FlatnessReport rep = verify_flatness(2, 50);
    CHECK(rep.count == 50);
    CHECK(rep.max_defect < 1e-9);
}

TEST_CASE("flatness survives a global sign flip") {
    Triangulation fc = fivecell();
    RealizedConfig cfg = sample_fivecell_config(fc, 4, 0);
    SignAssignment flipped = cfg.signs;
    for (int& s : flipped) s = -s;
    for (int e = 0; e < fc.num_edges(); ++e) {
        CHECK(wrapped(defect_angle(fc, cfg.lengths, cfg.signs, e)) < 1e-9);
        CHECK(wrapped(defect_angle(fc, cfg.lengths, flipped, e)) < 1e-9);
    }
}

TEST_CASE("defect derivative closed form") {
    SjacReport rep = verify_sjac(1, 100);
    CHECK(rep.count == 100);
    CHECK(rep.max_rel_dev <= 2e-4);
    CHECK(rep.resolved_sign == -1);
}

TEST_CASE("normalization integral is pi for any context") {
    EdgeLengths6 ctx{1.0, 1.2, 0.9, 1.1, 1.3, 0.8};
    CHECK(normalization_value(ctx, 0) == doctest::Approx(kPi).epsilon(1e-7));
    // opposite-edge lengths for which the existence interval is non-empty
    // in this context (roughly [0.4, 2.0])
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(0.4 + 0.175 * i);
    for (double v : verify_normalization(ctx, 0, grid))
        CHECK(v == doctest::Approx(kPi).epsilon(1e-7));
    // a context whose existence interval is empty must be refused
    EdgeLengths6 fat;
    fat.fill(3.0);
    CHECK_THROWS_AS(normalization_value(fat, 0), std::domain_error);
    CHECK_THROWS_AS(normalization_value(ctx, 6), std::invalid_argument);
}

TEST_CASE("triangle-region double integral is pi, independent of l_a") {
    for (double la : {0.3, 0.8, kPi / 2.0, 2.1, 2.9}) {
        CHECK(delinfty_value(la) == doctest::Approx(kPi).epsilon(1e-9));
        // symmetric in the order of integration
        CHECK(delinfty_value(la, 1e-9, true) ==
              doctest::Approx(delinfty_value(la)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(delinfty_value(0.0), std::invalid_argument);
    CHECK_THROWS_AS(delinfty_value(kPi), std::invalid_argument);
}

TEST_CASE("hessian structure at a flat labelling") {
    Triangulation fc = fivecell();
    RealizedConfig cfg = good_config(11, fc);
    HessianSystem hs = hessian(fc, cfg.lengths, cfg.signs);
    CHECK(hs.asymmetry < 1e-8);
    CHECK(hs.H.rows() == 10);
    // the flat locus is nine-dimensional, so the Hessian has rank one and
    // the positive-definite block is a single edge
    REQUIRE(hs.C.size() == 1);
    CHECK(hs.Cbar.size() == 9);
    CHECK(hs.H(hs.C[0], hs.C[0]) > 0.0);
    // rank one means H_ee H_e'e' = H_ee'^2 for every pair
    CHECK(c_independence_residual(fc, cfg.lengths, cfg.signs) < 1e-6);
}

TEST_CASE("hessian input validation") {
    Triangulation fc = fivecell();
    Labelling l(static_cast<size_t>(fc.num_edges()), std::acos(-0.25));
    SignAssignment wrong(4, 1);
    CHECK_THROWS_AS(defect_angle(fc, l, wrong, 0), std::invalid_argument);
    Labelling short_l(3, 1.0);
    CHECK_THROWS_AS(tet_lengths(fc, short_l, 0), std::invalid_argument);
}

TEST_CASE("sphere invariant by reduction") {
    InvariantResult res = invariant_s3();
    CHECK(res.method == "reduction");
    REQUIRE(res.per_sign.size() == 32);
    double expect = 32.0 / (kPi * kPi * kPi);
    CHECK(res.total == doctest::Approx(expect).epsilon(1e-6));
    for (double p : res.per_sign)
        CHECK(p == doctest::Approx(expect / 32.0).epsilon(1e-6));
    CHECK(res.error < 1e-5);
}

TEST_CASE("monte carlo runs reproducibly") {
    Triangulation fc = fivecell();
    SignAssignment s(5, 1);
    McOptions opts;
    opts.samples = 200'000;
    opts.seed = 1;
    opts.threads = 2;
    InvariantResult a = invariant_mc(fc, s, opts);
    CHECK(a.method == "mc");
    CHECK(a.accepted > 0);
    CHECK(a.error > 0.0);
    // measured value of the default estimator on this region (root-check
    // only); documented, stable across seeds and eps
    CHECK(a.per_sign[0] == doctest::Approx(0.00979).epsilon(0.3));
    // bitwise reproducible regardless of the thread split
    opts.threads = 4;
    InvariantResult b = invariant_mc(fc, s, opts);
    CHECK(b.per_sign[0] == a.per_sign[0]);
    // the flat-locus restriction keeps a strict subset of the mass
    opts.threads = 2;
    opts.restrict_flat = true;
    InvariantResult c = invariant_mc(fc, s, opts);
    CHECK(c.per_sign[0] > 0.0);
    CHECK(c.per_sign[0] < a.per_sign[0]);

    SignAssignment bad(4, 1);
    CHECK_THROWS_AS(invariant_mc(fc, bad, opts), std::invalid_argument);
    Triangulation other = pachner_14(fc, {0, 1, 2, 3}).triangulation;
    SignAssignment eight(8, 1);
    CHECK_THROWS_AS(invariant_mc(other, eight, opts), std::invalid_argument);
}
