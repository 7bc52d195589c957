#include "tvsph/sphgeom.hpp"

#include <cmath>
#include <numbers>

#include "tvsph/quadrature.hpp"

namespace tvsph {

namespace {

constexpr std::array<std::array<int, 3>, 4> kFaces = {{
    {1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }

// cofactor of the symmetric 4x4 matrix: (-1)^{i+j} * minor(i, j)
double cofactor(const Eigen::Matrix4d& m, int i, int j) {
    Eigen::Matrix3d sub;
    int r = 0;
    for (int a = 0; a < 4; ++a) {
        if (a == i) continue;
        int c = 0;
        for (int b = 0; b < 4; ++b) {
            if (b == j) continue;
            sub(r, c++) = m(a, b);
        }
        ++r;
    }
    const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    return sign * sub.determinant();
}

}  // namespace

Eigen::Matrix4d gram_matrix(const EdgeLengths6& l) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            const double c = std::cos(l[static_cast<size_t>(edge_slot(a, b))]);
            m(a, b) = c;
            m(b, a) = c;
        }
    return m;
}

double gram_det(const EdgeLengths6& l) { return gram_matrix(l).determinant(); }

double cayley_menger_det(const std::vector<double>& lengths, int n) {
    const int pts = n + 1;
    if (static_cast<int>(lengths.size()) != pts * (pts - 1) / 2)
        throw std::invalid_argument("cayley_menger_det: wrong number of lengths");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(pts + 1, pts + 1);
    for (int i = 1; i <= pts; ++i) {
        m(0, i) = 1.0;
        m(i, 0) = 1.0;
    }
    int k = 0;
    for (int i = 0; i < pts; ++i)
        for (int j = i + 1; j < pts; ++j) {
            const double v = -0.5 * lengths[static_cast<size_t>(k)] * lengths[static_cast<size_t>(k)];
            ++k;
            m(i + 1, j + 1) = v;
            m(j + 1, i + 1) = v;
        }
    // orientation fixed so that the value equals (n! Vol)^2; the raw
    // bordered determinant comes out with the opposite sign for n = 1, 2, 3
    return -m.determinant();
}

bool triangle_exists(double l12, double l13, double l23, TriGeometry geometry) {
    if (l12 < 0 || l13 < 0 || l23 < 0) return false;
    const bool euclid = l12 <= l13 + l23 && l13 <= l12 + l23 && l23 <= l12 + l13;
    if (geometry == TriGeometry::Euclidean) return euclid;
    return euclid && l12 + l13 + l23 <= 2.0 * std::numbers::pi;
}

TriangleFactorization triangle_gram_factorization(double l12, double l13,
                                                  double l23, TriGeometry geometry) {
    TriangleFactorization out{};
    if (geometry == TriGeometry::Euclidean) {
        out.determinant = cayley_menger_det({l12, l13, l23}, 2);
        out.product = 0.25 * (l12 + l23 + l13) * (l12 + l23 - l13) *
                      (l12 - l23 + l13) * (-l12 + l23 + l13);
    } else {
        Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
        m(0, 1) = m(1, 0) = std::cos(l12);
        m(0, 2) = m(2, 0) = std::cos(l13);
        m(1, 2) = m(2, 1) = std::cos(l23);
        out.determinant = m.determinant();
        out.product = 4.0 * std::sin(0.5 * (l12 + l23 + l13)) *
                      std::sin(0.5 * (l12 + l23 - l13)) *
                      std::sin(0.5 * (l12 - l23 + l13)) *
                      std::sin(0.5 * (-l12 + l23 + l13));
    }
    return out;
}

bool tetra_exists_spherical(const EdgeLengths6& l) {
    for (double v : l)
        if (!(v > 0.0) || !(v < std::numbers::pi)) return false;
    for (const auto& f : kFaces) {
        const double a = l[static_cast<size_t>(edge_slot(f[0], f[1]))];
        const double b = l[static_cast<size_t>(edge_slot(f[0], f[2]))];
        const double c = l[static_cast<size_t>(edge_slot(f[1], f[2]))];
        if (!triangle_exists(a, b, c, TriGeometry::Spherical)) return false;
    }
    return gram_det(l) > kDegenerateGram;
}

Eigen::Matrix4d realize_spherical(const EdgeLengths6& l) {
    if (!tetra_exists_spherical(l))
        throw GeometryError("spherical tetrahedron does not exist for these lengths");
    const Eigen::Matrix4d m = gram_matrix(l);
    Eigen::LLT<Eigen::Matrix4d> llt(m);
    if (llt.info() != Eigen::Success)
        throw GeometryError("Gram matrix not positive definite");
    return Eigen::Matrix4d(llt.matrixL());  // rows are the unit vertices
}

std::array<double, 6> dihedral_angles(const EdgeLengths6& l) {
    if (!tetra_exists_spherical(l))
        throw GeometryError("dihedral_angles: tetrahedron does not exist");
    const Eigen::Matrix4d m = gram_matrix(l);
    std::array<double, 6> phi{};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            // opposite edge (c,d)
            int c = -1, d = -1;
            for (int v = 0; v < 4; ++v)
                if (v != a && v != b) (c < 0 ? c : d) = v;
            const double ccd = cofactor(m, c, d);
            const double ccc = cofactor(m, c, c);
            const double cdd = cofactor(m, d, d);
            if (!(ccc > 0.0) || !(cdd > 0.0))
                throw GeometryError("dihedral_angles: degenerate face cofactor");
            phi[static_cast<size_t>(edge_slot(a, b))] =
                std::acos(clamp1(-ccd / std::sqrt(ccc * cdd)));
        }
    return phi;
}

EdgeLengths6 lengths_from_vertices(const Eigen::Matrix4d& vertices) {
    EdgeLengths6 l{};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            l[static_cast<size_t>(edge_slot(a, b))] =
                std::acos(clamp1(vertices.row(a).dot(vertices.row(b))));
    return l;
}

std::array<double, 6> measured_dihedral_angles(const Eigen::Matrix4d& vertices) {
    std::array<double, 6> phi{};
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            int c = -1, d = -1;
            for (int v = 0; v < 4; ++v)
                if (v != a && v != b) (c < 0 ? c : d) = v;
            // orthonormal basis of span(v_a, v_b)
            Eigen::Vector4d e1 = vertices.row(a).normalized();
            Eigen::Vector4d vb = vertices.row(b);
            Eigen::Vector4d e2 = (vb - vb.dot(e1) * e1).normalized();
            auto project = [&](int idx) {
                Eigen::Vector4d v = vertices.row(idx);
                Eigen::Vector4d u = v - v.dot(e1) * e1 - v.dot(e2) * e2;
                return u.normalized();
            };
            const Eigen::Vector4d uc = project(c);
            const Eigen::Vector4d ud = project(d);
            phi[static_cast<size_t>(edge_slot(a, b))] = std::acos(clamp1(uc.dot(ud)));
        }
    return phi;
}

namespace {

struct TetCell {
    std::array<Eigen::Vector4d, 4> p;
};

double cell_volume(const TetCell& c) {
    Eigen::Matrix<double, 4, 3> e;
    for (int i = 0; i < 3; ++i) e.col(i) = c.p[static_cast<size_t>(i + 1)] - c.p[0];
    const double g = (e.transpose() * e).determinant();
    return std::sqrt(std::max(0.0, g)) / 6.0;
}

template <typename F>
double cell_rule(const TetCell& c, const F& f) {
    // degree-2 rule: four points at barycentric (alpha, beta, beta, beta)
    constexpr double alpha = 0.5854101966249685;
    constexpr double beta = 0.1381966011250105;
    const double vol = cell_volume(c);
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        Eigen::Vector4d x = Eigen::Vector4d::Zero();
        for (int k = 0; k < 4; ++k)
            x += ((k == i) ? alpha : beta) * c.p[static_cast<size_t>(k)];
        acc += f(x);
    }
    return vol * acc / 4.0;
}

template <typename F>
double cell_rule5(const TetCell& c, const F& f) {
    // 15-point degree-5 rule (Keast); barycentric orbits with weights
    // normalized to sum to 1. Exactness through degree 5 is asserted by
    // the unit tests against monomial integrals.
    const double vol = cell_volume(c);
    auto at = [&](double b0, double b1, double b2, double b3) {
        return f(Eigen::Vector4d(b0 * c.p[0] + b1 * c.p[1] + b2 * c.p[2] + b3 * c.p[3]));
    };
    double acc = 0.1817020685825351 * at(0.25, 0.25, 0.25, 0.25);

    constexpr double w2 = 0.0361607142857143;
    constexpr double t = 1.0 / 3.0;
    acc += w2 * (at(0, t, t, t) + at(t, 0, t, t) + at(t, t, 0, t) + at(t, t, t, 0));

    constexpr double w3 = 0.0698714945161738;
    constexpr double a3 = 0.7272727272727273, b3 = 0.0909090909090909;
    acc += w3 * (at(a3, b3, b3, b3) + at(b3, a3, b3, b3) + at(b3, b3, a3, b3) +
                 at(b3, b3, b3, a3));

    constexpr double w4 = 0.0656948493683187;
    constexpr double a4 = 0.0665501535736643, b4 = 0.4334498464263357;
    acc += w4 * (at(a4, a4, b4, b4) + at(a4, b4, a4, b4) + at(a4, b4, b4, a4) +
                 at(b4, a4, a4, b4) + at(b4, a4, b4, a4) + at(b4, b4, a4, a4));
    return vol * acc;
}

std::array<TetCell, 8> subdivide(const TetCell& c) {
    const auto& v = c.p;
    auto mid = [&](int a, int b) {
        return Eigen::Vector4d(0.5 * (v[static_cast<size_t>(a)] + v[static_cast<size_t>(b)]));
    };
    const Eigen::Vector4d m01 = mid(0, 1), m02 = mid(0, 2), m03 = mid(0, 3);
    const Eigen::Vector4d m12 = mid(1, 2), m13 = mid(1, 3), m23 = mid(2, 3);
    return {TetCell{{v[0], m01, m02, m03}}, TetCell{{m01, v[1], m12, m13}},
            TetCell{{m02, m12, v[2], m23}}, TetCell{{m03, m13, m23, v[3]}},
            TetCell{{m01, m02, m03, m13}}, TetCell{{m01, m02, m12, m13}},
            TetCell{{m02, m03, m13, m23}}, TetCell{{m02, m12, m13, m23}}};
}

template <typename F>
double adapt_cell(const TetCell& c, const F& f, double coarse, double tol, int depth,
                  double* achieved) {
    const auto children = subdivide(c);
    std::array<double, 8> child_vals{};
    double fine = 0.0;
    for (int i = 0; i < 8; ++i) {
        child_vals[static_cast<size_t>(i)] = cell_rule5(children[static_cast<size_t>(i)], f);
        fine += child_vals[static_cast<size_t>(i)];
    }
    // the degree-5 rule converges like h^6, so halving shrinks the error
    // by ~2^6; the parent/children difference overestimates the fine error
    // by the factor 63
    const double err = std::abs(fine - coarse) / 63.0;
    if (err <= tol) return fine + (fine - coarse) / 63.0;
    if (depth <= 0) {
        *achieved = std::max(*achieved, err);
        return fine;
    }
    double acc = 0.0;
    for (int i = 0; i < 8; ++i)
        acc += adapt_cell(children[static_cast<size_t>(i)], f,
                          child_vals[static_cast<size_t>(i)], tol / 8.0, depth - 1, achieved);
    return acc;
}

}  // namespace

double spherical_volume(const EdgeLengths6& l, double tol) {
    const Eigen::Matrix4d verts = realize_spherical(l);
    TetCell root;
    for (int i = 0; i < 4; ++i) root.p[static_cast<size_t>(i)] = verts.row(i);

    // unit normal of the affine hull and its distance h from the origin
    Eigen::Matrix<double, 3, 4> span;
    for (int i = 0; i < 3; ++i)
        span.row(i) = (root.p[static_cast<size_t>(i + 1)] - root.p[0]).transpose();
    Eigen::FullPivLU<Eigen::Matrix<double, 3, 4>> lu(span);
    lu.setThreshold(1e-10);
    const auto kernel = lu.kernel();
    if (kernel.cols() < 1)
        throw GeometryError("spherical_volume: degenerate flat tetrahedron");
    const Eigen::Vector4d normal = kernel.col(0).normalized();
    const double h = std::abs(normal.dot(root.p[0]));
    if (!(h > 1e-12))
        throw GeometryError("spherical_volume: affine hull passes through origin");

    auto integrand = [&](const Eigen::Vector4d& x) {
        const double n2 = x.squaredNorm();
        return h / (n2 * n2);
    };
    double achieved = 0.0;
    const double result =
        adapt_cell(root, integrand, cell_rule5(root, integrand), tol, 16, &achieved);
    if (achieved > 0.0)
        throw QuadratureError("spherical_volume: quadrature did not reach tolerance",
                              achieved);
    return result;
}

TetraGeometry tetra_geometry(const EdgeLengths6& l, double vol_tol) {
    TetraGeometry g;
    g.lengths = l;
    g.gram = gram_det(l);
    g.interior = dihedral_angles(l);
    for (int i = 0; i < 6; ++i)
        g.exterior[static_cast<size_t>(i)] = std::numbers::pi - g.interior[static_cast<size_t>(i)];
    g.volume = spherical_volume(l, vol_tol);
    return g;
}

}  // namespace tvsph
