#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace tvsph {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Six edge lengths of a labelled tetrahedron on vertices {0,1,2,3},
// stored in the order (l01, l02, l03, l12, l13, l23).
using EdgeLengths6 = std::array<double, 6>;

// index of the edge (a,b), a < b, in EdgeLengths6
constexpr int edge_slot(int a, int b) {
    if (a > b) { int t = a; a = b; b = t; }
    constexpr int base[3] = {0, 3, 5};
    return base[a] + (b - a - 1);
}

// determinant threshold below which a configuration is reported degenerate
inline constexpr double kDegenerateGram = 1e-12;

// 4x4 matrix of cos(l_ab) with unit diagonal
Eigen::Matrix4d gram_matrix(const EdgeLengths6& l);

// G = det(cos(l_ab))
double gram_det(const EdgeLengths6& l);

// Bordered Cayley-Menger determinant G0 for n+1 points with all pairwise
// lengths given (row-major strict upper triangle, length (n+1)n/2);
// (n! Vol)^2 = G0 for a realizable Euclidean simplex.
double cayley_menger_det(const std::vector<double>& lengths, int n);

enum class TriGeometry { Euclidean, Spherical };

bool triangle_exists(double l12, double l13, double l23, TriGeometry geometry);

struct TriangleFactorization {
    double determinant;  // G0 (Euclidean) or G (spherical 3x3 Gram det)
    double product;      // the four-factor product form
};
TriangleFactorization triangle_gram_factorization(double l12, double l13,
                                                  double l23, TriGeometry geometry);

bool tetra_exists_spherical(const EdgeLengths6& l);

// Four unit vectors in E^4 realizing the lengths (rows of the returned
// matrix); throws GeometryError if the tetrahedron does not exist.
Eigen::Matrix4d realize_spherical(const EdgeLengths6& l);

// Interior dihedral angles per edge, same indexing as EdgeLengths6.
// cos(phi_ab) = -c_cd / sqrt(c_cc c_dd) with c the Gram cofactors and
// (c,d) the opposite edge.
std::array<double, 6> dihedral_angles(const EdgeLengths6& l);

// Volume of the spherical tetrahedron, by adaptive quadrature of the
// cone-projection integrand over the flat tetrahedron of the realized
// vertices. Target absolute error `tol`.
double spherical_volume(const EdgeLengths6& l, double tol = 1e-8);

struct TetraGeometry {
    EdgeLengths6 lengths;
    double gram;                       // G
    std::array<double, 6> interior;    // phi_ab
    std::array<double, 6> exterior;    // theta_ab = pi - phi_ab
    double volume;
};
TetraGeometry tetra_geometry(const EdgeLengths6& l, double vol_tol = 1e-8);

// lengths between rows of a vertex matrix (acos of pairwise dots)
EdgeLengths6 lengths_from_vertices(const Eigen::Matrix4d& vertices);

// Interior dihedral angles measured from an explicit realization by
// tangent-space projection at each edge; the oracle the cofactor formula
// is tested against.
std::array<double, 6> measured_dihedral_angles(const Eigen::Matrix4d& vertices);

}  // namespace tvsph
