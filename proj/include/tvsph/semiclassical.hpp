#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvsph/sphgeom.hpp"
#include "tvsph/trimesh.hpp"

namespace tvsph {

// Edge lengths per edge class of a triangulation, values in [0, pi].
// A labelling is admissible when every tetrahedron has positive Gram
// determinant with the induced six lengths.
using Labelling = std::vector<double>;

// One sign in {+1, -1} per tetrahedron, indexed like Triangulation::tets().
using SignAssignment = std::vector<int>;

// lengths of tetrahedron tet_idx induced by the labelling, in the local
// EdgeLengths6 order of the tet's ascending vertex list
EdgeLengths6 tet_lengths(const Triangulation& t, const Labelling& l, int tet_idx);

// true when every tetrahedron has gram_det > kDegenerateGram
bool in_labelling_space(const Triangulation& t, const Labelling& l);

// Defect angle around an edge class:
//   omega = 2 pi - sum over incident tets of s(tau) * phi(tau)
// with phi the interior dihedral angle of tau at the edge. A labelling is
// flat when omega == 0 mod 2 pi at every edge. Throws GeometryError when
// an incident tetrahedron is degenerate.
double defect_angle(const Triangulation& t, const Labelling& l,
                    const SignAssignment& s, int edge_class);

std::vector<double> all_defects(const Triangulation& t, const Labelling& l,
                                const SignAssignment& s);

struct HessianSystem {
    Eigen::MatrixXd H;          // d omega_i / d l_j, symmetrized
    std::vector<int> C;         // maximal edge subset with H_CC positive definite
    std::vector<int> Cbar;      // complement, in edge-class order
    double asymmetry;           // max |H - H^T| before symmetrization
};

// Hessian of the defects by central finite differences (step h with a
// Richardson consistency pass at 2h), then symmetrized. C is selected
// greedily: edges sorted by diagonal entry descending, an edge joins C
// when the incremental Cholesky pivot stays above 1e-8; maximality is
// re-checked against every remaining edge. Throws std::runtime_error when
// the raw asymmetry exceeds 1e-6.
HessianSystem hessian(const Triangulation& t, const Labelling& l,
                      const SignAssignment& s, double h = 1e-5);

// Five points on the unit sphere in E^4 realizing a flat labelling of the
// 5-cell: lengths are geodesic distances, signs are the orientations of
// the five 4-point subsets (tet i omits point i) relative to the complex
// orientation. Point coordinates are a pure function of (seed, index).
struct RealizedConfig {
    Eigen::Matrix<double, 5, 4> points;  // rows are unit vectors
    Labelling lengths;                   // per 5-cell edge class
    SignAssignment signs;                // per tet, flat by construction
};
RealizedConfig sample_fivecell_config(const Triangulation& fivecell,
                                      std::uint64_t seed, std::uint64_t index);

struct FlatnessReport {
    double max_defect;  // max over configs and edges of |omega mod 2 pi|
    int count;
    int resampled;      // configs rejected for a small Gram determinant
};
// realized configurations are flat: every defect is 0 mod 2 pi
FlatnessReport verify_flatness(std::uint64_t seed, int count);

struct SjacReport {
    double max_rel_dev;  // of d omega_04 / d l_04 vs the closed form
    int resolved_sign;   // global sign between the two (fixed empirically)
    int resampled;
    int count;
};
// Derivative identity for the three tetrahedra around edge (04) of the
// 5-cell: d omega_04 / d l_04 (finite differences, other nine lengths
// fixed) against s0 s1 s2 s3 s4 sin^2(l_04) sqrt(G0 G4 / (G1 G2 G3)),
// where G_i is the Gram determinant of the tet omitting vertex i, over
// `count` realized configurations. The s0 s4 factor is what makes one
// global resolved sign valid across all realized orientations.
SjacReport verify_sjac(std::uint64_t seed, int count, double fd_step = 1e-5);

// opposite edge slot in EdgeLengths6 order
constexpr int opposite_slot(int slot) { return 5 - slot; }

// sin(l_cd) * integral of sin(l_ab)/sqrt(G) over {l_ab : G > 0}, with the
// other five lengths taken from `context` (slot ab is overwritten). The
// inverse-sqrt endpoint singularities are removed by a quadratic
// substitution. Throws std::domain_error when the existence interval is
// empty. The value is pi for every valid context.
double normalization_value(EdgeLengths6 context, int ab_slot, double tol = 1e-9);

// sweep of normalization_value over a grid of l_cd values (slot 5 - ab_slot)
std::vector<double> verify_normalization(EdgeLengths6 context, int ab_slot,
                                         const std::vector<double>& lcd_grid,
                                         double tol = 1e-9);

// (1 / sin l_a) * double integral of sin l_b sin l_c over the region cut
// out by the three triangle inequalities and l_a + l_b + l_c <= 2 pi.
// The value is pi, independent of l_a in (0, pi): the inner integral is
// cos(lo) - cos(hi) analytically and the outer one is evaluated with the
// kinks split out. swap_order integrates l_b innermost instead of l_c
// (identical by the symmetry of region and integrand).
double delinfty_value(double l_a, double tol = 1e-9, bool swap_order = false);

struct InvariantResult {
    std::vector<double> per_sign;   // contribution per sign assignment
    double total;                   // sum over sign assignments
    std::string method;             // "reduction" or "mc"
    double error;                   // propagated tolerance resp. standard error
    // Monte Carlo diagnostics (zero for the reduction method)
    long long samples = 0;
    long long accepted = 0;
    long long root_failures = 0;
};

// I(S^3) assembled from the verified one-dimensional integrals: per sign
// assignment (1/2pi)^5 * pi * pi * 2^5 where the two pi factors are
// normalization_value on the tetrahedra (1234) and (0123) of a realized
// 5-cell configuration and the five factors of 2 are plain integrals of
// sin over [0, pi]. Total is 2^5 times the per-sign value, one entry per
// sign assignment.
InvariantResult invariant_s3();

struct McOptions {
    long long samples = 10'000'000;
    std::uint64_t seed = 1;
    double eps = 1e-6;   // Gram-determinant acceptance cutoff
    int threads = 0;     // 0 = hardware concurrency
    // when set, only samples whose solved labelling is flat at every edge
    // for the given sign assignment contribute (the flat locus of the
    // defining integral); by default every accepted sample with a solved
    // l_04 contributes
    bool restrict_flat = false;
};

// Monte Carlo cross-check of the per-sign value on the 5-cell with
// C = {edge (0,4)}: the nine other lengths are sampled uniformly in
// [0, pi]^9, a sample is accepted when the tetrahedra (0123) and (1234)
// exist, the flat l_04 is solved by root-finding on the defect (failures
// are counted and excluded), and the estimator is
// prod_{e in Cbar} sin(l_e) / sqrt(G0 G4); with restrict_flat the
// remaining defects must also vanish mod 2 pi so that only the flat
// locus of the given sign assignment contributes.
// Throws std::invalid_argument
// unless t is the 5-cell, std::runtime_error when the acceptance rate
// falls below 1e-4.
InvariantResult invariant_mc(const Triangulation& t, const SignAssignment& s,
                             const McOptions& opts = {});

// C-independence at a flat 5-cell labelling: the determinant relation
// det(H_C'C') = det(H_CC) det(D)^2 across singleton choices of C, with D
// the implicit-function Jacobian -H_{C C'}/H_{C C}. Returns the max
// relative residual over all valid singleton pairs.
double c_independence_residual(const Triangulation& t, const Labelling& l,
                               const SignAssignment& s);

}  // namespace tvsph
