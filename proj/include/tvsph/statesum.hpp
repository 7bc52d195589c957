#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tvsph/sixj.hpp"
#include "tvsph/trimesh.hpp"

namespace tvsph {

// Edge coloring, indexed parallel to Triangulation::edges().
using Coloring = std::vector<Color>;

struct StateSumResult {
    double value = 0.0;
    std::int64_t colorings_visited = 0;  // search-tree nodes expanded
    std::int64_t admissible_count = 0;   // admissible colorings summed
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One term of the state sum:
//   Delta^{-v} * prod_e Delta_{j(e)} * prod_f (-1)^{j_a+j_b+j_c}
//             * prod_tau {j(tau)}  (TV convention),
// where for a tetrahedron with ascending vertices (a,b,c,d) the symbol
// slots are (j_ab, j_bc, j_ac; j_cd, j_ad, j_bd). The per-face sign is the
// collapsed product of the quarter-turn phases i^{sum 2j} the symbols
// carry; without it the sum is not move-invariant. Returns 0 when any
// face triple is inadmissible.
double tv_term(const Triangulation& t, const SixJEvaluator& ev, const Coloring& c);

struct TvOptions {
    std::int64_t node_budget = 200'000'000;
    int threads = 1;
};

// Full state sum by backtracking over face-admissible colorings,
// most-constrained edges first. Deterministic pairwise accumulation, so
// the value is independent of thread count.
StateSumResult tv(const Triangulation& t, const SixJEvaluator& ev,
                  const TvOptions& opts = {});

}  // namespace tvsph
