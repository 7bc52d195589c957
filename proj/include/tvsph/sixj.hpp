#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "tvsph/qnum.hpp"

namespace tvsph {

// Six colors in the symbol layout {j12 j23 j13; j34 j14 j24}:
// slots 0..2 are the top row, 3..5 the bottom row. Opposite pairs are
// (0,3), (1,4), (2,5).
struct SixTuple {
    std::array<Color, 6> j;

    SixTuple() = default;
    SixTuple(Color j12, Color j23, Color j13, Color j34, Color j14, Color j24)
        : j{j12, j23, j13, j34, j14, j24} {}

    // the four face triples, as slot indices
    static constexpr std::array<std::array<int, 3>, 4> faces = {{
        {0, 1, 2}, {2, 3, 4}, {1, 3, 5}, {0, 5, 4}}};

    bool q_admissible(Level level) const;

    // sum of all 2*j entries, mod 2 (the TV/classical sign exponent)
    int parity() const;

    // lexicographically minimal image under the 24 tetrahedral symmetries
    SixTuple canonical() const;

    friend bool operator==(const SixTuple& a, const SixTuple& b) {
        for (int i = 0; i < 6; ++i)
            if (a.j[static_cast<size_t>(i)].twice_j != b.j[static_cast<size_t>(i)].twice_j) return false;
        return true;
    }
};

enum class Convention { TuraevViro, Classical };

// Quantum 6j symbol at q = exp(pi*i/r) via the Racah single sum over
// quantum factorials, evaluated in log space. The Racah sum yields the
// classical convention; the Turaev-Viro convention differs by
// (-1)^{sum 2j_ab}. Returns 0 for non-q-admissible tuples.
//
// Caches by canonical form, so tetrahedrally equivalent inputs return
// bit-identical values; safe for concurrent use.
class SixJEvaluator {
public:
    explicit SixJEvaluator(Level level);

    double operator()(const SixTuple& t, Convention conv) const;

    Level level() const { return level_; }

private:
    double evaluate_classical(const SixTuple& canon) const;

    struct KeyHash {
        size_t operator()(const std::array<int, 6>& a) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (int v : a) {
                h ^= static_cast<std::uint64_t>(v);
                h *= 0x100000001b3ULL;
            }
            return static_cast<size_t>(h);
        }
    };

    // The alternating Racah sum cancels catastrophically at high level
    // (the largest term can exceed the result by ~10^60 at r ~ 2000);
    // when the double-precision pass loses too many digits the symbol is
    // recomputed with extended-precision arithmetic.
    double evaluate_highprec(const SixTuple& canon) const;

    Level level_;
    QFactorials qf_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::array<int, 6>, double, KeyHash> cache_;

    struct HighPrecTable;
    mutable std::shared_ptr<HighPrecTable> hp_;
    mutable std::mutex hp_mutex_;
};

// one-shot convenience wrapper
double sixj(const SixTuple& t, Level level, Convention conv);

// Residual of the orthogonality relation
// | sum_{j14} Delta_{j14} Delta_m {j12 j13 n; j34 j24 j14}
//                                 {j12 j13 m; j34 j24 j14} - delta_{m,n} |
// where each symbol carries the quarter-turn phase i^{sum 2j} on top of the
// Racah value (the phases multiply to a real sign inside the sum).
double verify_orthogonality(const SixJEvaluator& ev, Color j12, Color j13,
                            Color j34, Color j24, Color m, Color n);

// True when no j14 makes both the m- and n-symbols q-admissible; such
// contexts carry no information (every term vanishes identically) and are
// skipped by the identity sweeps.
bool orthogonality_vacuous(Level level, Color j12, Color j13, Color j34,
                           Color j24, Color m, Color n);

// Pentagon (Biedenharn-Elliot) residual for ten colors j_ab,
// a < b in {1..5}, passed in the order
// (j12, j13, j14, j15, j23, j24, j25, j34, j35, j45):
// | {t(1234)}{t(2345)}
//   - sum_{j15} (-1)^z [2 j15 + 1] {t(1235)}{t(1345)}{t(1245)} |
// with z the sum of all ten colors. The supplied j15 slot is ignored on
// the right-hand side (it is the summation variable).
double verify_pentagon(const SixJEvaluator& ev,
                       const std::array<Color, 10>& j);

// Helpers used by the pentagon verifier and its tests: does every face
// triple of every tetrahedron on either side admit?
bool pentagon_admissible(const std::array<Color, 10>& j, Level level);

}  // namespace tvsph
