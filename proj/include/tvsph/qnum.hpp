#pragma once

#include <stdexcept>
#include <vector>

namespace tvsph {

// Root-of-unity order parameter; q = exp(pi*i/r).
struct Level {
    int r;

    explicit Level(int r_) : r(r_) {
        if (r < 2) throw std::invalid_argument("Level: r must be >= 2");
    }
};

// Half-integer color stored as 2j so all admissibility arithmetic is exact.
struct Color {
    int twice_j = 0;

    Color() = default;
    explicit Color(int twice_j_) : twice_j(twice_j_) {
        if (twice_j < 0) throw std::invalid_argument("Color: 2j must be >= 0");
    }

    double j() const { return 0.5 * twice_j; }

    bool valid_at(Level level) const { return twice_j <= level.r - 2; }

    friend bool operator==(Color a, Color b) { return a.twice_j == b.twice_j; }
    friend bool operator<(Color a, Color b) { return a.twice_j < b.twice_j; }
};

// [n]_q = sin(n pi / r) / sin(pi / r); defined for all integer n.
double quantum_integer(int n, Level level);

// {0, 1/2, ..., (r-2)/2}, ascending.
std::vector<Color> colors(Level level);

// Truncated Clebsch-Gordan condition:
// |j1-j2| <= j3 <= min(j1+j2, r-2-j1-j2) and j1+j2+j3 integral.
bool is_admissible(Color j1, Color j2, Color j3, Level level);

// Delta_j = (-1)^{2j} [2j+1].
double delta_color(Color j, Level level);

// Delta = Delta_a^{-1} sum_{b,c : (a,b,c) admissible} Delta_b Delta_c.
// Independent of a; numerically this equals r / (2 sin^2(pi/r)).
double delta_total(Color a, Level level);

// Quantum factorial table in log space: log[n]! for n = 0..r-1.
// All [k] with 1 <= k <= r-1 are positive, so no sign tracking is needed.
class QFactorials {
public:
    explicit QFactorials(Level level);

    int r() const { return r_; }

    // log([n]!), valid for 0 <= n <= r-1
    double log_fac(int n) const { return log_fac_[static_cast<size_t>(n)]; }

private:
    int r_;
    std::vector<double> log_fac_;
};

}  // namespace tvsph
