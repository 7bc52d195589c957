#include "tvsph/qnum.hpp"

#include <cmath>
#include <numbers>

namespace tvsph {

double quantum_integer(int n, Level level) {
    const double pi_over_r = std::numbers::pi / level.r;
    return std::sin(n * pi_over_r) / std::sin(pi_over_r);
}

std::vector<Color> colors(Level level) {
    std::vector<Color> out;
    out.reserve(static_cast<size_t>(level.r - 1));
    for (int t = 0; t <= level.r - 2; ++t) out.emplace_back(t);
    return out;
}

bool is_admissible(Color j1, Color j2, Color j3, Level level) {
    const int a = j1.twice_j, b = j2.twice_j, c = j3.twice_j;
    if ((a + b + c) % 2 != 0) return false;
    if (c < std::abs(a - b)) return false;
    if (c > a + b) return false;
    if (a + b + c > 2 * (level.r - 2)) return false;
    return true;
}

double delta_color(Color j, Level level) {
    const double sign = (j.twice_j % 2 == 0) ? 1.0 : -1.0;
    return sign * quantum_integer(j.twice_j + 1, level);
}

double delta_total(Color a, Level level) {
    double sum = 0.0;
    for (Color b : colors(level))
        for (Color c : colors(level))
            if (is_admissible(a, b, c, level))
                sum += delta_color(b, level) * delta_color(c, level);
    return sum / delta_color(a, level);
}

QFactorials::QFactorials(Level level) : r_(level.r) {
    log_fac_.resize(static_cast<size_t>(r_));
    log_fac_[0] = 0.0;
    const double pi_over_r = std::numbers::pi / r_;
    const double log_sin1 = std::log(std::sin(pi_over_r));
    for (int n = 1; n <= r_ - 1; ++n)
        log_fac_[static_cast<size_t>(n)] =
            log_fac_[static_cast<size_t>(n - 1)] +
            std::log(std::sin(n * pi_over_r)) - log_sin1;
}

}  // namespace tvsph
