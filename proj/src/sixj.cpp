#include "tvsph/sixj.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace tvsph {

namespace {

// The 24 tetrahedral symmetries: permute the three opposite pairs
// (0,3), (1,4), (2,5) and swap top/bottom in an even number of columns.
constexpr std::array<std::array<int, 3>, 6> kColPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
constexpr std::array<std::array<bool, 3>, 4> kColFlips = {{
    {false, false, false}, {true, true, false},
    {true, false, true}, {false, true, true}}};

std::array<int, 6> apply_symmetry(const std::array<int, 6>& t,
                                  const std::array<int, 3>& perm,
                                  const std::array<bool, 3>& flip) {
    std::array<int, 6> out{};
    for (int c = 0; c < 3; ++c) {
        const int src = perm[static_cast<size_t>(c)];
        int top = t[static_cast<size_t>(src)];
        int bot = t[static_cast<size_t>(src + 3)];
        if (flip[static_cast<size_t>(c)]) std::swap(top, bot);
        out[static_cast<size_t>(c)] = top;
        out[static_cast<size_t>(c + 3)] = bot;
    }
    return out;
}

}  // namespace

bool SixTuple::q_admissible(Level level) const {
    for (const auto& f : faces) {
        if (!is_admissible(j[static_cast<size_t>(f[0])], j[static_cast<size_t>(f[1])],
                           j[static_cast<size_t>(f[2])], level))
            return false;
    }
    return true;
}

int SixTuple::parity() const {
    int s = 0;
    for (const auto& c : j) s += c.twice_j;
    return s % 2;
}

SixTuple SixTuple::canonical() const {
    std::array<int, 6> t{};
    for (int i = 0; i < 6; ++i) t[static_cast<size_t>(i)] = j[static_cast<size_t>(i)].twice_j;
    std::array<int, 6> best = t;
    for (const auto& perm : kColPerms)
        for (const auto& flip : kColFlips)
            best = std::min(best, apply_symmetry(t, perm, flip));
    SixTuple out;
    for (int i = 0; i < 6; ++i) out.j[static_cast<size_t>(i)] = Color(best[static_cast<size_t>(i)]);
    return out;
}

SixJEvaluator::SixJEvaluator(Level level) : level_(level), qf_(level) {}

double SixJEvaluator::evaluate_classical(const SixTuple& t) const {
    const int a = t.j[0].twice_j, b = t.j[1].twice_j, c = t.j[2].twice_j;
    const int d = t.j[3].twice_j, e = t.j[4].twice_j, f = t.j[5].twice_j;

    const int T1 = (a + b + c) / 2;
    const int T2 = (a + e + f) / 2;
    const int T3 = (b + d + f) / 2;
    const int T4 = (c + d + e) / 2;
    const int Q1 = (a + b + d + e) / 2;
    const int Q2 = (b + c + e + f) / 2;
    const int Q3 = (a + c + d + f) / 2;

    const int zmin = std::max({T1, T2, T3, T4});
    const int zmax = std::min({Q1, Q2, Q3, qf_.r() - 2});
    if (zmin > zmax) return 0.0;

    auto log_triangle = [&](int x, int y, int z) {
        return 0.5 * (qf_.log_fac((x + y - z) / 2) + qf_.log_fac((x - y + z) / 2) +
                      qf_.log_fac((-x + y + z) / 2) - qf_.log_fac((x + y + z) / 2 + 1));
    };
    const double log_pref = log_triangle(a, b, c) + log_triangle(a, e, f) +
                            log_triangle(b, d, f) + log_triangle(c, d, e);

    auto log_term = [&](int z) {
        return qf_.log_fac(z + 1) - qf_.log_fac(z - T1) - qf_.log_fac(z - T2) -
               qf_.log_fac(z - T3) - qf_.log_fac(z - T4) - qf_.log_fac(Q1 - z) -
               qf_.log_fac(Q2 - z) - qf_.log_fac(Q3 - z);
    };

    double lmax = -std::numeric_limits<double>::infinity();
    for (int z = zmin; z <= zmax; ++z) lmax = std::max(lmax, log_term(z));

    double sum = 0.0;
    for (int z = zmin; z <= zmax; ++z) {
        const double term = std::exp(log_term(z) - lmax);
        sum += (z % 2 == 0) ? term : -term;
    }
    const double value = sum * std::exp(lmax + log_pref);

    // Digits lost to cancellation between the largest term and the result.
    // The terms themselves only carry about 15 - log10(|exponent|) good
    // digits (the log-factorial table has ~1e-15 relative error, amplified
    // by exponentiation), so demand a healthy margin before trusting the
    // double pass; otherwise recompute in extended precision.
    const double lost = (lmax + log_pref - std::log(std::abs(value))) / std::log(10.0);
    const double term_digits = 15.0 - std::log10(1.0 + std::abs(lmax + log_pref));
    if (!std::isfinite(lost) || term_digits - lost < 9.0) return evaluate_highprec(t);
    return value;
}

namespace {
// 120 decimal digits: covers cancellation up to ~10^100, far beyond the
// ~10^65 reached at level 2000
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>>;
}  // namespace

struct SixJEvaluator::HighPrecTable {
    std::vector<BigFloat> log_fac;  // log [n]! for n = 0 .. r-2
};

double SixJEvaluator::evaluate_highprec(const SixTuple& t) const {
    {
        std::lock_guard lock(hp_mutex_);
        if (!hp_) {
            auto table = std::make_shared<HighPrecTable>();
            const int r = qf_.r();
            const BigFloat pi = boost::math::constants::pi<BigFloat>();
            const BigFloat log_s1 = log(sin(pi / r));
            // n runs to r-1: the z-sum numerator reaches log [z+1]! with
            // z at most r-2
            table->log_fac.resize(static_cast<size_t>(r));
            table->log_fac[0] = 0;
            BigFloat acc = 0;
            for (int n = 1; n <= r - 1; ++n) {
                acc += log(sin(n * pi / r)) - log_s1;
                table->log_fac[static_cast<size_t>(n)] = acc;
            }
            hp_ = std::move(table);
        }
    }
    const auto& lf = hp_->log_fac;
    auto log_fac = [&](int twice_n) { return lf[static_cast<size_t>(twice_n / 2)]; };

    const int a = t.j[0].twice_j, b = t.j[1].twice_j, c = t.j[2].twice_j;
    const int d = t.j[3].twice_j, e = t.j[4].twice_j, f = t.j[5].twice_j;
    const int T1 = (a + b + c) / 2, T2 = (a + e + f) / 2;
    const int T3 = (b + d + f) / 2, T4 = (c + d + e) / 2;
    const int Q1 = (a + b + d + e) / 2, Q2 = (b + c + e + f) / 2;
    const int Q3 = (a + c + d + f) / 2;
    const int zmin = std::max({T1, T2, T3, T4});
    const int zmax = std::min({Q1, Q2, Q3, qf_.r() - 2});
    if (zmin > zmax) return 0.0;

    auto log_triangle = [&](int x, int y, int z) {
        return (log_fac(x + y - z) + log_fac(x - y + z) + log_fac(-x + y + z) -
                log_fac(x + y + z + 2)) / 2;
    };
    const BigFloat log_pref = log_triangle(a, b, c) + log_triangle(a, e, f) +
                              log_triangle(b, d, f) + log_triangle(c, d, e);

    BigFloat sum = 0;
    for (int z = zmin; z <= zmax; ++z) {
        const BigFloat term =
            exp(log_fac(2 * z + 2) - log_fac(2 * (z - T1)) - log_fac(2 * (z - T2)) -
                log_fac(2 * (z - T3)) - log_fac(2 * (z - T4)) - log_fac(2 * (Q1 - z)) -
                log_fac(2 * (Q2 - z)) - log_fac(2 * (Q3 - z)) + log_pref);
        sum += (z % 2 == 0) ? term : -term;
    }
    return sum.convert_to<double>();
}

double SixJEvaluator::operator()(const SixTuple& t, Convention conv) const {
    for (const auto& c : t.j)
        if (!c.valid_at(level_))
            throw std::invalid_argument("sixj: color out of range at this level");
    if (!t.q_admissible(level_)) return 0.0;

    const SixTuple canon = t.canonical();
    std::array<int, 6> key{};
    for (int i = 0; i < 6; ++i) key[static_cast<size_t>(i)] = canon.j[static_cast<size_t>(i)].twice_j;

    double classical;
    bool found = false;
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            classical = it->second;
            found = true;
        }
    }
    if (!found) {
        classical = evaluate_classical(canon);
        std::unique_lock lock(mutex_);
        cache_.emplace(key, classical);
    }

    if (conv == Convention::Classical) return classical;
    return (t.parity() == 0) ? classical : -classical;
}

double sixj(const SixTuple& t, Level level, Convention conv) {
    SixJEvaluator ev(level);
    return ev(t, conv);
}

double verify_orthogonality(const SixJEvaluator& ev, Color j12, Color j13,
                            Color j34, Color j24, Color m, Color n) {
    const Level level = ev.level();
    double sum = 0.0;
    for (Color j14 : colors(level)) {
        SixTuple tn(j12, j13, n, j34, j24, j14);
        SixTuple tm(j12, j13, m, j34, j24, j14);
        const double sn = ev(tn, Convention::Classical);
        if (sn == 0.0) continue;
        const double sm = ev(tm, Convention::Classical);
        // Each symbol carries a quarter-turn phase i^{Σ 2j}; the product of
        // the two phases is real here (the total is always even) and equals
        // (-1)^{(Σ 2j + Σ 2j')/2}. Without it the identity fails in every
        // context whose fixed pair sums are half-integers.
        int d = 0;
        for (const auto& c : tn.j) d += c.twice_j;
        for (const auto& c : tm.j) d += c.twice_j;
        const double phase = ((d / 2) % 2 == 0) ? 1.0 : -1.0;
        sum += phase * delta_color(j14, level) * delta_color(m, level) * sn * sm;
    }
    const double target = (m == n) ? 1.0 : 0.0;
    return std::abs(sum - target);
}

bool orthogonality_vacuous(Level level, Color j12, Color j13, Color j34,
                           Color j24, Color m, Color n) {
    for (Color j14 : colors(level)) {
        if (SixTuple(j12, j13, n, j34, j24, j14).q_admissible(level) &&
            SixTuple(j12, j13, m, j34, j24, j14).q_admissible(level))
            return false;
    }
    return true;
}

namespace {

// index into the ten-color array (12,13,14,15,23,24,25,34,35,45),
// vertices 1..5
int pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    static constexpr int base[5] = {0, 4, 7, 9, 10};
    return base[static_cast<size_t>(a - 1)] + (b - a - 1);
}

SixTuple tet_symbol(const std::array<Color, 10>& j, int a, int b, int c, int d) {
    auto J = [&](int x, int y) { return j[static_cast<size_t>(pair_index(x, y))]; };
    return SixTuple(J(a, b), J(b, c), J(a, c), J(c, d), J(a, d), J(b, d));
}

}  // namespace

bool pentagon_admissible(const std::array<Color, 10>& j, Level level) {
    for (int a = 1; a <= 3; ++a)
        for (int b = a + 1; b <= 4; ++b)
            for (int c = b + 1; c <= 5; ++c) {
                auto J = [&](int x, int y) {
                    return j[static_cast<size_t>(pair_index(x, y))];
                };
                if (!is_admissible(J(a, b), J(b, c), J(a, c), level)) return false;
            }
    return true;
}

double verify_pentagon(const SixJEvaluator& ev, const std::array<Color, 10>& j) {
    const Level level = ev.level();
    const Convention conv = Convention::TuraevViro;

    const double lhs = ev(tet_symbol(j, 1, 2, 3, 4), conv) *
                       ev(tet_symbol(j, 2, 3, 4, 5), conv);

    double rhs = 0.0;
    std::array<Color, 10> jj = j;
    const int i15 = pair_index(1, 5);
    for (Color j15 : colors(level)) {
        jj[static_cast<size_t>(i15)] = j15;
        const double t1 = ev(tet_symbol(jj, 1, 2, 3, 5), conv);
        if (t1 == 0.0) continue;
        const double t2 = ev(tet_symbol(jj, 1, 3, 4, 5), conv);
        if (t2 == 0.0) continue;
        const double t3 = ev(tet_symbol(jj, 1, 2, 4, 5), conv);
        if (t3 == 0.0) continue;
        int twice_z = 0;
        for (const auto& c : jj) twice_z += c.twice_j;
        const double sign = ((twice_z / 2) % 2 == 0) ? 1.0 : -1.0;
        rhs += sign * quantum_integer(j15.twice_j + 1, level) * t1 * t2 * t3;
    }
    return std::abs(lhs - rhs);
}

}  // namespace tvsph
