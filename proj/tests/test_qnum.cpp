#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvsph/qnum.hpp"

using namespace tvsph;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("quantum integers") {
    for (int r = 2; r <= 12; ++r) {
        Level lv(r);
        CHECK(quantum_integer(0, lv) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(quantum_integer(1, lv) == doctest::Approx(1.0).epsilon(1e-14));
        // [r] = 0, [r - n] = [n]
        CHECK(std::abs(quantum_integer(r, lv)) < 1e-12);
        for (int n = 1; n < r; ++n)
            CHECK(quantum_integer(r - n, lv) ==
                  doctest::Approx(quantum_integer(n, lv)).epsilon(1e-13));
        // against the defining ratio
        for (int n = -3; n <= 2 * r; ++n)
            CHECK(quantum_integer(n, lv) ==
                  doctest::Approx(std::sin(n * kPi / r) / std::sin(kPi / r))
                      .epsilon(1e-13));
    }
    CHECK(quantum_integer(2, Level(4)) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(Level(1), std::invalid_argument);
}

TEST_CASE("color range") {
    Level lv(7);
    auto cs = colors(lv);
    REQUIRE(cs.size() == 6);  // 0, 1/2, ..., 5/2
    for (int i = 0; i < 6; ++i) CHECK(cs[static_cast<size_t>(i)].twice_j == i);
    CHECK(cs.back().valid_at(lv));
    CHECK(!Color(6).valid_at(lv));
    CHECK_THROWS_AS(Color(-1), std::invalid_argument);
}

TEST_CASE("admissibility") {
    Level lv(5);
    // integrality: 2j sum must be even
    CHECK(is_admissible(Color(1), Color(1), Color(2), lv));
    CHECK(!is_admissible(Color(1), Color(1), Color(1), lv));
    // triangle inequality
    CHECK(!is_admissible(Color(0), Color(1), Color(3), lv));
    // truncation: j1+j2+j3 <= r-2
    CHECK(is_admissible(Color(2), Color(2), Color(2), lv));
    CHECK(!is_admissible(Color(3), Color(3), Color(2), lv));
    CHECK(is_admissible(Color(0), Color(0), Color(0), lv));
    // symmetry in the three arguments
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) {
                bool abc = is_admissible(Color(a), Color(b), Color(c), lv);
                CHECK(abc == is_admissible(Color(b), Color(a), Color(c), lv));
                CHECK(abc == is_admissible(Color(c), Color(b), Color(a), lv));
            }
}

TEST_CASE("delta weights") {
    Level lv(5);
    // Delta_j = (-1)^{2j} [2j+1]
    CHECK(delta_color(Color(0), lv) == doctest::Approx(1.0));
    CHECK(delta_color(Color(1), lv) ==
          doctest::Approx(-quantum_integer(2, lv)));
    CHECK(delta_color(Color(2), lv) ==
          doctest::Approx(quantum_integer(3, lv)));
    CHECK(delta_color(Color(3), lv) ==
          doctest::Approx(-quantum_integer(4, lv)));
}

TEST_CASE("total weight closed form and independence of base color") {
    for (int r = 3; r <= 9; ++r) {
        Level lv(r);
        double expect = r / (2.0 * std::pow(std::sin(kPi / r), 2));
        for (Color a : colors(lv))
            CHECK(delta_total(a, lv) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("log factorial table") {
    Level lv(9);
    QFactorials qf(lv);
    CHECK(qf.log_fac(0) == doctest::Approx(0.0));
    double acc = 0.0;
    for (int n = 1; n <= 8; ++n) {
        acc += std::log(quantum_integer(n, lv));
        CHECK(qf.log_fac(n) == doctest::Approx(acc).epsilon(1e-13));
    }
}
