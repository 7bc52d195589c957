#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tvsph/asymp.hpp"

using namespace tvsph;

namespace {
constexpr double kPi = 3.14159265358979323846;

SixTuple equilateral(int twice_j) {
    Color c(twice_j);
    return SixTuple(c, c, c, c, c, c);
}
}  // namespace

TEST_CASE("rescaled level and length map") {
    ScaledLevel s(7, 3);
    CHECK(s.rk() == 17);
    // j = 0 maps to pi / r(k)
    CHECK(length_map(Color(0), s) == doctest::Approx(kPi / 17.0));
    // strictly increasing in the color, staying inside (0, pi)
    double prev = 0.0;
    for (int tj = 0; tj <= 5; ++tj) {
        double l = length_map(Color(tj), s);
        CHECK(l > prev);
        CHECK(l < kPi);
        prev = l;
    }
    // explicit value: l = 2 pi (k j + 1/2)/r(k)
    CHECK(length_map(Color(2), s) == doctest::Approx(2.0 * kPi * 3.5 / 17.0));
    CHECK_THROWS_AS(ScaledLevel(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(ScaledLevel(7, 0), std::invalid_argument);
}

TEST_CASE("lengths_of follows the slot map") {
    ScaledLevel s(7, 2);
    SixTuple t(Color(2), Color(1), Color(1), Color(2), Color(1), Color(2));
    EdgeLengths6 l = lengths_of(t, s);
    // slots (j12,j23,j13,j34,j14,j24) live on vertices {1,2,3,4} -> local
    // {0,1,2,3}; j12 is the (0,1) edge, j34 the (2,3) edge
    CHECK(l[static_cast<size_t>(edge_slot(0, 1))] ==
          doctest::Approx(length_map(Color(2), s)));
    CHECK(l[static_cast<size_t>(edge_slot(1, 2))] ==
          doctest::Approx(length_map(Color(1), s)));
    CHECK(l[static_cast<size_t>(edge_slot(0, 2))] ==
          doctest::Approx(length_map(Color(1), s)));
    CHECK(l[static_cast<size_t>(edge_slot(2, 3))] ==
          doctest::Approx(length_map(Color(2), s)));
    CHECK(l[static_cast<size_t>(edge_slot(0, 3))] ==
          doctest::Approx(length_map(Color(1), s)));
    CHECK(l[static_cast<size_t>(edge_slot(1, 3))] ==
          doctest::Approx(length_map(Color(2), s)));
}

TEST_CASE("estimate components") {
    // equilateral j=1 at base r=7 exists: l ~ 2 pi * 1.5/7 < pi and the
    // equilateral Gram determinant is positive there
    ScaledLevel s(7, 1);
    AsymptoticEstimate est = asymptotic_sixj(equilateral(2), s);
    CHECK(est.gram > 0.0);
    CHECK(est.envelope ==
          doctest::Approx(2.0 * kPi /
                          (std::pow(7.0, 1.5) * std::pow(est.gram, 0.25))));
    CHECK(std::abs(est.value) <= est.envelope * (1.0 + 1e-12));
}

TEST_CASE("degenerate limit tetrahedron is reported") {
    // equilateral j=1 at base r=5: the lengths approach 2 pi/3 = 2.094 as k
    // grows, past the equilateral existence bound acos(-1/3) = 1.911
    CHECK_THROWS_AS(asymptotic_sixj(equilateral(2), ScaledLevel(5, 10)),
                    GeometryError);
}

TEST_CASE("series ratio shrinks with the level") {
    SeriesSummary sum = compare_series(equilateral(2), 7, 10, 80, 35);
    REQUIRE(sum.rows.size() == 71);
    int valid = 0;
    for (const auto& row : sum.rows) {
        if (row.error) continue;
        ++valid;
        CHECK(row.rk == row.k * 5 + 2);
        CHECK(std::abs(row.exact) <= 1.5 * row.envelope);
    }
    CHECK(valid == 71);
    REQUIRE(sum.window_ratios.size() >= 2);
    // successive windows improve and the tail is already small
    CHECK(sum.window_ratios.back() < sum.window_ratios.front());
    CHECK(sum.window_ratios.back() < 0.05);
    CHECK(sum.summary_ratio < 0.1);
}

TEST_CASE("error rows for configurations without a limit shape") {
    SeriesSummary sum = compare_series(equilateral(2), 5, 2, 6, 3);
    for (const auto& row : sum.rows) CHECK(row.error.has_value());
    CHECK(sum.window_ratios.empty());
}
