#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "levbound/errors.hpp"
#include "levbound/thresholds.hpp"

using namespace levbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const BoundWindow kFigureWindow{std::log(0.8), std::log(1.2)};

ThresholdQuery query(double L, double L0, double r, BoundWindow window, double m1,
                     int per_year = 252) {
  return ThresholdQuery{{L, L0, r}, window, m1, per_year};
}

double s_of(ThresholdCase which, const ThresholdQuery& q) {
  const SThreshold t = s_threshold(which, q);
  REQUIRE(t.s_max.has_value());
  return *t.s_max;
}
}  // namespace

TEST_CASE("ratio threshold examples", "[thresholds]") {
  CHECK_THAT(ratio_threshold_lower(2.0, 1.0, std::log(0.9)),
             WithinRel(1.1190614355380966799785769765928395, 1e-12));
  CHECK_THROWS_AS(ratio_threshold_lower(2.0, 2.0, std::log(0.9)), DomainError);
  CHECK_THAT(ratio_threshold_lower(3.0, 1.0, std::log(0.9)),
             WithinRel(1.8283933165968158534193950109311992, 1e-12));

  const double up21 = ratio_threshold_upper(2.0, 1.0, std::log(1.1));
  CHECK(up21 > 0.0);
  CHECK_THAT(up21, WithinRel(0.91355956252014191778217822869040503, 1e-12));
  CHECK_THAT(ratio_threshold_upper(2.0, 0.0, std::log(1.1)), WithinRel(up21 / 2.0, 1e-14));
  const double up31 = ratio_threshold_upper(3.0, 1.0, std::log(1.1));
  CHECK(std::isfinite(up31));
  CHECK(up31 > 0.0);
}

TEST_CASE("ratio threshold preconditions", "[thresholds]") {
  CHECK_THROWS_AS(ratio_threshold_lower(0.5, 0.0, std::log(0.9)), DomainError);
  CHECK_THROWS_AS(ratio_threshold_lower(2.0, 1.0, std::log(0.4)), DomainError);
  CHECK_THROWS_AS(ratio_threshold_lower(2.0, 1.0, 0.01), DomainError);
  CHECK_THROWS_AS(ratio_threshold_upper(2.0, 1.0, -0.01), DomainError);
}

TEST_CASE("case i examples", "[thresholds]") {
  const double s2 = s_of(ThresholdCase::OutperformAboveOne,
                         ThresholdQuery::from_annual({2.0, 1.0, 0.0095}, kFigureWindow, 0.0658));
  CHECK(s2 >= 0.0115);
  CHECK(s2 <= 0.0135);
  CHECK_THAT(s2, WithinRel(0.0131356288105, 1e-9));

  const SThreshold same = s_threshold_case_i(query(2.0, 2.0, 0.0, kFigureWindow, 0.0));
  REQUIRE(same.s_max.has_value());
  // Radicand rounding near zero is about 1e-16, i.e. 1e-8 after the root.
  CHECK_THAT(*same.s_max, WithinAbs(0.0, 1e-7));

  const double s3 = s_of(ThresholdCase::OutperformAboveOne,
                         ThresholdQuery::from_annual({3.0, 1.0, 0.0095}, kFigureWindow, 0.0658));
  CHECK(s3 < s2);
}

TEST_CASE("case ii examples", "[thresholds]") {
  const BoundWindow w15{std::log(0.85), std::log(1.15)};
  CHECK(s_of(ThresholdCase::OutperformNegative,
             query(-3.0, -1.5, 0.0, w15, std::log(0.9) / 63.0)) >= 0.015);

  const BoundWindow w10{std::log(0.9), std::log(1.1)};
  const SThreshold same = s_threshold_case_ii(query(-2.0, -2.0, 0.0, w10, 0.0));
  REQUIRE(same.s_max.has_value());
  CHECK_THAT(*same.s_max, WithinAbs(0.0, 1e-7));

  const double s = s_of(ThresholdCase::OutperformNegative, query(-3.0, -1.0, 0.0095, w10, -0.002));
  CHECK(s > 0.0);
  CHECK(std::isfinite(s));
}

TEST_CASE("case ii uses y1 only", "[thresholds]") {
  const double a = s_of(ThresholdCase::OutperformNegative,
                        query(-3.0, -1.5, 0.0, {std::log(0.85), std::log(1.15)}, -0.002));
  const double b = s_of(ThresholdCase::OutperformNegative,
                        query(-3.0, -1.5, 0.0, {std::log(0.6), std::log(1.15)}, -0.002));
  CHECK(a == b);
}

TEST_CASE("under_a examples", "[thresholds]") {
  const BoundWindow w{std::log(0.9), std::log(1.1)};
  const double daily = 0.0658 / 252.0;
  const double s03 = s_of(ThresholdCase::UnderperformLow, query(0.3, 1.0, 0.0, w, daily));
  CHECK(s03 > 0.0);
  const double s001 = s_of(ThresholdCase::UnderperformLow, query(0.01, 1.0, 0.0, w, daily));
  CHECK(s001 > s03);

  // m1 = 0 leaves only -c/a, whose supremum is 0: any volatility lets the
  // fraction portfolio outgrow a flat index.
  const SThreshold flat = s_threshold_under_a(query(0.3, 1.0, 0.0, w, 0.0));
  REQUIRE(flat.s_max.has_value());
  CHECK(*flat.s_max >= 0.0);
  CHECK_THAT(*flat.s_max, WithinAbs(0.0, 1e-7));
}

TEST_CASE("under_b examples", "[thresholds]") {
  const double daily = s_of(ThresholdCase::UnderperformHigh,
                            ThresholdQuery::from_annual({0.9, 1.0, 0.0}, kFigureWindow, 0.0658));
  CHECK(daily >= 0.02 * 0.7);
  CHECK(daily <= 0.02 * 1.3);
  const double annual = s_of(ThresholdCase::UnderperformHigh,
                             ThresholdQuery::from_annual({0.9, 1.0, 0.0}, kFigureWindow, 0.0658, 1));
  CHECK(annual >= 0.35 * 0.7);
  CHECK(annual <= 0.35 * 1.3);
}

TEST_CASE("under_b falls as L grows across S2", "[thresholds]") {
  const FractionSets sets = fraction_sets(kFigureWindow);
  REQUIRE(!sets.s2.empty());
  double previous = 1e300;
  for (double L : sets.s2) {
    const double s = s_of(ThresholdCase::UnderperformHigh,
                          ThresholdQuery::from_annual({L, 1.0, 0.0}, kFigureWindow, 0.0658));
    CHECK(s < previous);
    previous = s;
  }
  const FractionMinimum min = min_threshold_over_fractions(kFigureWindow, 0.0658 / 252.0, 252);
  REQUIRE(min.green.has_value());
  CHECK_THAT(*min.green, WithinRel(previous, 1e-12));
  CHECK(min.green_leverage == sets.s2.back());
}

TEST_CASE("fraction sets", "[thresholds]") {
  const FractionSets tight = fraction_sets({std::log(0.9), std::log(1.1)});
  REQUIRE(!tight.s1.empty());
  CHECK_THAT(tight.s1.front(), WithinAbs(0.01, 1e-12));
  CHECK_THAT(tight.s1.back(), WithinAbs(0.47, 1e-12));
  CHECK(tight.s1.size() == 47);
  for (double L : tight.s1) CHECK(L < 1.0 / 2.1);

  const FractionSets wide = fraction_sets(kFigureWindow);
  for (int k = 65; k <= 99; ++k) {
    const double L = k / 100.0;
    CHECK(std::any_of(wide.s2.begin(), wide.s2.end(),
                      [L](double v) { return std::abs(v - L) < 1e-12; }));
  }
  for (double L : wide.s2) CHECK(std::log(1.0 / L - 1.0) < kFigureWindow.y0);
}

TEST_CASE("fraction minima", "[thresholds]") {
  const FractionMinimum at = min_threshold_over_fractions(kFigureWindow, 0.0658 / 252.0, 252);
  REQUIRE(at.green.has_value());
  CHECK(*at.green >= 0.02 * 0.7);
  CHECK(*at.green <= 0.02 * 1.3);
  REQUIRE(at.red.has_value());
  CHECK(*at.red > 0.0);

  const FractionMinimum flat = min_threshold_over_fractions(kFigureWindow, 0.0, 252);
  REQUIRE(flat.red.has_value());
  REQUIRE(flat.green.has_value());
  CHECK(*flat.red >= 0.0);
  CHECK(*flat.green >= 0.0);

  CHECK_THROWS_AS(min_threshold_over_fractions({-5.0, 0.02}, 0.0, 252), EmptySetError);
}

TEST_CASE("expense ratio lowers the case i threshold", "[thresholds]") {
  double previous = 1e300;
  for (double r : {0.0, 0.0025, 0.0095}) {
    const double s = s_of(ThresholdCase::OutperformAboveOne,
                          ThresholdQuery::from_annual({2.0, 1.0, r}, kFigureWindow, 0.0658));
    CHECK(s < previous);
    previous = s;
  }
}

TEST_CASE("larger targets are harder to certify", "[thresholds]") {
  double previous = 1e300;
  for (double L0 : {0.0, 0.5, 1.0, 1.5}) {
    const SThreshold t = s_threshold_case_i(
        ThresholdQuery::from_annual({2.0, L0, 0.0095}, kFigureWindow, 0.1));
    const double s = t.s_max.value_or(-1.0);
    CHECK(s <= previous);
    previous = s;
  }
}

TEST_CASE("absent thresholds", "[thresholds]") {
  // A strongly negative mean cannot certify outperformance of the index.
  const SThreshold t = s_threshold_case_i(
      ThresholdQuery::from_annual({2.0, 1.0, 0.0095}, kFigureWindow, -0.2));
  CHECK_FALSE(t.s_max.has_value());
  CHECK(t.radicand < 0.0);
}

TEST_CASE("threshold preconditions", "[thresholds]") {
  CHECK_THROWS_AS(s_threshold_case_i(query(0.5, 0.0, 0.0, kFigureWindow, 0.0)), DomainError);
  CHECK_THROWS_AS(s_threshold_case_i(query(2.0, 2.5, 0.0, kFigureWindow, 0.0)), DomainError);
  CHECK_THROWS_AS(s_threshold_case_ii(query(-2.0, -3.0, 0.0, kFigureWindow, 0.0)), DomainError);
  CHECK_THROWS_AS(s_threshold_under_a(query(0.5, 1.0, 0.0, {-0.3, 0.3}, 0.0)), DomainError);
  CHECK_THROWS_AS(s_threshold_under_b(query(0.3, 1.0, 0.0, kFigureWindow, 0.0)), DomainError);
  CHECK_THROWS_AS(s_threshold_case_i(query(2.0, 1.0, 0.0, kFigureWindow, 0.0, 7)), DomainError);
  CHECK(is_supported_periods_per_year(52));
  CHECK_FALSE(is_supported_periods_per_year(365));
}
