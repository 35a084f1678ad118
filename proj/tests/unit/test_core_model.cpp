#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "levbound/core_model.hpp"
#include "levbound/errors.hpp"

using namespace levbound;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("daily leveraged log-return examples", "[core]") {
  CHECK(daily_leveraged_logreturn(2.0, 0.0) == 0.0);
  CHECK(daily_leveraged_logreturn(1.0, 0.03) == 0.03);
  CHECK_THAT(daily_leveraged_logreturn(2.0, 0.01),
             WithinRel(0.019900989290182240603722873770310807, 1e-14));
  CHECK_THROWS_AS(daily_leveraged_logreturn(-1.0, std::log(2.0)), DomainError);
  CHECK_THROWS_AS(daily_leveraged_logreturn(3.0, std::log(2.0 / 3.0) - 1e-12), DomainError);
}

TEST_CASE("slope matches a central difference", "[core]") {
  for (double L : {-3.0, -0.5, 0.3, 2.0, 3.0}) {
    for (double y : {-0.1, 0.0, 0.05}) {
      const double h = 1e-6;
      const double numeric = (daily_leveraged_logreturn(L, y + h) -
                              daily_leveraged_logreturn(L, y - h)) / (2 * h);
      CHECK_THAT(daily_leveraged_slope(L, y), WithinRel(numeric, 1e-7));
    }
  }
}

TEST_CASE("admissible intervals", "[core]") {
  const OpenInterval two = admissible_y_interval(2.0);
  CHECK_THAT(two.lo, WithinRel(std::log(0.5), 1e-15));
  CHECK(two.hi == kInf);

  const OpenInterval neg = admissible_y_interval(-3.0);
  CHECK(neg.lo == -kInf);
  CHECK_THAT(neg.hi, WithinRel(std::log(4.0 / 3.0), 1e-15));

  const OpenInterval frac = admissible_y_interval(0.5);
  CHECK(frac.lo == -kInf);
  CHECK(frac.hi == kInf);
}

TEST_CASE("leverage classes", "[core]") {
  CHECK(classify_leverage(2.0) == LeverageClass::AboveOne);
  CHECK(classify_leverage(1.0) == LeverageClass::Unit);
  CHECK(classify_leverage(0.4) == LeverageClass::Fraction);
  CHECK(classify_leverage(-2.0) == LeverageClass::Negative);
  CHECK_THROWS_AS(classify_leverage(0.0), DomainError);
  CHECK_THROWS_AS(classify_leverage(std::nan("")), DomainError);
}

TEST_CASE("quad coefficient examples", "[core]") {
  const QuadCoefficients q2 = quad_coefficients(2.0, std::log(0.9), 0.0);
  CHECK_THAT(q2.a, WithinRel(-1.1190614355380966799785769765928395, 1e-12));
  CHECK(q2.b == 2.0);
  CHECK(q2.c == 0.0);

  const QuadCoefficients unit = quad_coefficients(1.0, -0.1, 0.1);
  CHECK(unit.a == 0.0);
  CHECK(unit.b == 1.0);
  CHECK(unit.c == 0.0);

  const QuadCoefficients q3 = quad_coefficients(3.0, std::log(0.9), 0.0);
  CHECK_THAT(q3.a, WithinRel(-3.6567866331936317068387900218623984, 1e-12));
  CHECK(q3.b == 3.0);
  CHECK(q3.c == 0.0);
}

TEST_CASE("origin coefficients", "[core]") {
  const QuadCoefficients q = quad_coefficients_origin(2.0, std::log(0.8));
  CHECK(q.b == 2.0);
  CHECK(q.c == 0.0);
  CHECK_THAT(quad_coefficients_origin(2.0, std::log(0.9)).a,
             WithinRel(-1.1190614355380966799785769765928395, 1e-12));
  const QuadCoefficients neg = quad_coefficients_origin(-2.0, std::log(1.1));
  CHECK(neg.b == -2.0);
  CHECK(neg.c == 0.0);
}

TEST_CASE("quad coefficient errors", "[core]") {
  CHECK_THROWS_AS(quad_coefficients(2.0, 0.1, 0.1 + 1e-10), DegenerateError);
  CHECK_THROWS_AS(quad_coefficients(2.0, std::log(0.4), 0.0), DomainError);
  CHECK_THROWS_AS(quad_coefficients(-2.0, 0.0, std::log(1.6)), DomainError);
  CHECK_NOTHROW(quad_coefficients(2.0, 0.1, 0.1 + 1e-8));
}

TEST_CASE("envelope summed over moments", "[core]") {
  const QuadCoefficients q = quad_coefficients(2.0, std::log(0.8), 0.03);
  const std::vector<double> y{0.01, -0.02, 0.015, 0.0};
  double direct = 0.0;
  for (double v : y) direct += q(v);
  double m1 = 0.0, m2 = 0.0;
  for (double v : y) {
    m1 += v / 4.0;
    m2 += v * v / 4.0;
  }
  const SeriesStats stats{4, m1, m2, std::sqrt(m2 - m1 * m1)};
  CHECK_THAT(q.summed(stats, 4), WithinAbs(direct, 1e-14));
  CHECK(q.summed_error(stats, 4) > 0.0);
  CHECK(q.summed_error(stats, 4) < 1e-12);
}

TEST_CASE("exact leveraged log-return examples", "[core]") {
  CHECK_THAT(exact_leveraged_logreturn(1.0, LogReturnSeries({0.01, -0.01})), WithinAbs(0.0, 1e-18));
  CHECK_THAT(exact_leveraged_logreturn(2.0, LogReturnSeries({0.01})),
             WithinRel(0.019900989290182240603722873770310807, 1e-14));
  CHECK_THROWS_AS(exact_leveraged_logreturn(3.0, LogReturnSeries({std::log(2.0 / 3.0)})),
                  DomainError);
  try {
    exact_leveraged_logreturn(3.0, LogReturnSeries({0.0, 0.01, std::log(0.5)}));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("2"));
  }
}

TEST_CASE("series rejects non-finite values", "[core]") {
  CHECK_THROWS_AS(LogReturnSeries({0.0, std::nan("")}), ValueError);
  CHECK_THROWS_AS(LogReturnSeries({kInf}), ValueError);
}

TEST_CASE("net log-return examples", "[core]") {
  CHECK(net_logreturn(0.1, 252, 0.0) == 0.1);
  CHECK_THAT(net_logreturn(0.0, 252, 0.0095),
             WithinRel(-0.0094998209370399279807761301078333, 1e-13));
  CHECK(net_logreturn(0.05, 0, 0.0095) == 0.05);
  CHECK_THAT(daily_expense_logcost(0.0095), WithinRel(std::log1p(0.0095 / 252.0), 1e-15));
}

TEST_CASE("linear bound examples", "[core]") {
  const LinearBound up = linear_bound(2.0, 10, 0.001);
  CHECK_THAT(up.value, WithinAbs(0.02, 1e-16));
  CHECK(up.direction == BoundDirection::Upper);
  const LinearBound low = linear_bound(0.5, 10, 0.001);
  CHECK_THAT(low.value, WithinAbs(0.005, 1e-16));
  CHECK(low.direction == BoundDirection::Lower);
  const LinearBound unit = linear_bound(1.0, 5, 0.002);
  CHECK_THAT(unit.value, WithinAbs(0.01, 1e-16));
  CHECK_THAT(exact_leveraged_logreturn(1.0, LogReturnSeries(std::vector<double>(5, 0.002))),
             WithinAbs(unit.value, 1e-16));
  CHECK(linear_bound(-2.0, 3, 0.01).direction == BoundDirection::Upper);
}

TEST_CASE("leverage spec validation", "[core]") {
  CHECK_THROWS_AS((LeverageSpec{0.0, 1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((LeverageSpec{2.0, 1.0, -0.01}.validate()), DomainError);
  CHECK_THROWS_AS((LeverageSpec{std::nan(""), 1.0, 0.0}.validate()), DomainError);
  CHECK_NOTHROW((LeverageSpec{-3.0, -1.5, 0.0095}.validate()));
}
