#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "levbound/market_data.hpp"
#include "levbound/oracle_verify.hpp"
#include "levbound/thresholds.hpp"

using namespace levbound;
using Catch::Matchers::WithinAbs;

namespace {
const BoundWindow kFigureWindow{std::log(0.8), std::log(1.2)};
}

TEST_CASE("random series is a pure function of the seed", "[oracle]") {
  const BoundWindow w{-0.01, 0.01};
  const LogReturnSeries a = random_series(w, 5, 7);
  const LogReturnSeries b = random_series(w, 5, 7);
  REQUIRE(a.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a[i] == b[i]);
    CHECK(w.contains(a[i]));
  }
  CHECK(random_series(w, 5, 8)[0] != a[0]);
}

TEST_CASE("random series mean obeys the CLT", "[oracle]") {
  const LogReturnSeries y = random_series(kFigureWindow, 10000, 3);
  const double width = kFigureWindow.y1 - kFigureWindow.y0;
  const double mid = 0.5 * (kFigureWindow.y0 + kFigureWindow.y1);
  CHECK(std::abs(summarize(y).m1 - mid) <= 3.0 * (width / std::sqrt(12.0)) / 100.0);
}

TEST_CASE("two-point series examples", "[oracle]") {
  const BoundWindow w{-0.1, 0.2};
  const auto constant = two_point_series(w, w.y0, 0.0, 6);
  REQUIRE(constant.has_value());
  for (double v : constant->values()) CHECK(v == w.y0);

  const double mid = 0.5 * (w.y0 + w.y1);
  const auto extremal = two_point_series(w, mid, 0.5 * (w.y1 - w.y0), 6);
  REQUIRE(extremal.has_value());
  std::size_t lows = 0;
  for (double v : extremal->values()) {
    CHECK((std::abs(v - w.y0) < 1e-15 || std::abs(v - w.y1) < 1e-15));
    if (std::abs(v - w.y0) < 1e-15) ++lows;
  }
  CHECK(lows == 3);

  CHECK_FALSE(two_point_series(w, mid, w.y1 - w.y0, 6).has_value());
}

TEST_CASE("two-point series hits the requested moments", "[oracle]") {
  for (auto anchor : {TwoPointAnchor::Low, TwoPointAnchor::High}) {
    for (double s : {0.001, 0.01, 0.03}) {
      const auto y = two_point_series(kFigureWindow, 0.0004, s, 63, anchor);
      REQUIRE(y.has_value());
      const SeriesStats st = summarize(*y);
      CHECK_THAT(st.m1, WithinAbs(0.0004, 1e-15));
      CHECK_THAT(st.s, WithinAbs(s, 1e-12));
      for (double v : y->values()) CHECK(kFigureWindow.contains(v));
    }
  }
}

TEST_CASE("sandwich on every regime", "[oracle]") {
  for (TrialConfig config : default_sandwich_configs(11, 300)) {
    config.threads = 1;
    const VerifyReport report = check_sandwich(config);
    CHECK(report.rows().size() > 0);
    CHECK(report.violations() == 0);
  }
}

TEST_CASE("constant series sit on the interpolation node", "[oracle]") {
  TrialConfig config = default_sandwich_configs(5, 100).front();
  config.trials = 64;
  const VerifyReport report = check_sandwich(config);
  for (const TrialRecord& row : report.rows()) {
    if (row.s == 0.0 && std::abs(row.m1 - config.window.y0) < 1e-15) {
      CHECK_THAT(*row.lower, WithinAbs(*row.exact, 1e-10));
    }
  }
}

TEST_CASE("unit leverage trials collapse", "[oracle]") {
  for (const TrialConfig& config : default_sandwich_configs(2, 200)) {
    if (config.leverage_set != std::vector<double>{1.0}) continue;
    for (const TrialRecord& row : check_sandwich(config).rows()) {
      CHECK(*row.lower == *row.upper);
      CHECK_THAT(*row.exact, WithinAbs(*row.lower, 1e-12));
    }
  }
}

TEST_CASE("linear bound direction holds", "[oracle]") {
  for (TrialConfig config : default_sandwich_configs(3, 300)) {
    CHECK(check_linear_bound(config).violations() == 0);
  }
}

TEST_CASE("implication checks for the headline cases", "[oracle]") {
  TrialConfig case_i;
  case_i.seed = 9;
  case_i.trials = 5;
  case_i.n_min = 20;
  case_i.n_max = 252;
  case_i.window = kFigureWindow;
  case_i.leverage_set = {2.0};
  case_i.target_set = {1.0};
  case_i.expense_set = {0.0, 0.0095};
  case_i.annual_m1_set = {0.03, 0.0658, 0.12};
  const VerifyReport ri = check_threshold_implications(case_i);
  CHECK(ri.rows().size() > 0);
  CHECK(ri.violations() == 0);

  TrialConfig case_ii = case_i;
  case_ii.window = {std::log(0.85), std::log(1.15)};
  case_ii.leverage_set = {-3.0};
  case_ii.target_set = {-1.5};
  case_ii.expense_set = {0.0};
  case_ii.annual_m1_set = {252.0 * std::log(0.9) / 63.0, -0.2};
  const VerifyReport rii = check_threshold_implications(case_ii);
  CHECK(rii.rows().size() > 0);
  CHECK(rii.violations() == 0);
}

TEST_CASE("report csv", "[oracle]") {
  TrialConfig config = default_sandwich_configs(4, 100).front();
  config.trials = 3;
  const std::string csv = check_sandwich(config).to_csv();
  CHECK(csv.rfind("trial,regime,L,L0,n,m1,s,lower,exact,upper,violation\n", 0) == 0);
  CHECK(csv.find("-0,") == std::string::npos);
  CHECK(csv == check_sandwich(config).to_csv());
}
