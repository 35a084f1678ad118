#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <string>

#include "levbound/levbound.h"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("status names and version", "[c_api]") {
  CHECK(std::string(lb_status_name(LB_OK)) == "LB_OK");
  CHECK(std::string(lb_status_name(LB_ERR_GAP_REGIME)) == "LB_ERR_GAP_REGIME");
  CHECK(std::string(lb_version()) == "1.0.0");
}

TEST_CASE("errors set the thread message", "[c_api]") {
  double out = 42.0;
  CHECK(lb_daily_leveraged_logreturn(-1.0, std::log(2.0), &out) == LB_ERR_DOMAIN);
  CHECK(out == 42.0);
  CHECK(std::strlen(lb_last_error_message()) > 0);
  CHECK(lb_daily_leveraged_logreturn(2.0, 0.01, &out) == LB_OK);
  CHECK_THAT(out, WithinRel(0.0199009892901822406, 1e-14));
}

TEST_CASE("null arguments are rejected", "[c_api]") {
  CHECK(lb_daily_leveraged_logreturn(2.0, 0.01, nullptr) == LB_ERR_INVALID_ARGUMENT);
  CHECK(lb_summarize(nullptr, nullptr) == LB_ERR_INVALID_ARGUMENT);
  CHECK(lb_prices_load_csv(nullptr, nullptr) == LB_ERR_INVALID_ARGUMENT);
  lb_prices_free(nullptr);
  lb_returns_free(nullptr);
  lb_buffer_free(nullptr);
  lb_sweep_free(nullptr);
  lb_verify_free(nullptr);
}

TEST_CASE("regimes and bounds", "[c_api]") {
  lb_regime regime;
  CHECK(lb_classify_regime(0.5, {-0.3, 0.3}, &regime) == LB_OK);
  CHECK(regime == LB_REGIME_GAP);
  CHECK(std::string(lb_regime_name(regime)) == "GAP");

  const lb_stats stats{5, 0.1, 0.01, 0.0};
  lb_bound_result r;
  CHECK(lb_bound_interval(0.5, {0.05, 0.2}, &stats, 5, &r) == LB_OK);
  CHECK(r.regime == LB_REGIME_FRACTION_HIGH);
  CHECK(r.lower <= 0.256247397568127927);
  CHECK(r.upper >= 0.256247397568127927);

  CHECK(lb_bound_interval(1.0, {-0.1, 0.1}, &stats, 5, &r) == LB_UNIT_LEVERAGE);
  CHECK(r.lower == r.upper);
  CHECK(lb_bound_interval(0.5, {-0.3, 0.3}, &stats, 5, &r) == LB_ERR_GAP_REGIME);
  CHECK_THAT(std::string(lb_last_error_message()), ContainsSubstring("GAP"));
}

TEST_CASE("thresholds through the C API", "[c_api]") {
  double ratio;
  CHECK(lb_ratio_threshold(2.0, 1.0, std::log(0.9), 0, &ratio) == LB_OK);
  CHECK_THAT(ratio, WithinRel(1.11906143553809668, 1e-12));

  lb_threshold_case which;
  CHECK(lb_parse_threshold_case("i", &which) == LB_OK);
  CHECK(lb_parse_threshold_case("iii", &which) == LB_ERR_INVALID_ARGUMENT);
  const lb_threshold_query q{2.0, 1.0, 0.0095, {std::log(0.8), std::log(1.2)}, 0.0658 / 252.0, 252};
  lb_s_threshold_result t;
  CHECK(lb_s_threshold(LB_CASE_I, &q, &t) == LB_OK);
  CHECK(t.present == 1);
  CHECK(t.s_max > 0.0115);
  CHECK(t.s_max < 0.0135);

  const lb_threshold_query neg{2.0, 1.0, 0.0095, {std::log(0.8), std::log(1.2)}, -0.2 / 252.0, 252};
  CHECK(lb_s_threshold(LB_CASE_I, &neg, &t) == LB_OK);
  CHECK(t.present == 0);
  CHECK(std::isnan(t.s_max));

  lb_fraction_minimum m;
  CHECK(lb_min_threshold_over_fractions({-5.0, 0.02}, 0.0, 252, &m) == LB_ERR_EMPTY_SET);
}

TEST_CASE("schedules", "[c_api]") {
  lb_schedule s;
  CHECK(lb_parse_schedule("quarterly", &s) == LB_OK);
  CHECK(lb_schedule_periods_per_year(s) == 4);
  CHECK(std::string(lb_schedule_name(LB_SCHEDULE_SEMIANNUAL)) == "semiannual");
  CHECK(lb_parse_schedule("hourly", &s) == LB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("prices, returns and backtest", "[c_api]") {
  lb_prices* prices = nullptr;
  REQUIRE(lb_prices_load_csv(LEVBOUND_TEST_DATA "/flat_prices.csv", &prices) == LB_OK);
  CHECK(lb_prices_size(prices) == 30);
  char date[11];
  double close;
  CHECK(lb_prices_at(prices, 0, date, &close) == LB_OK);
  CHECK(std::string(date) == "2021-01-04");
  CHECK(close == 100.0);
  CHECK(lb_prices_at(prices, 30, date, &close) == LB_ERR_INVALID_ARGUMENT);

  lb_returns* returns = nullptr;
  REQUIRE(lb_returns_from_prices(prices, &returns) == LB_OK);
  CHECK(lb_returns_size(returns) == 29);
  lb_stats stats;
  CHECK(lb_summarize(returns, &stats) == LB_OK);
  CHECK(stats.s == 0.0);
  double exact;
  CHECK(lb_exact_logreturn(2.0, returns, &exact) == LB_OK);
  CHECK(exact == 0.0);

  const double targets[] = {0.0};
  const lb_backtest_options options{2.0, 0.0, 20, targets, 1, {std::log(0.8), std::log(1.2)}};
  lb_buffer* csv = nullptr;
  CHECK(lb_backtest_csv(prices, &options, &csv) == LB_OK);
  CHECK(std::string(lb_buffer_data(csv), lb_buffer_size(csv)).rfind("start_date,", 0) == 0);
  lb_buffer_free(csv);

  const char bad[] = "date,adjusted_close\n2020-01-02,100\n2020-01-01,101\n";
  lb_prices* unordered = nullptr;
  CHECK(lb_prices_parse_csv(bad, sizeof bad - 1, &unordered) == LB_ERR_ORDER);
  CHECK(unordered == nullptr);

  lb_returns_free(returns);
  lb_prices_free(prices);
}

TEST_CASE("sweeps and verification", "[c_api]") {
  lb_sweep* sweep = nullptr;
  REQUIRE(lb_sweep_figure(3, 5, &sweep) == LB_OK);
  CHECK(lb_sweep_panel_count(sweep) == 1);
  CHECK(std::string(lb_sweep_panel_name(sweep, 0)) == "fig3");
  lb_buffer* csv = nullptr;
  CHECK(lb_sweep_panel_csv(sweep, 0, &csv) == LB_OK);
  CHECK(std::string(lb_buffer_data(csv)).rfind("x,value,series_label\n", 0) == 0);
  lb_buffer_free(csv);
  lb_sweep_free(sweep);
  CHECK(lb_sweep_figure(9, 0, &sweep) == LB_ERR_INVALID_ARGUMENT);

  lb_verify_report* report = nullptr;
  CHECK(lb_verify_default(1, 0, &report) == LB_ERR_INVALID_ARGUMENT);
  REQUIRE(lb_verify_default(1, 20, &report) == LB_OK);
  CHECK(lb_verify_rows(report) > 0);
  CHECK(lb_verify_violations(report) == 0);
  lb_verify_free(report);
}
