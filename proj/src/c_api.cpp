#include "levbound/levbound.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "levbound/backtest.hpp"
#include "levbound/bounds_engine.hpp"
#include "levbound/errors.hpp"
#include "levbound/market_data.hpp"
#include "levbound/oracle_verify.hpp"
#include "levbound/sweeps.hpp"
#include "levbound/thresholds.hpp"

struct lb_buffer {
  std::string text;
};

struct lb_prices {
  levbound::PriceSeries series;
};

struct lb_returns {
  levbound::LogReturnSeries series;
};

struct lb_sweep {
  std::vector<levbound::SweepPanel> panels;
};

struct lb_verify_report {
  levbound::VerifyReport report;
};

namespace {

using namespace levbound;

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

lb_status fail(lb_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, mapping library exceptions to status codes.
template <class Fn>
lb_status guarded(Fn&& body) noexcept {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(static_cast<lb_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LB_ERR_INTERNAL, "unknown error");
  }
}

void require_out(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgumentError(std::string(name) + " must not be NULL");
}

BoundWindow to_window(lb_window w) { return {w.y0, w.y1}; }

lb_regime to_c(Regime r) {
  switch (r) {
    case Regime::AboveOne: return LB_REGIME_ABOVE_ONE;
    case Regime::FractionLow: return LB_REGIME_FRACTION_LOW;
    case Regime::FractionHigh: return LB_REGIME_FRACTION_HIGH;
    case Regime::Negative: return LB_REGIME_NEGATIVE;
    case Regime::Unit: return LB_REGIME_UNIT;
    case Regime::Gap: return LB_REGIME_GAP;
  }
  return LB_REGIME_GAP;
}

ThresholdCase from_c(lb_threshold_case c) {
  switch (c) {
    case LB_CASE_I: return ThresholdCase::OutperformAboveOne;
    case LB_CASE_II: return ThresholdCase::OutperformNegative;
    case LB_CASE_UNDER_A: return ThresholdCase::UnderperformLow;
    case LB_CASE_UNDER_B: return ThresholdCase::UnderperformHigh;
  }
  throw InvalidArgumentError("unknown threshold case " + std::to_string(static_cast<int>(c)));
}

Schedule from_c(lb_schedule s) {
  const int index = static_cast<int>(s);
  if (index < 0 || index > 5) {
    throw InvalidArgumentError("unknown schedule " + std::to_string(index));
  }
  return kAllSchedules[index];
}

lb_schedule to_c(Schedule s) {
  for (int i = 0; i < 6; ++i) {
    if (kAllSchedules[i] == s) return static_cast<lb_schedule>(i);
  }
  return LB_SCHEDULE_DAILY;
}

template <class T>
std::vector<T> copy_list(const T* data, std::size_t count, const char* name) {
  if (count > 0) require_out(data, name);
  return std::vector<T>(data, data + count);
}

lb_buffer* make_buffer(std::string text) { return new lb_buffer{std::move(text)}; }

}  // namespace

extern "C" {

const char* lb_status_name(lb_status status) {
  switch (status) {
    case LB_OK: return "LB_OK";
    case LB_UNIT_LEVERAGE: return "LB_UNIT_LEVERAGE";
    case LB_ERR_DOMAIN: return "LB_ERR_DOMAIN";
    case LB_ERR_DEGENERATE: return "LB_ERR_DEGENERATE";
    case LB_ERR_GAP_REGIME: return "LB_ERR_GAP_REGIME";
    case LB_ERR_NON_FINITE: return "LB_ERR_NON_FINITE";
    case LB_ERR_PARSE: return "LB_ERR_PARSE";
    case LB_ERR_ORDER: return "LB_ERR_ORDER";
    case LB_ERR_VALUE: return "LB_ERR_VALUE";
    case LB_ERR_TOO_SHORT: return "LB_ERR_TOO_SHORT";
    case LB_ERR_YEAR_GAP: return "LB_ERR_YEAR_GAP";
    case LB_ERR_EMPTY_SET: return "LB_ERR_EMPTY_SET";
    case LB_ERR_INVALID_ARGUMENT: return "LB_ERR_INVALID_ARGUMENT";
    case LB_ERR_IO: return "LB_ERR_IO";
    case LB_ERR_INTERNAL: return "LB_ERR_INTERNAL";
  }
  return "LB_UNKNOWN_STATUS";
}

const char* lb_last_error_message(void) { return last_error.c_str(); }

const char* lb_version(void) { return "1.0.0"; }

const char* lb_regime_name(lb_regime regime) {
  switch (regime) {
    case LB_REGIME_ABOVE_ONE: return "ABOVE_ONE";
    case LB_REGIME_FRACTION_LOW: return "FRACTION_LOW";
    case LB_REGIME_FRACTION_HIGH: return "FRACTION_HIGH";
    case LB_REGIME_NEGATIVE: return "NEGATIVE";
    case LB_REGIME_UNIT: return "UNIT";
    case LB_REGIME_GAP: return "GAP";
  }
  return "UNKNOWN";
}

lb_status lb_parse_threshold_case(const char* name, lb_threshold_case* out) {
  return guarded([&] {
    require_out(name, "name");
    require_out(out, "out");
    for (lb_threshold_case c : {LB_CASE_I, LB_CASE_II, LB_CASE_UNDER_A, LB_CASE_UNDER_B}) {
      if (std::strcmp(name, lb_threshold_case_name(c)) == 0) {
        *out = c;
        return LB_OK;
      }
    }
    throw InvalidArgumentError(std::string("unknown case '") + name +
                               "' (i, ii, under_a, under_b)");
  });
}

const char* lb_threshold_case_name(lb_threshold_case which) {
  switch (which) {
    case LB_CASE_I: return "i";
    case LB_CASE_II: return "ii";
    case LB_CASE_UNDER_A: return "under_a";
    case LB_CASE_UNDER_B: return "under_b";
  }
  return "unknown";
}

lb_status lb_parse_schedule(const char* name, lb_schedule* out) {
  return guarded([&] {
    require_out(name, "name");
    require_out(out, "out");
    *out = to_c(parse_schedule(name));
    return LB_OK;
  });
}

const char* lb_schedule_name(lb_schedule schedule) {
  const int index = static_cast<int>(schedule);
  if (index < 0 || index > 5) return "unknown";
  return to_string(kAllSchedules[index]).data();
}

int lb_schedule_periods_per_year(lb_schedule schedule) {
  const int index = static_cast<int>(schedule);
  if (index < 0 || index > 5) return 0;
  return plan_for(kAllSchedules[index]).periods_per_year;
}

const char* lb_buffer_data(const lb_buffer* buffer) {
  return buffer ? buffer->text.c_str() : "";
}

size_t lb_buffer_size(const lb_buffer* buffer) { return buffer ? buffer->text.size() : 0; }

void lb_buffer_free(lb_buffer* buffer) { delete buffer; }

lb_status lb_prices_load_csv(const char* path, lb_prices** out) {
  return guarded([&] {
    require_out(path, "path");
    require_out(out, "out");
    *out = new lb_prices{load_price_csv(path)};
    return LB_OK;
  });
}

lb_status lb_prices_parse_csv(const char* text, size_t length, lb_prices** out) {
  return guarded([&] {
    if (length > 0) require_out(text, "text");
    require_out(out, "out");
    std::istringstream in(std::string(text ? text : "", length));
    *out = new lb_prices{parse_price_csv(in)};
    return LB_OK;
  });
}

size_t lb_prices_size(const lb_prices* prices) { return prices ? prices->series.size() : 0; }

lb_status lb_prices_at(const lb_prices* prices, size_t index, char date[11], double* close) {
  return guarded([&] {
    require_out(prices, "prices");
    if (index >= prices->series.size()) {
      throw InvalidArgumentError("index " + std::to_string(index) + " out of range");
    }
    if (date != nullptr) {
      const std::string text = format_iso_date(prices->series.dates()[index]);
      std::memcpy(date, text.c_str(), 11);
    }
    if (close != nullptr) *close = prices->series.closes()[index];
    return LB_OK;
  });
}

lb_status lb_prices_subsample(const lb_prices* prices, lb_schedule schedule, lb_prices** out) {
  return guarded([&] {
    require_out(prices, "prices");
    require_out(out, "out");
    *out = new lb_prices{subsample(prices->series, plan_for(from_c(schedule)))};
    return LB_OK;
  });
}

lb_status lb_prices_to_csv(const lb_prices* prices, lb_buffer** out) {
  return guarded([&] {
    require_out(prices, "prices");
    require_out(out, "out");
    std::ostringstream os;
    write_price_csv(os, prices->series);
    *out = make_buffer(os.str());
    return LB_OK;
  });
}

void lb_prices_free(lb_prices* prices) { delete prices; }

lb_status lb_returns_from_prices(const lb_prices* prices, lb_returns** out) {
  return guarded([&] {
    require_out(prices, "prices");
    require_out(out, "out");
    *out = new lb_returns{log_returns(prices->series)};
    return LB_OK;
  });
}

lb_status lb_returns_from_array(const double* values, size_t count, lb_returns** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new lb_returns{LogReturnSeries(copy_list(values, count, "values"))};
    return LB_OK;
  });
}

size_t lb_returns_size(const lb_returns* returns) { return returns ? returns->series.size() : 0; }

const double* lb_returns_data(const lb_returns* returns) {
  return returns ? returns->series.values().data() : nullptr;
}

void lb_returns_free(lb_returns* returns) { delete returns; }

lb_status lb_summarize(const lb_returns* returns, lb_stats* out) {
  return guarded([&] {
    require_out(returns, "returns");
    require_out(out, "out");
    const SeriesStats s = summarize(returns->series);
    *out = {s.n, s.m1, s.m2, s.s};
    return LB_OK;
  });
}

lb_status lb_shiller_real_returns(const char* path, lb_returns** out, int* first_year) {
  return guarded([&] {
    require_out(path, "path");
    require_out(out, "out");
    const std::vector<ShillerRecord> records = load_shiller_csv(path);
    LogReturnSeries series(shiller_real_log_returns(records));
    if (first_year != nullptr) *first_year = records.front().year;
    *out = new lb_returns{std::move(series)};
    return LB_OK;
  });
}

lb_status lb_daily_leveraged_logreturn(double leverage, double y, double* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = daily_leveraged_logreturn(leverage, y);
    return LB_OK;
  });
}

lb_status lb_quad_coefficients(double leverage, double anchor, double tangency, lb_quad* out) {
  return guarded([&] {
    require_out(out, "out");
    const QuadCoefficients q = quad_coefficients(leverage, anchor, tangency);
    *out = {q.a, q.b, q.c, q.anchor, q.tangency};
    return LB_OK;
  });
}

lb_status lb_exact_logreturn(double leverage, const lb_returns* returns, double* out) {
  return guarded([&] {
    require_out(returns, "returns");
    require_out(out, "out");
    *out = exact_leveraged_logreturn(leverage, returns->series);
    return LB_OK;
  });
}

lb_status lb_net_logreturn(double gross, size_t days, double expense_ratio, double* out) {
  return guarded([&] {
    require_out(out, "out");
    LeverageSpec{1.0, 1.0, expense_ratio}.validate();
    *out = net_logreturn(gross, days, expense_ratio);
    return LB_OK;
  });
}

lb_status lb_classify_regime(double leverage, lb_window window, lb_regime* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = to_c(classify_regime(leverage, to_window(window)));
    return LB_OK;
  });
}

lb_status lb_bound_interval(double leverage, lb_window window, const lb_stats* stats,
                            size_t days, lb_bound_result* out) {
  return guarded([&] {
    require_out(stats, "stats");
    require_out(out, "out");
    const SeriesStats s{stats->n, stats->m1, stats->m2, stats->s};
    const BoundResult r = bound_interval(leverage, to_window(window), s, days);
    *out = {r.lower, r.upper, r.y_star_lower, r.y_star_upper, to_c(r.regime),
            r.lower_is_linear ? 1 : 0, r.upper_is_linear ? 1 : 0};
    return r.regime == Regime::Unit ? LB_UNIT_LEVERAGE : LB_OK;
  });
}

lb_status lb_ratio_threshold(double leverage, double target, double y, int upper, double* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = upper ? ratio_threshold_upper(leverage, target, y)
                 : ratio_threshold_lower(leverage, target, y);
    return LB_OK;
  });
}

lb_status lb_s_threshold(lb_threshold_case which, const lb_threshold_query* query,
                         lb_s_threshold_result* out) {
  return guarded([&] {
    require_out(query, "query");
    require_out(out, "out");
    ThresholdQuery q;
    q.spec = {query->leverage, query->target, query->expense_ratio};
    q.window = to_window(query->window);
    q.m1 = query->m1;
    q.periods_per_year = query->periods_per_year;
    const SThreshold t = s_threshold(from_c(which), q);
    *out = {t.s_max ? 1 : 0, t.s_max.value_or(kNaN), t.y_star, t.radicand};
    return LB_OK;
  });
}

lb_status lb_min_threshold_over_fractions(lb_window window, double m1, int periods_per_year,
                                          lb_fraction_minimum* out) {
  return guarded([&] {
    require_out(out, "out");
    const FractionMinimum m =
        min_threshold_over_fractions(to_window(window), m1, periods_per_year);
    *out = {m.red ? 1 : 0,   m.red.value_or(kNaN),   m.red_leverage,
            m.green ? 1 : 0, m.green.value_or(kNaN), m.green_leverage};
    return LB_OK;
  });
}

lb_status lb_sweep_figure(int figure, size_t points, lb_sweep** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new lb_sweep{figure_sweep(figure, points == 0 ? kFigurePoints : points)};
    return LB_OK;
  });
}

lb_status lb_sweep_custom(const lb_sweep_spec* spec, lb_sweep** out) {
  return guarded([&] {
    require_out(spec, "spec");
    require_out(out, "out");
    SweepSpec s;
    s.which = from_c(spec->which);
    s.axis_lo = spec->axis_lo;
    s.axis_hi = spec->axis_hi;
    s.points = spec->points;
    s.leverages = copy_list(spec->leverages, spec->leverage_count, "leverages");
    s.targets = copy_list(spec->targets, spec->target_count, "targets");
    s.expenses = copy_list(spec->expenses, spec->expense_count, "expenses");
    s.window = to_window(spec->window);
    s.schedules.clear();
    for (lb_schedule c : copy_list(spec->schedules, spec->schedule_count, "schedules")) {
      s.schedules.push_back(from_c(c));
    }
    *out = new lb_sweep{{custom_sweep(s)}};
    return LB_OK;
  });
}

size_t lb_sweep_panel_count(const lb_sweep* sweep) { return sweep ? sweep->panels.size() : 0; }

const char* lb_sweep_panel_name(const lb_sweep* sweep, size_t index) {
  if (sweep == nullptr || index >= sweep->panels.size()) return nullptr;
  return sweep->panels[index].name.c_str();
}

lb_status lb_sweep_panel_csv(const lb_sweep* sweep, size_t index, lb_buffer** out) {
  return guarded([&] {
    require_out(sweep, "sweep");
    require_out(out, "out");
    if (index >= sweep->panels.size()) {
      throw InvalidArgumentError("panel index " + std::to_string(index) + " out of range");
    }
    *out = make_buffer(panel_csv(sweep->panels[index]));
    return LB_OK;
  });
}

void lb_sweep_free(lb_sweep* sweep) { delete sweep; }

lb_status lb_backtest_csv(const lb_prices* prices, const lb_backtest_options* options,
                          lb_buffer** out) {
  return guarded([&] {
    require_out(prices, "prices");
    require_out(options, "options");
    require_out(out, "out");
    BacktestOptions o;
    o.leverage = options->leverage;
    o.expense_ratio = options->expense_ratio;
    o.window_days = options->window_days;
    o.targets = copy_list(options->targets, options->target_count, "targets");
    o.window = to_window(options->window);
    *out = make_buffer(backtest_csv(run_backtest(prices->series, o), o));
    return LB_OK;
  });
}

lb_status lb_verify_default(uint64_t seed, size_t trials, lb_verify_report** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = new lb_verify_report{run_default_suite(seed, trials)};
    return LB_OK;
  });
}

size_t lb_verify_rows(const lb_verify_report* report) {
  return report ? report->report.rows().size() : 0;
}

size_t lb_verify_violations(const lb_verify_report* report) {
  return report ? report->report.violations() : 0;
}

size_t lb_verify_threshold_queries(const lb_verify_report* report) {
  return report ? report->report.queries_checked : 0;
}

size_t lb_verify_probes_above_threshold(const lb_verify_report* report) {
  return report ? report->report.probes_above_threshold : 0;
}

size_t lb_verify_failures_above_threshold(const lb_verify_report* report) {
  return report ? report->report.failures_above_threshold : 0;
}

lb_status lb_verify_csv(const lb_verify_report* report, lb_buffer** out) {
  return guarded([&] {
    require_out(report, "report");
    require_out(out, "out");
    *out = make_buffer(report->report.to_csv());
    return LB_OK;
  });
}

void lb_verify_free(lb_verify_report* report) { delete report; }

}  // extern "C"
