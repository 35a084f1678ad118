// levbound: bounds, thresholds, figure sweeps, backtests and verification
// for daily leveraged indexes, on top of the C interface.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "levbound/levbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

void check(lb_status status) {
  if (status < 0) {
    throw Failure{kExitUsage, std::string(lb_status_name(status)) + ": " +
                                  lb_last_error_message()};
  }
}

// Accepts a plain decimal or log(x), e.g. log(0.8).
double parse_log_value(const std::string& text) {
  std::size_t used = 0;
  try {
    if (text.rfind("log(", 0) == 0 && text.size() > 5 && text.back() == ')') {
      const std::string inner = text.substr(4, text.size() - 5);
      const double x = std::stod(inner, &used);
      if (used == inner.size() && x > 0.0) return std::log(x);
    } else {
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw Failure{kExitUsage, "not a number or log(x): '" + text + "'"};
}

template <class T, class Free>
struct Owned {
  T* ptr = nullptr;
  Free free_fn;
  explicit Owned(Free f) : free_fn(f) {}
  ~Owned() { free_fn(ptr); }
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
};

template <class T, class Free>
Owned<T, Free> owned(Free f) {
  return Owned<T, Free>(f);
}

std::string take(lb_buffer* buffer) {
  std::string text(lb_buffer_data(buffer), lb_buffer_size(buffer));
  lb_buffer_free(buffer);
  return text;
}

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw Failure{kExitUsage, "cannot write '" + g.out + "'"};
  file << text;
}

struct WindowArgs {
  std::string y0 = "log(0.8)";
  std::string y1 = "log(1.2)";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--y0", y0, "lower bound on daily log-returns, number or log(x)")
        ->capture_default_str();
    cmd->add_option("--y1", y1, "upper bound on daily log-returns, number or log(x)")
        ->capture_default_str();
  }
  lb_window window() const { return {parse_log_value(y0), parse_log_value(y1)}; }
};

struct BoundsArgs {
  double leverage = 2.0;
  double expense = 0.0;
  std::string input;
  std::string schedule = "daily";
  WindowArgs window;
};

void run_bounds(const Globals& g, const BoundsArgs& a) {
  const lb_window w = a.window.window();
  auto prices = owned<lb_prices>(lb_prices_free);
  check(lb_prices_load_csv(a.input.c_str(), &prices.ptr));
  lb_schedule schedule;
  check(lb_parse_schedule(a.schedule.c_str(), &schedule));
  auto sampled = owned<lb_prices>(lb_prices_free);
  check(lb_prices_subsample(prices.ptr, schedule, &sampled.ptr));
  auto returns = owned<lb_returns>(lb_returns_free);
  check(lb_returns_from_prices(sampled.ptr, &returns.ptr));
  lb_stats stats;
  check(lb_summarize(returns.ptr, &stats));

  lb_regime regime;
  check(lb_classify_regime(a.leverage, w, &regime));
  lb_bound_result bounds;
  check(lb_bound_interval(a.leverage, w, &stats, stats.n, &bounds));

  bool in_window = true;
  const double* y = lb_returns_data(returns.ptr);
  for (std::size_t i = 0; i < stats.n; ++i) in_window = in_window && w.y0 <= y[i] && y[i] <= w.y1;
  std::optional<double> exact;
  if (in_window) {
    double value = 0.0;
    check(lb_exact_logreturn(a.leverage, returns.ptr, &value));
    exact = value;
  }
  auto net = [&](double gross) {
    double v = 0.0;
    check(lb_net_logreturn(gross, stats.n, a.expense, &v));
    return v;
  };

  std::string text;
  text += "regime: " + std::string(lb_regime_name(regime)) + "\n";
  text += "n: " + std::to_string(stats.n) + "\n";
  text += "m1: " + num(stats.m1) + "\nm2: " + num(stats.m2) + "\ns: " + num(stats.s) + "\n";
  text += "in_window: " + std::string(in_window ? "yes" : "no") + "\n";
  text += "exact: " + (exact ? num(*exact) : std::string("NA (returns leave the window)")) + "\n";
  text += "lower: " + num(bounds.lower) + (bounds.lower_is_linear ? " (linear)" : "") + "\n";
  text += "upper: " + num(bounds.upper) + (bounds.upper_is_linear ? " (linear)" : "") + "\n";
  text += "net_exact: " + (exact ? num(net(*exact)) : std::string("NA")) + "\n";
  text += "net_lower: " + num(net(bounds.lower)) + "\n";
  text += "net_upper: " + num(net(bounds.upper)) + "\n\n";
  text += "regime,L,r,n,m1,m2,s,in_window,exact,lower,upper,net_exact,net_lower,net_upper,"
          "y_star_lower,y_star_upper\n";
  text += std::string(lb_regime_name(regime)) + ',' + num(a.leverage) + ',' + num(a.expense) +
          ',' + std::to_string(stats.n) + ',' + num(stats.m1) + ',' + num(stats.m2) + ',' +
          num(stats.s) + ',' + (in_window ? "1" : "0") + ',' + (exact ? num(*exact) : "NA") +
          ',' + num(bounds.lower) + ',' + num(bounds.upper) + ',' +
          (exact ? num(net(*exact)) : "NA") + ',' + num(net(bounds.lower)) + ',' +
          num(net(bounds.upper)) + ',' + num(bounds.y_star_lower) + ',' +
          num(bounds.y_star_upper) + '\n';
  emit(g, text);
}

struct ThresholdArgs {
  std::string mode = "s";
  std::string which = "i";
  std::string side = "lower";
  double leverage = 2.0;
  double target = 1.0;
  double expense = 0.0;
  std::optional<double> m1;
  std::optional<double> annual_m1;
  int periods = 252;
  WindowArgs window;
};

void run_threshold(const Globals& g, const ThresholdArgs& a) {
  const lb_window w = a.window.window();
  if (a.mode == "ratio") {
    const bool upper = a.side == "upper";
    if (!upper && a.side != "lower") throw Failure{kExitUsage, "--side must be lower or upper"};
    double value = 0.0;
    check(lb_ratio_threshold(a.leverage, a.target, upper ? w.y1 : w.y0, upper, &value));
    emit(g, "mode,side,L,L0,y,value\nratio," + a.side + ',' + num(a.leverage) + ',' +
                num(a.target) + ',' + num(upper ? w.y1 : w.y0) + ',' + num(value) + '\n');
    return;
  }
  if (a.mode != "s") throw Failure{kExitUsage, "--mode must be ratio or s"};
  if (a.m1.has_value() == a.annual_m1.has_value()) {
    throw Failure{kExitUsage, "give exactly one of --m1 and --annual-m1"};
  }
  lb_threshold_case which;
  check(lb_parse_threshold_case(a.which.c_str(), &which));
  lb_threshold_query q;
  q.leverage = a.leverage;
  q.target = a.target;
  q.expense_ratio = a.expense;
  q.window = w;
  q.periods_per_year = a.periods;
  q.m1 = a.m1 ? *a.m1 : *a.annual_m1 / a.periods;
  lb_s_threshold_result t;
  check(lb_s_threshold(which, &q, &t));
  emit(g, "mode,case,L,L0,r,y0,y1,periods_per_year,m1,s_max,y_star\ns," + a.which + ',' +
              num(q.leverage) + ',' + num(q.target) + ',' + num(q.expense_ratio) + ',' +
              num(w.y0) + ',' + num(w.y1) + ',' + std::to_string(q.periods_per_year) + ',' +
              num(q.m1) + ',' + (t.present ? num(t.s_max) : "ABSENT") + ',' + num(t.y_star) +
              '\n');
}

struct SweepArgs {
  std::optional<int> figure;
  std::string which;
  std::vector<double> axis{0.0, 0.25};
  std::size_t points = 0;
  std::vector<double> leverages;
  std::vector<double> targets{1.0};
  std::vector<double> expenses{0.0};
  std::vector<std::string> schedules{"daily"};
  WindowArgs window;
};

void run_sweep(const Globals& g, const SweepArgs& a) {
  auto sweep = owned<lb_sweep>(lb_sweep_free);
  if (a.figure) {
    if (!a.which.empty()) throw Failure{kExitUsage, "--figure and --case are exclusive"};
    check(lb_sweep_figure(*a.figure, a.points, &sweep.ptr));
  } else {
    if (a.which.empty()) throw Failure{kExitUsage, "give --figure N or a custom --case grid"};
    if (a.axis.size() != 2) throw Failure{kExitUsage, "--axis takes lo,hi"};
    std::vector<lb_schedule> schedules;
    for (const std::string& name : a.schedules) {
      lb_schedule s;
      check(lb_parse_schedule(name.c_str(), &s));
      schedules.push_back(s);
    }
    lb_sweep_spec spec;
    check(lb_parse_threshold_case(a.which.c_str(), &spec.which));
    spec.axis_lo = a.axis[0];
    spec.axis_hi = a.axis[1];
    spec.points = a.points == 0 ? 61 : a.points;
    spec.leverages = a.leverages.data();
    spec.leverage_count = a.leverages.size();
    spec.targets = a.targets.data();
    spec.target_count = a.targets.size();
    spec.expenses = a.expenses.data();
    spec.expense_count = a.expenses.size();
    spec.window = a.window.window();
    spec.schedules = schedules.data();
    spec.schedule_count = schedules.size();
    check(lb_sweep_custom(&spec, &sweep.ptr));
  }
  const std::filesystem::path dir = g.out.empty() ? "." : g.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{kExitUsage, "cannot create '" + dir.string() + "': " + ec.message()};
  for (std::size_t i = 0; i < lb_sweep_panel_count(sweep.ptr); ++i) {
    lb_buffer* csv = nullptr;
    check(lb_sweep_panel_csv(sweep.ptr, i, &csv));
    const std::filesystem::path file = dir / (std::string(lb_sweep_panel_name(sweep.ptr, i)) + ".csv");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Failure{kExitUsage, "cannot write '" + file.string() + "'"};
    out << take(csv);
    std::cout << file.string() << '\n';
  }
}

struct BacktestArgs {
  std::string input;
  double leverage = 2.0;
  double expense = 0.0;
  std::size_t window_days = 252;
  std::vector<double> targets{1.0};
  WindowArgs window;
};

void run_backtest(const Globals& g, const BacktestArgs& a) {
  auto prices = owned<lb_prices>(lb_prices_free);
  check(lb_prices_load_csv(a.input.c_str(), &prices.ptr));
  lb_backtest_options o;
  o.leverage = a.leverage;
  o.expense_ratio = a.expense;
  o.window_days = a.window_days;
  o.targets = a.targets.data();
  o.target_count = a.targets.size();
  o.window = a.window.window();
  lb_buffer* csv = nullptr;
  check(lb_backtest_csv(prices.ptr, &o, &csv));
  emit(g, take(csv));
}

int run_verify(const Globals& g, std::size_t trials) {
  auto report = owned<lb_verify_report>(lb_verify_free);
  check(lb_verify_default(g.seed, trials, &report.ptr));
  lb_buffer* csv = nullptr;
  check(lb_verify_csv(report.ptr, &csv));
  emit(g, take(csv));
  const std::size_t violations = lb_verify_violations(report.ptr);
  std::cerr << "rows: " << lb_verify_rows(report.ptr) << ", violations: " << violations
            << ", threshold queries: " << lb_verify_threshold_queries(report.ptr)
            << ", probes above threshold: " << lb_verify_probes_above_threshold(report.ptr)
            << " (" << lb_verify_failures_above_threshold(report.ptr) << " failed goal)\n";
  return violations == 0 ? kExitOk : kExitVerifyFailed;
}

struct IngestArgs {
  std::string input;
  std::string shiller;
  std::string schedule = "daily";
};

void run_ingest(const Globals& g, const IngestArgs& a) {
  if (a.input.empty() == a.shiller.empty()) {
    throw Failure{kExitUsage, "give exactly one of --input and --shiller"};
  }
  if (!a.shiller.empty()) {
    auto returns = owned<lb_returns>(lb_returns_free);
    int first_year = 0;
    check(lb_shiller_real_returns(a.shiller.c_str(), &returns.ptr, &first_year));
    lb_stats stats;
    check(lb_summarize(returns.ptr, &stats));
    std::string text = "year,real_logret\n";
    const double* y = lb_returns_data(returns.ptr);
    for (std::size_t i = 0; i < stats.n; ++i) {
      text += std::to_string(first_year + static_cast<int>(i)) + ',' + num(y[i]) + '\n';
    }
    emit(g, text);
    std::cerr << "years: " << stats.n << ", mean real log-return: " << num(stats.m1)
              << ", s: " << num(stats.s) << '\n';
    return;
  }
  auto prices = owned<lb_prices>(lb_prices_free);
  check(lb_prices_load_csv(a.input.c_str(), &prices.ptr));
  lb_schedule schedule;
  check(lb_parse_schedule(a.schedule.c_str(), &schedule));
  auto sampled = owned<lb_prices>(lb_prices_free);
  check(lb_prices_subsample(prices.ptr, schedule, &sampled.ptr));
  lb_buffer* csv = nullptr;
  check(lb_prices_to_csv(sampled.ptr, &csv));
  emit(g, take(csv));
  if (lb_prices_size(sampled.ptr) >= 2) {
    auto returns = owned<lb_returns>(lb_returns_free);
    check(lb_returns_from_prices(sampled.ptr, &returns.ptr));
    lb_stats stats;
    check(lb_summarize(returns.ptr, &stats));
    std::cerr << "closes: " << lb_prices_size(sampled.ptr) << ", m1: " << num(stats.m1)
              << ", m2: " << num(stats.m2) << ", s: " << num(stats.s) << ", "
              << lb_schedule_periods_per_year(schedule) << " * m1: "
              << num(stats.m1 * lb_schedule_periods_per_year(schedule)) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds and thresholds for daily leveraged index log-returns"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "output file (directory for sweep); stdout when omitted");
  app.add_option("--seed", g.seed, "seed for verify")->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "optimized bounds for a price file");
  bounds_cmd->add_option("--input", bounds.input, "price CSV (date,adjusted_close)")->required();
  bounds_cmd->add_option("--leverage,-L", bounds.leverage, "leverage multiple L")->required();
  bounds_cmd->add_option("--expense,-r", bounds.expense, "annual expense ratio")
      ->capture_default_str();
  bounds_cmd->add_option("--schedule", bounds.schedule, "rebalancing schedule")
      ->capture_default_str();
  bounds.window.add_to(bounds_cmd);

  ThresholdArgs threshold;
  auto* threshold_cmd = app.add_subcommand("threshold", "ratio or volatility thresholds");
  threshold_cmd->add_option("--mode", threshold.mode, "ratio or s")->capture_default_str();
  threshold_cmd->add_option("--case", threshold.which, "i, ii, under_a or under_b")
      ->capture_default_str();
  threshold_cmd->add_option("--side", threshold.side, "ratio mode: lower (y0) or upper (y1)")
      ->capture_default_str();
  threshold_cmd->add_option("--leverage,-L", threshold.leverage, "leverage multiple L")
      ->required();
  threshold_cmd->add_option("--target", threshold.target, "comparison multiple L0")
      ->capture_default_str();
  threshold_cmd->add_option("--expense,-r", threshold.expense, "annual expense ratio")
      ->capture_default_str();
  threshold_cmd->add_option("--m1", threshold.m1, "mean log-return per period");
  threshold_cmd->add_option("--annual-m1", threshold.annual_m1, "periods_per_year * m1");
  threshold_cmd->add_option("--periods", threshold.periods, "periods per year")
      ->capture_default_str();
  threshold.window.add_to(threshold_cmd);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "figure data as CSV panels");
  sweep_cmd->add_option("--figure", sweep.figure, "figure id 1..8");
  sweep_cmd->add_option("--case", sweep.which, "custom grid: i, ii, under_a or under_b");
  sweep_cmd->add_option("--axis", sweep.axis, "custom grid: lo,hi of periods * m1")
      ->delimiter(',')
      ->expected(2);
  sweep_cmd->add_option("--points", sweep.points, "points per curve");
  sweep_cmd->add_option("--leverage,-L", sweep.leverages, "custom grid: L list")
      ->delimiter(',');
  sweep_cmd->add_option("--target", sweep.targets, "custom grid: L0 list")->delimiter(',');
  sweep_cmd->add_option("--expense,-r", sweep.expenses, "custom grid: r list")->delimiter(',');
  sweep_cmd->add_option("--schedule", sweep.schedules, "custom grid: schedule list")
      ->delimiter(',');
  sweep.window.add_to(sweep_cmd);

  BacktestArgs backtest;
  auto* backtest_cmd = app.add_subcommand("backtest", "rolling-window replay");
  backtest_cmd->add_option("--input", backtest.input, "price CSV")->required();
  backtest_cmd->add_option("--leverage,-L", backtest.leverage, "leverage multiple L")
      ->required();
  backtest_cmd->add_option("--expense,-r", backtest.expense, "annual expense ratio")
      ->capture_default_str();
  backtest_cmd->add_option("--window-days", backtest.window_days, "days per window")
      ->capture_default_str();
  backtest_cmd->add_option("--target", backtest.targets, "L0 list")->delimiter(',');
  backtest.window.add_to(backtest_cmd);

  std::size_t trials = 10000;
  auto* verify_cmd = app.add_subcommand("verify", "randomized verification suite");
  verify_cmd->add_option("--trials", trials, "sandwich trials per regime")
      ->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "validate, subsample and summarize data");
  ingest_cmd->add_option("--input", ingest.input, "price CSV");
  ingest_cmd->add_option("--shiller", ingest.shiller, "year,P,D,J CSV");
  ingest_cmd->add_option("--schedule", ingest.schedule, "rebalancing schedule")
      ->capture_default_str();

  for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds_cmd) run_bounds(g, bounds);
    if (*threshold_cmd) run_threshold(g, threshold);
    if (*sweep_cmd) run_sweep(g, sweep);
    if (*backtest_cmd) run_backtest(g, backtest);
    if (*verify_cmd) return run_verify(g, trials);
    if (*ingest_cmd) run_ingest(g, ingest);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.exit_code;
  }
  return kExitOk;
}
