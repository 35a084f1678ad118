#pragma once

// Rolling-window replay of a leveraged index over historical closes.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levbound/core_model.hpp"
#include "levbound/market_data.hpp"

namespace levbound {

struct BacktestOptions {
  double leverage = 2.0;
  double expense_ratio = 0.0;
  std::size_t window_days = 252;
  /// Comparison multiples L0; one group of columns each.
  std::vector<double> targets{1.0};
  /// Assumed bounds on the daily log-returns inside a window.
  BoundWindow window{-0.2231435513142097, 0.1823215567939546};
};

struct TargetOutcome {
  double target = 0.0;
  /// L0 times the index log-return over the window.
  double target_logret = 0.0;
  /// Net leveraged log-return >= target_logret.
  bool beats = false;
  /// Whether the matching sufficient condition held; empty when no
  /// condition applies to (L, L0).
  std::optional<bool> condition;
};

struct BacktestRow {
  Date start;
  Date end;
  std::size_t n = 0;
  SeriesStats stats;
  double index_logret = 0.0;
  double exact_net = 0.0;
  /// Every daily log-return of the window lies in options.window.
  bool in_window = false;
  std::vector<TargetOutcome> outcomes;
};

/// One row per start day, step 1. For L > 1 the condition is the case (i)
/// certificate, for L < 0 case (ii), and for 0 < L < 1 with L0 = 1 the
/// underperformance certificate of the regime. Throws TooShortError unless
/// the series has more than window_days closes.
std::vector<BacktestRow> run_backtest(const PriceSeries& prices,
                                      const BacktestOptions& options);

/// `start_date,end_date,n,m1,m2,s,index_logret,exact_net,in_window` then
/// `target_<L0>,beats_<L0>,condition_<L0>` per target; NA where empty.
std::string backtest_csv(const std::vector<BacktestRow>& rows,
                         const BacktestOptions& options);

}  // namespace levbound
