#pragma once

// Brute-force checks of the bounds and thresholds against exact leveraged
// returns of generated series.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levbound/core_model.hpp"

namespace levbound {

/// Slack allowed for 64-bit rounding in every asserted inequality.
inline constexpr double kViolationSlack = 1e-9;

struct TrialConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 10000;
  std::size_t n_min = 1;
  std::size_t n_max = 100;
  BoundWindow window;
  std::vector<double> leverage_set;
  std::vector<double> target_set;
  std::vector<double> expense_set;
  /// Annualized mean log-returns for threshold queries.
  std::vector<double> annual_m1_set;
  std::vector<int> periods_per_year_set{252};
  /// Sandwich configs: thread count, 0 = hardware concurrency.
  unsigned threads = 0;
};

/// n draws uniform on [y0, y1], a pure function of the seed.
LogReturnSeries random_series(const BoundWindow& window, std::size_t n,
                              std::uint64_t seed);

enum class TwoPointAnchor { Low, High };

/// Values in {u, v} within the window with mean exactly m1 and population
/// standard deviation exactly s (up to rounding). The anchor picks the
/// count that puts u closest to y0 (Low) or v closest to y1 (High).
/// nullopt when the moments cannot be met with n values in the window.
std::optional<LogReturnSeries> two_point_series(const BoundWindow& window, double m1,
                                                double s, std::size_t n,
                                                TwoPointAnchor anchor = TwoPointAnchor::Low);

struct TrialRecord {
  std::size_t trial = 0;
  std::string regime;
  double leverage = 0.0;
  std::optional<double> target;
  std::size_t n = 0;
  double m1 = 0.0;
  double s = 0.0;
  std::optional<double> lower;
  std::optional<double> exact;
  std::optional<double> upper;
  bool violation = false;
};

class VerifyReport {
 public:
  void add(TrialRecord record);
  void append(const VerifyReport& other);

  const std::vector<TrialRecord>& rows() const noexcept { return rows_; }
  std::size_t violations() const noexcept;
  /// `trial,regime,L,L0,n,m1,s,lower,exact,upper,violation`, 10 significant
  /// digits, empty fields where a value does not apply.
  std::string to_csv() const;

  /// Threshold checks run just above s_max. Their failures are expected to
  /// happen sometimes and are never counted as violations.
  std::size_t probes_above_threshold = 0;
  std::size_t failures_above_threshold = 0;
  /// Threshold queries with s_max present whose series were checked.
  std::size_t queries_checked = 0;

 private:
  std::vector<TrialRecord> rows_;
};

/// lower - slack <= exact <= upper + slack, together with the linear bound in
/// its direction, for random series in the window.
VerifyReport check_sandwich(const TrialConfig& config);

/// Only the linear bound L n m1, without quadratic envelopes.
VerifyReport check_linear_bound(const TrialConfig& config);

/// For every (L, L0, r, m1, periods) query in the config with a threshold
/// present, constructed two-point series and random series with s <= s_max
/// must satisfy the goal inequality of the matching case.
VerifyReport check_threshold_implications(const TrialConfig& config);

/// One sandwich config per regime (ABOVE_ONE, FRACTION_LOW, FRACTION_HIGH,
/// NEGATIVE, UNIT).
std::vector<TrialConfig> default_sandwich_configs(std::uint64_t seed, std::size_t trials);
/// Threshold query grids covering cases (i), (ii), under_a and under_b.
std::vector<TrialConfig> default_implication_configs(std::uint64_t seed);

/// Sandwich configs followed by implication configs in one report.
VerifyReport run_default_suite(std::uint64_t seed, std::size_t trials);

}  // namespace levbound
