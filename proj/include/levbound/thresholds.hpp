#pragma once

// Sufficient conditions for out- and underperformance.
//
// Every volatility threshold here comes from holding one quadratic envelope
// against a linear target. For an envelope (a, b, c), target multiple T and
// per-period fee k, the condition T m1 <= a m2 + b m1 + c - k (a < 0) or
// a m2 + b m1 + c <= T m1 (a > 0) is equivalent to s^2 <= R(y) with
//
//     R(y) = -m1^2 + ((T - b) / a) m1 - (c - k) / a,
//
// so the best certificate is s_max = sqrt(sup_y R(y)).

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "levbound/bounds_engine.hpp"
#include "levbound/core_model.hpp"

namespace levbound {

/// Smallest m1/m2 that guarantees log(C^L_n/C_0) >= L0 log(C_n/C_0), for
/// L > 1, L0 < L and log(1 - 1/L) < y0 < 0.
double ratio_threshold_lower(double leverage, double target, double y0);

/// Largest m1/m2 that guarantees log(C^L_n/C_0) <= L0 log(C_n/C_0), for
/// L > 1, L0 < L and y1 > 0.
double ratio_threshold_upper(double leverage, double target, double y1);

/// True for the rebalancing frequencies {252, 52, 12, 4, 2, 1}.
bool is_supported_periods_per_year(int periods_per_year);

struct ThresholdQuery {
  LeverageSpec spec;
  BoundWindow window;
  /// Mean log-return per rebalancing period.
  double m1 = 0.0;
  int periods_per_year = 252;

  /// Builds a query from an annualized mean, m1 = annual_m1 / periods.
  static ThresholdQuery from_annual(const LeverageSpec& spec,
                                    const BoundWindow& window, double annual_m1,
                                    int periods_per_year = 252);
};

struct SThreshold {
  /// Empty when R(y) < 0 for every probed y: no volatility certifies the goal.
  std::optional<double> s_max;
  double y_star = 0.0;
  /// sup_y R(y); negative exactly when s_max is empty.
  double radicand = 0.0;
};

enum class ThresholdCase {
  OutperformAboveOne,   ///< case (i): L > 1, L0 <= L
  OutperformNegative,   ///< case (ii): L <= L0 < 0
  UnderperformLow,      ///< 0 < L < 1, y1 < log(1/L - 1)
  UnderperformHigh,     ///< 0 < L < 1, y0 > log(1/L - 1)
};

std::string_view to_string(ThresholdCase c);

/// s <= s_max implies L0 log(C_n/C_0) <= R^L_{n,r}. Uses y0 only.
SThreshold s_threshold_case_i(const ThresholdQuery& query);
/// s <= s_max implies L0 log(C_n/C_0) <= R^L_{n,r}. Uses y1 only.
SThreshold s_threshold_case_ii(const ThresholdQuery& query);
/// s <= s_max implies log(C^L_n/C_0) <= log(C_n/C_0); L0 and r are ignored.
SThreshold s_threshold_under_a(const ThresholdQuery& query);
SThreshold s_threshold_under_b(const ThresholdQuery& query);

SThreshold s_threshold(ThresholdCase which, const ThresholdQuery& query);

/// The fraction grid S = {0.01, ..., 0.99} split by the window:
/// S1 = {L : y1 < log(1/L - 1)}, S2 = {L : log(1/L - 1) < y0}.
struct FractionSets {
  std::vector<double> s1;
  std::vector<double> s2;
};

FractionSets fraction_sets(const BoundWindow& window);

struct FractionMinimum {
  /// min over S1 of s_threshold_under_a.
  std::optional<double> red;
  double red_leverage = 0.0;
  /// min over S2 of s_threshold_under_b.
  std::optional<double> green;
  double green_leverage = 0.0;
  /// Members whose threshold was absent, excluded from the minima.
  std::vector<double> skipped_s1;
  std::vector<double> skipped_s2;
};

/// Throws EmptySetError when S1 or S2 is empty for the window.
FractionMinimum min_threshold_over_fractions(const BoundWindow& window,
                                             double m1, int periods_per_year);

}  // namespace levbound
