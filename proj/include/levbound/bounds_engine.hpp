#pragma once

#include <functional>
#include <string_view>

#include "levbound/core_model.hpp"
#include "levbound/scalar_optimizer.hpp"

namespace levbound {

/// Which quadratic envelope family applies to (L, [y0, y1]).
enum class Regime {
  AboveOne,      ///< L > 1 and log(1 - 1/L) < y0
  FractionLow,   ///< 0 < L < 1 and y1 < log(1/L - 1)
  FractionHigh,  ///< 0 < L < 1 and log(1/L - 1) < y0
  Negative,      ///< L < 0 and y1 < log(1 - 1/L)
  Unit,          ///< L == 1, the leveraged index is the index
  Gap,           ///< 0 < L < 1 with log(1/L - 1) inside [y0, y1]
};

std::string_view to_string(Regime regime);

/// Throws DomainError when y0 >= y1, or when the window lets the leveraged
/// price reach zero (L > 1 with y0 <= log(1 - 1/L), L < 0 with
/// y1 >= log(1 - 1/L)). Gap is returned, not thrown.
Regime classify_regime(double leverage, const BoundWindow& window);

/// A set of admissible tangency points for one envelope: the open interval
/// (lo, hi), either end possibly infinite, with the interpolation anchor.
struct TangencyRange {
  double anchor = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Tangency range whose envelopes lie below f on the window.
TangencyRange lower_tangency_range(double leverage, const BoundWindow& window,
                                   Regime regime);
/// Tangency range whose envelopes lie above f on the window.
TangencyRange upper_tangency_range(double leverage, const BoundWindow& window,
                                   Regime regime);

enum class SearchGoal { Maximize, Minimize };

struct TangencySearchOptions {
  double tolerance = 1e-10;
  /// Initial length of the search interval on an unbounded side.
  double initial_span = 10.0;
  /// The unbounded side doubles while the optimum sits on its free edge.
  double max_span = 320.0;
  OptimizeOptions mesh;
};

/// Optimizes objective(y) over a tangency range. Open finite ends are pulled
/// in by 1e-8 (1 + |end|); y = 0 is always probed when inside the range.
OptimizeReport optimize_tangency(const TangencyRange& range,
                                 const std::function<double(double)>& objective,
                                 SearchGoal goal,
                                 const TangencySearchOptions& options = {});

struct BoundResult {
  double lower = 0.0;
  double upper = 0.0;
  double y_star_lower = 0.0;
  double y_star_upper = 0.0;
  Regime regime = Regime::Unit;
  /// Set when the linear bound L n m1 was tighter than the quadratic one.
  /// Quadratic bounds are widened by QuadCoefficients::summed_error.
  bool lower_is_linear = false;
  bool upper_is_linear = false;
};

/// Optimized quadratic bounds on the n-day leveraged log-return of any
/// series with Y_i in `window` and the given moments. For L == 1 both
/// bounds equal n m1 and regime is Unit. Throws GapRegimeError for Gap and
/// DomainError on inconsistent moments (m2 < m1^2, or s^2 != m2 - m1^2
/// beyond rounding).
BoundResult bound_interval(double leverage, const BoundWindow& window,
                           const SeriesStats& stats, std::size_t days,
                           const TangencySearchOptions& options = {});

}  // namespace levbound
