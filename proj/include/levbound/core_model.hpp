#pragma once

// Exact return arithmetic for daily leveraged indexes.
//
// Throughout, y denotes a per-period log-return of the benchmark index and
//
//     f(y) = log(1 + L (exp(y) - 1))
//
// is the log-return of the L-times daily leveraged index over that period.
// The quadratic envelopes p(x) = a x^2 + b x + c interpolate f at an anchor
// y_k and touch f (value and slope) at a tangency point y. Summed over a
// series they give n (a m2 + b m1 + c), which is what the bounds engine
// optimizes over y.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace levbound {

/// Trading days per year used to spread an annual expense ratio.
inline constexpr double kTradingDaysPerYear = 252.0;

/// Leverage multiple L, comparison multiple L0 and annual expense ratio r.
struct LeverageSpec {
  double leverage = 1.0;
  double target = 1.0;
  double expense_ratio = 0.0;

  /// Throws DomainError when L == 0, r < 0 or a value is not finite.
  void validate() const;
};

/// Daily log-returns Y_i. X_i = exp(Y_i) - 1 is never stored.
class LogReturnSeries {
 public:
  LogReturnSeries() = default;
  /// Throws ValueError on non-finite values.
  explicit LogReturnSeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// m1 = mean(Y), m2 = mean(Y^2), s = population standard deviation.
struct SeriesStats {
  std::size_t n = 0;
  double m1 = 0.0;
  double m2 = 0.0;
  double s = 0.0;
};

/// Closed bounds y0 <= Y_i <= y1 assumed for every log-return of a series.
struct BoundWindow {
  double y0 = 0.0;
  double y1 = 0.0;

  bool contains(double y) const noexcept { return y0 <= y && y <= y1; }
};

/// Open interval (lo, hi); either side may be infinite.
struct OpenInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double y) const noexcept { return lo < y && y < hi; }
};

/// Which family of envelopes L belongs to.
enum class LeverageClass { AboveOne, Unit, Fraction, Negative };

/// Throws DomainError for L == 0 or non-finite L.
LeverageClass classify_leverage(double leverage);

struct QuadCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double anchor = 0.0;
  double tangency = 0.0;
  /// f(anchor) and p'(anchor), for evaluation around the anchor.
  double anchor_value = 0.0;
  double anchor_slope = 0.0;
  LeverageClass leverage_class = LeverageClass::Unit;

  double operator()(double x) const noexcept { return (a * x + b) * x + c; }
  /// n (a m2 + b m1 + c), i.e. the envelope summed over a series. Evaluated
  /// as n (a (s^2 + d^2) + p'(anchor) d + f(anchor)) with d = m1 - anchor,
  /// which stays accurate when a and b are large.
  double summed(const SeriesStats& stats, std::size_t days) const noexcept;
  /// Bound on the rounding error of summed(), including the effect of a
  /// one-ulp error in m1. Bounds are widened by it to stay valid.
  double summed_error(const SeriesStats& stats, std::size_t days) const noexcept;
};

enum class BoundDirection { Upper, Lower };

struct LinearBound {
  double value = 0.0;
  BoundDirection direction = BoundDirection::Upper;
};

/// log(1 + L (exp(y) - 1)). Throws DomainError when the leveraged price
/// ratio 1 + L (exp(y) - 1) is not positive.
double daily_leveraged_logreturn(double leverage, double y);

/// d/dy of daily_leveraged_logreturn: L exp(y) / (1 + L (exp(y) - 1)).
double daily_leveraged_slope(double leverage, double y);

/// Log-returns y for which f is defined: (log(1 - 1/L), inf) for L > 1,
/// (-inf, log(1 - 1/L)) for L < 0 and the whole line for 0 < L <= 1.
OpenInterval admissible_y_interval(double leverage);

/// Gap below which anchor and tangency count as coincident.
inline constexpr double kDegenerateGap = 1e-9;

/// Quadratic through (anchor, f(anchor)) and tangent to f at `tangency`.
/// Throws DomainError if a point is outside admissible_y_interval(L) and
/// DegenerateError if |anchor - tangency| < kDegenerateGap.
QuadCoefficients quad_coefficients(double leverage, double anchor,
                                   double tangency);

/// quad_coefficients(L, anchor, 0): b = L and c = 0 exactly.
QuadCoefficients quad_coefficients_origin(double leverage, double anchor);

/// Sum of daily leveraged log-returns. The DomainError names the first
/// offending index.
double exact_leveraged_logreturn(double leverage, const LogReturnSeries& series);
double exact_leveraged_logreturn(double leverage, std::span<const double> values);

/// Per-day log cost of an annual expense ratio: log(1 + r / 252).
double daily_expense_logcost(double expense_ratio);

/// gross - n log(1 + r / 252).
double net_logreturn(double gross, std::size_t days, double expense_ratio);

/// L n m1. An upper bound on the leveraged log-return when L is outside
/// [0, 1], a lower bound inside it.
LinearBound linear_bound(double leverage, std::size_t days, double m1);

}  // namespace levbound
