#include "levbound/bounds_engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double open_end_margin(double end) { return 1e-8 * (1.0 + std::abs(end)); }

// log(1/L - 1), where f' changes from convex to concave for 0 < L < 1.
double fraction_inflection(double leverage) {
  return std::log(1.0 / leverage - 1.0);
}

std::string describe(double value) {
  std::ostringstream os;
  os.precision(10);
  os << value;
  return os.str();
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::AboveOne: return "ABOVE_ONE";
    case Regime::FractionLow: return "FRACTION_LOW";
    case Regime::FractionHigh: return "FRACTION_HIGH";
    case Regime::Negative: return "NEGATIVE";
    case Regime::Unit: return "UNIT";
    case Regime::Gap: return "GAP";
  }
  return "UNKNOWN";
}

Regime classify_regime(double leverage, const BoundWindow& window) {
  if (!std::isfinite(leverage) || leverage == 0.0) {
    throw DomainError("leverage multiple L must be finite and nonzero");
  }
  if (!std::isfinite(window.y0) || !std::isfinite(window.y1) ||
      !(window.y0 < window.y1)) {
    throw DomainError("return window requires finite y0 < y1");
  }
  if (leverage == 1.0) return Regime::Unit;
  if (leverage > 1.0) {
    const double edge = std::log1p(-1.0 / leverage);
    if (!(edge < window.y0)) {
      throw DomainError("L > 1 requires y0 > log(1 - 1/L) = " + describe(edge) +
                        ", got y0 = " + describe(window.y0));
    }
    return Regime::AboveOne;
  }
  if (leverage < 0.0) {
    const double edge = std::log1p(-1.0 / leverage);
    if (!(window.y1 < edge)) {
      throw DomainError("L < 0 requires y1 < log(1 - 1/L) = " + describe(edge) +
                        ", got y1 = " + describe(window.y1));
    }
    return Regime::Negative;
  }
  const double inflection = fraction_inflection(leverage);
  if (window.y1 < inflection) return Regime::FractionLow;
  if (window.y0 > inflection) return Regime::FractionHigh;
  return Regime::Gap;
}

TangencyRange lower_tangency_range(double leverage, const BoundWindow& window,
                                   Regime regime) {
  switch (regime) {
    case Regime::AboveOne:
      return {window.y0, window.y0, kInf};
    case Regime::FractionLow:
      return {window.y0, window.y0, fraction_inflection(leverage)};
    case Regime::FractionHigh:
      return {window.y1, fraction_inflection(leverage), window.y1};
    case Regime::Negative:
      return {window.y1, -kInf, window.y1};
    case Regime::Unit:
    case Regime::Gap:
      break;
  }
  throw GapRegimeError("no quadratic envelope for regime " +
                       std::string(to_string(regime)));
}

TangencyRange upper_tangency_range(double leverage, const BoundWindow& window,
                                   Regime regime) {
  switch (regime) {
    case Regime::AboveOne:
      return {window.y1, std::log1p(-1.0 / leverage), window.y1};
    case Regime::FractionLow:
      return {window.y1, -kInf, window.y1};
    case Regime::FractionHigh:
      return {window.y0, window.y0, kInf};
    case Regime::Negative:
      return {window.y0, window.y0, std::log1p(-1.0 / leverage)};
    case Regime::Unit:
    case Regime::Gap:
      break;
  }
  throw GapRegimeError("no quadratic envelope for regime " +
                       std::string(to_string(regime)));
}

OptimizeReport optimize_tangency(const TangencyRange& range,
                                 const std::function<double(double)>& objective,
                                 SearchGoal goal,
                                 const TangencySearchOptions& options) {
  const bool open_below = std::isinf(range.lo);
  const bool open_above = std::isinf(range.hi);
  if (open_below && open_above) {
    throw InvalidArgumentError("tangency range must have a finite end");
  }
  const double lo_end = open_below ? 0.0 : range.lo + open_end_margin(range.lo);
  const double hi_end = open_above ? 0.0 : range.hi - open_end_margin(range.hi);

  double span = options.initial_span;
  while (true) {
    const double lo = open_below ? hi_end - span : lo_end;
    const double hi = open_above ? lo_end + span : hi_end;
    if (!(lo < hi)) {
      throw DomainError("tangency range (" + describe(range.lo) + ", " +
                        describe(range.hi) + ") is empty");
    }
    const double probe[] = {0.0};
    OptimizeReport report =
        goal == SearchGoal::Maximize
            ? maximize(objective, lo, hi, options.tolerance, probe, options.mesh)
            : minimize(objective, lo, hi, options.tolerance, probe, options.mesh);

    const double cell = (hi - lo) / static_cast<double>(options.mesh.mesh_points - 1);
    const bool at_free_edge = (open_above && report.argument >= hi - cell) ||
                              (open_below && report.argument <= lo + cell);
    if (!at_free_edge || span * 2.0 > options.max_span) return report;
    span *= 2.0;
  }
}

BoundResult bound_interval(double leverage, const BoundWindow& window,
                           const SeriesStats& stats, std::size_t days,
                           const TangencySearchOptions& options) {
  const Regime regime = classify_regime(leverage, window);
  if (regime == Regime::Gap) {
    throw GapRegimeError(
        "GAP regime: 0 < L < 1 needs y1 < log(1/L - 1) or y0 > log(1/L - 1); "
        "log(1/L - 1) = " + describe(fraction_inflection(leverage)) +
        " lies inside [" + describe(window.y0) + ", " + describe(window.y1) + "]");
  }
  if (!std::isfinite(stats.m1) || !std::isfinite(stats.m2) || !std::isfinite(stats.s) ||
      stats.s < 0.0 || stats.m2 < stats.m1 * stats.m1 * (1.0 - 1e-12)) {
    throw DomainError("series moments must satisfy m2 >= m1^2 and s >= 0");
  }
  const double moment_gap = stats.s * stats.s + stats.m1 * stats.m1 - stats.m2;
  if (std::abs(moment_gap) > 1e-9 * stats.m2 + 1e-300) {
    throw DomainError("series moments are inconsistent: s^2 = " + describe(stats.s * stats.s) +
                      " but m2 - m1^2 = " + describe(stats.m2 - stats.m1 * stats.m1));
  }

  BoundResult result;
  result.regime = regime;
  const double n = static_cast<double>(days);
  if (regime == Regime::Unit) {
    result.lower = result.upper = n * stats.m1;
    result.y_star_lower = result.y_star_upper = std::nan("");
    return result;
  }

  auto envelope_sum = [&](double anchor) {
    return [&, anchor](double y) {
      return quad_coefficients(leverage, anchor, y).summed(stats, days);
    };
  };

  const TangencyRange lower_range = lower_tangency_range(leverage, window, regime);
  const OptimizeReport lower = optimize_tangency(
      lower_range, envelope_sum(lower_range.anchor), SearchGoal::Maximize, options);
  const TangencyRange upper_range = upper_tangency_range(leverage, window, regime);
  const OptimizeReport upper = optimize_tangency(
      upper_range, envelope_sum(upper_range.anchor), SearchGoal::Minimize, options);

  // Widen by the rounding error at the optimum so the bounds stay valid.
  result.lower = lower.value - quad_coefficients(leverage, lower_range.anchor, lower.argument)
                                   .summed_error(stats, days);
  result.upper = upper.value + quad_coefficients(leverage, upper_range.anchor, upper.argument)
                                   .summed_error(stats, days);
  result.y_star_lower = lower.argument;
  result.y_star_upper = upper.argument;

  const LinearBound linear = linear_bound(leverage, days, stats.m1);
  if (linear.direction == BoundDirection::Upper && linear.value < result.upper) {
    result.upper = linear.value;
    result.upper_is_linear = true;
  } else if (linear.direction == BoundDirection::Lower &&
             linear.value > result.lower) {
    result.lower = linear.value;
    result.lower_is_linear = true;
  }
  return result;
}

}  // namespace levbound
