#include "levbound/thresholds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(10);
  os << value;
  return os.str();
}

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

double fraction_inflection(double leverage) {
  return std::log(1.0 / leverage - 1.0);
}

void validate_common(const ThresholdQuery& query) {
  query.spec.validate();
  if (!std::isfinite(query.m1)) throw DomainError("m1 must be finite");
  if (!is_supported_periods_per_year(query.periods_per_year)) {
    throw DomainError("periods per year must be one of 252, 52, 12, 4, 2, 1; got " +
                      std::to_string(query.periods_per_year));
  }
}

// sup over the tangency range of R(y) for a target multiple and per-period fee.
SThreshold optimize_radicand(double leverage, const TangencyRange& range,
                             double target, double m1, double fee) {
  auto radicand = [&](double y) {
    const QuadCoefficients q = quad_coefficients(leverage, range.anchor, y);
    return -m1 * m1 + ((target - q.b) / q.a) * m1 - (q.c - fee) / q.a;
  };
  const OptimizeReport best =
      optimize_tangency(range, radicand, SearchGoal::Maximize);
  SThreshold result;
  result.y_star = best.argument;
  result.radicand = best.value;
  if (best.value > 0.0) {
    result.s_max = std::sqrt(best.value);
  } else if (best.value == 0.0) {
    result.s_max = 0.0;
  }
  return result;
}

double per_period_fee(const ThresholdQuery& query) {
  return std::log1p(query.spec.expense_ratio / query.periods_per_year);
}

}  // namespace

double ratio_threshold_lower(double leverage, double target, double y0) {
  require(std::isfinite(leverage) && leverage > 1.0, "ratio thresholds need L > 1");
  require(std::isfinite(target) && target < leverage, "ratio thresholds need L0 < L");
  const double edge = std::log1p(-1.0 / leverage);
  require(edge < y0 && y0 < 0.0, "lower ratio threshold needs log(1 - 1/L) = " +
                                     describe(edge) + " < y0 < 0, got y0 = " +
                                     describe(y0));
  return -quad_coefficients_origin(leverage, y0).a / (leverage - target);
}

double ratio_threshold_upper(double leverage, double target, double y1) {
  require(std::isfinite(leverage) && leverage > 1.0, "ratio thresholds need L > 1");
  require(std::isfinite(target) && target < leverage, "ratio thresholds need L0 < L");
  require(std::isfinite(y1) && y1 > 0.0,
          "upper ratio threshold needs y1 > 0, got y1 = " + describe(y1));
  return -quad_coefficients_origin(leverage, y1).a / (leverage - target);
}

bool is_supported_periods_per_year(int periods_per_year) {
  switch (periods_per_year) {
    case 252: case 52: case 12: case 4: case 2: case 1: return true;
    default: return false;
  }
}

ThresholdQuery ThresholdQuery::from_annual(const LeverageSpec& spec,
                                           const BoundWindow& window,
                                           double annual_m1,
                                           int periods_per_year) {
  ThresholdQuery query;
  query.spec = spec;
  query.window = window;
  query.periods_per_year = periods_per_year;
  query.m1 = annual_m1 / static_cast<double>(periods_per_year);
  return query;
}

std::string_view to_string(ThresholdCase c) {
  switch (c) {
    case ThresholdCase::OutperformAboveOne: return "i";
    case ThresholdCase::OutperformNegative: return "ii";
    case ThresholdCase::UnderperformLow: return "under_a";
    case ThresholdCase::UnderperformHigh: return "under_b";
  }
  return "unknown";
}

SThreshold s_threshold_case_i(const ThresholdQuery& query) {
  validate_common(query);
  const double L = query.spec.leverage;
  const double L0 = query.spec.target;
  require(L > 1.0, "case (i) needs L > 1, got L = " + describe(L));
  require(L0 <= L, "case (i) needs L0 <= L");
  const double edge = std::log1p(-1.0 / L);
  require(std::isfinite(query.window.y0) && edge < query.window.y0,
          "case (i) needs y0 > log(1 - 1/L) = " + describe(edge) +
              ", got y0 = " + describe(query.window.y0));
  const TangencyRange range{query.window.y0, query.window.y0,
                            std::numeric_limits<double>::infinity()};
  return optimize_radicand(L, range, L0, query.m1, per_period_fee(query));
}

SThreshold s_threshold_case_ii(const ThresholdQuery& query) {
  validate_common(query);
  const double L = query.spec.leverage;
  const double L0 = query.spec.target;
  require(L < 0.0, "case (ii) needs L < 0, got L = " + describe(L));
  require(L <= L0 && L0 < 0.0, "case (ii) needs L <= L0 < 0");
  const double edge = std::log1p(-1.0 / L);
  require(std::isfinite(query.window.y1) && query.window.y1 < edge,
          "case (ii) needs y1 < log(1 - 1/L) = " + describe(edge) +
              ", got y1 = " + describe(query.window.y1));
  const TangencyRange range{query.window.y1,
                            -std::numeric_limits<double>::infinity(),
                            query.window.y1};
  return optimize_radicand(L, range, L0, query.m1, per_period_fee(query));
}

SThreshold s_threshold_under_a(const ThresholdQuery& query) {
  validate_common(query);
  const double L = query.spec.leverage;
  require(0.0 < L && L < 1.0, "underperformance needs 0 < L < 1, got L = " + describe(L));
  const double inflection = fraction_inflection(L);
  require(std::isfinite(query.window.y1) && query.window.y1 < inflection,
          "under_a needs y1 < log(1/L - 1) = " + describe(inflection) +
              ", got y1 = " + describe(query.window.y1));
  const TangencyRange range{query.window.y1,
                            -std::numeric_limits<double>::infinity(),
                            query.window.y1};
  return optimize_radicand(L, range, 1.0, query.m1, 0.0);
}

SThreshold s_threshold_under_b(const ThresholdQuery& query) {
  validate_common(query);
  const double L = query.spec.leverage;
  require(0.0 < L && L < 1.0, "underperformance needs 0 < L < 1, got L = " + describe(L));
  const double inflection = fraction_inflection(L);
  require(std::isfinite(query.window.y0) && query.window.y0 > inflection,
          "under_b needs y0 > log(1/L - 1) = " + describe(inflection) +
              ", got y0 = " + describe(query.window.y0));
  const TangencyRange range{query.window.y0, query.window.y0,
                            std::numeric_limits<double>::infinity()};
  return optimize_radicand(L, range, 1.0, query.m1, 0.0);
}

SThreshold s_threshold(ThresholdCase which, const ThresholdQuery& query) {
  switch (which) {
    case ThresholdCase::OutperformAboveOne: return s_threshold_case_i(query);
    case ThresholdCase::OutperformNegative: return s_threshold_case_ii(query);
    case ThresholdCase::UnderperformLow: return s_threshold_under_a(query);
    case ThresholdCase::UnderperformHigh: return s_threshold_under_b(query);
  }
  throw InvalidArgumentError("unknown threshold case");
}

FractionSets fraction_sets(const BoundWindow& window) {
  FractionSets sets;
  for (int k = 1; k <= 99; ++k) {
    const double L = k / 100.0;
    const double inflection = fraction_inflection(L);
    if (window.y1 < inflection) sets.s1.push_back(L);
    if (inflection < window.y0) sets.s2.push_back(L);
  }
  return sets;
}

FractionMinimum min_threshold_over_fractions(const BoundWindow& window,
                                             double m1, int periods_per_year) {
  const FractionSets sets = fraction_sets(window);
  if (sets.s1.empty() || sets.s2.empty()) {
    throw EmptySetError("window [" + describe(window.y0) + ", " +
                        describe(window.y1) + "] leaves " +
                        (sets.s1.empty() ? "S1" : "S2") + " empty");
  }
  FractionMinimum result;
  auto scan = [&](const std::vector<double>& members, ThresholdCase which,
                  std::optional<double>& best, double& best_leverage,
                  std::vector<double>& skipped) {
    for (double L : members) {
      ThresholdQuery query;
      query.spec = {L, 1.0, 0.0};
      query.window = window;
      query.m1 = m1;
      query.periods_per_year = periods_per_year;
      const SThreshold t = s_threshold(which, query);
      if (!t.s_max) {
        skipped.push_back(L);
        continue;
      }
      if (!best || *t.s_max < *best) {
        best = t.s_max;
        best_leverage = L;
      }
    }
  };
  scan(sets.s1, ThresholdCase::UnderperformLow, result.red, result.red_leverage,
       result.skipped_s1);
  scan(sets.s2, ThresholdCase::UnderperformHigh, result.green,
       result.green_leverage, result.skipped_s2);
  return result;
}

}  // namespace levbound
