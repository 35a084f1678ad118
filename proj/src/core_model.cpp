#include "levbound/core_model.hpp"

#include <cmath>
#include <sstream>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

// log1p(u) - u without the cancellation of the direct difference.
double log1p_minus_identity(double u) {
  if (std::abs(u) >= 0.1) return std::log1p(u) - u;
  double power = u * u;
  double sum = 0.0;
  for (int k = 2; k < 60; ++k) {
    const double term = ((k % 2 == 0) ? -power : power) / k;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    power *= u;
  }
  return sum;
}

// expm1(h) - h, same idea.
double expm1_minus_identity(double h) {
  if (std::abs(h) >= 0.1) return std::expm1(h) - h;
  double term = h * h / 2.0;
  double sum = 0.0;
  for (int k = 3; k < 60; ++k) {
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    term *= h / k;
  }
  return sum;
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be finite, got " << value;
    throw DomainError(os.str());
  }
}

void require_nonzero_leverage(double leverage) {
  require_finite(leverage, "leverage");
  if (leverage == 0.0) throw DomainError("leverage multiple L must be nonzero");
}

void require_admissible(double leverage, double y, const char* name) {
  require_finite(y, name);
  const OpenInterval domain = admissible_y_interval(leverage);
  if (!domain.contains(y)) {
    std::ostringstream os;
    os.precision(10);
    os << name << " = " << y << " lies outside the admissible interval ("
       << domain.lo << ", " << domain.hi << ") for L = " << leverage
       << ": the leveraged price ratio 1 + L(exp(y) - 1) must stay positive";
    throw DomainError(os.str());
  }
}

// f(anchor) - f(y) - f'(y) (anchor - y), the Taylor remainder that sets a.
double tangent_remainder(double leverage, double anchor, double y,
                         double slope) {
  const double h = anchor - y;
  if (std::abs(h) < 0.5) {
    // f(anchor) - f(y) = log1p(f'(y) expm1(h)).
    const double u = slope * std::expm1(h);
    if (u > -1.0) {
      return log1p_minus_identity(u) + slope * expm1_minus_identity(h);
    }
  }
  return (daily_leveraged_logreturn(leverage, anchor) -
          daily_leveraged_logreturn(leverage, y)) -
         slope * h;
}

}  // namespace

void LeverageSpec::validate() const {
  require_nonzero_leverage(leverage);
  require_finite(target, "target multiple L0");
  require_finite(expense_ratio, "expense ratio");
  if (expense_ratio < 0.0) throw DomainError("expense ratio r must be >= 0");
}

LogReturnSeries::LogReturnSeries(std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "log-return at index " << i << " is not finite";
      throw ValueError(os.str());
    }
  }
}

LeverageClass classify_leverage(double leverage) {
  if (!std::isfinite(leverage) || leverage == 0.0) {
    throw DomainError("leverage multiple L must be finite and nonzero");
  }
  if (leverage == 1.0) return LeverageClass::Unit;
  if (leverage > 1.0) return LeverageClass::AboveOne;
  if (leverage < 0.0) return LeverageClass::Negative;
  return LeverageClass::Fraction;
}

double QuadCoefficients::summed(const SeriesStats& stats,
                                std::size_t days) const noexcept {
  const double d = stats.m1 - anchor;
  return static_cast<double>(days) *
         (a * (stats.s * stats.s + d * d) + anchor_slope * d + anchor_value);
}

double QuadCoefficients::summed_error(const SeriesStats& stats,
                                      std::size_t days) const noexcept {
  constexpr double kUnit = 8.0 * std::numeric_limits<double>::epsilon();
  const double d = stats.m1 - anchor;
  const double terms = std::abs(a) * (stats.s * stats.s + d * d) +
                       std::abs(anchor_slope * d) + std::abs(anchor_value) +
                       std::abs(2.0 * a * d + anchor_slope) * std::abs(stats.m1);
  return static_cast<double>(days) * kUnit * terms;
}

double daily_leveraged_logreturn(double leverage, double y) {
  if (leverage == 1.0) return y;
  const double growth = leverage * std::expm1(y);
  if (!(1.0 + growth > 0.0)) {
    std::ostringstream os;
    os.precision(10);
    os << "leveraged price ratio 1 + L(exp(y) - 1) = " << 1.0 + growth
       << " is not positive for L = " << leverage << ", y = " << y;
    throw DomainError(os.str());
  }
  return std::log1p(growth);
}

double daily_leveraged_slope(double leverage, double y) {
  if (leverage == 1.0) return 1.0;
  return leverage * std::exp(y) / (1.0 + leverage * std::expm1(y));
}

OpenInterval admissible_y_interval(double leverage) {
  require_nonzero_leverage(leverage);
  OpenInterval interval;
  if (leverage > 1.0) {
    interval.lo = std::log1p(-1.0 / leverage);
  } else if (leverage < 0.0) {
    interval.hi = std::log1p(-1.0 / leverage);
  }
  return interval;
}

QuadCoefficients quad_coefficients(double leverage, double anchor,
                                   double tangency) {
  require_nonzero_leverage(leverage);
  require_admissible(leverage, anchor, "anchor");
  require_admissible(leverage, tangency, "tangency");
  if (std::abs(anchor - tangency) < kDegenerateGap) {
    std::ostringstream os;
    os.precision(17);
    os << "anchor " << anchor << " and tangency " << tangency
       << " are closer than " << kDegenerateGap;
    throw DegenerateError(os.str());
  }
  if (tangency == 0.0) return quad_coefficients_origin(leverage, anchor);

  QuadCoefficients q;
  q.anchor = anchor;
  q.tangency = tangency;
  q.leverage_class = classify_leverage(leverage);
  q.anchor_value = daily_leveraged_logreturn(leverage, anchor);
  if (leverage == 1.0) {
    q.b = q.anchor_slope = 1.0;
    return q;
  }
  const double slope = daily_leveraged_slope(leverage, tangency);
  const double h = anchor - tangency;
  q.a = tangent_remainder(leverage, anchor, tangency, slope) / (h * h);
  q.b = slope - 2.0 * q.a * tangency;
  q.c = q.anchor_value - q.a * anchor * anchor - q.b * anchor;
  q.anchor_slope = slope + 2.0 * q.a * h;
  return q;
}

QuadCoefficients quad_coefficients_origin(double leverage, double anchor) {
  require_nonzero_leverage(leverage);
  require_admissible(leverage, anchor, "anchor");
  if (std::abs(anchor) < kDegenerateGap) {
    std::ostringstream os;
    os.precision(17);
    os << "anchor " << anchor << " is closer than " << kDegenerateGap
       << " to the tangency point 0";
    throw DegenerateError(os.str());
  }
  QuadCoefficients q;
  q.anchor = anchor;
  q.tangency = 0.0;
  q.leverage_class = classify_leverage(leverage);
  q.b = leverage;
  q.anchor_value = daily_leveraged_logreturn(leverage, anchor);
  if (leverage != 1.0) {
    q.a = tangent_remainder(leverage, anchor, 0.0, leverage) / (anchor * anchor);
  }
  q.anchor_slope = leverage + 2.0 * q.a * anchor;
  return q;
}

double exact_leveraged_logreturn(double leverage,
                                 std::span<const double> values) {
  require_nonzero_leverage(leverage);
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      total += daily_leveraged_logreturn(leverage, values[i]);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "index " << i << ": " << e.what();
      throw DomainError(os.str());
    }
  }
  return total;
}

double exact_leveraged_logreturn(double leverage,
                                 const LogReturnSeries& series) {
  return exact_leveraged_logreturn(leverage, series.values());
}

double daily_expense_logcost(double expense_ratio) {
  return std::log1p(expense_ratio / kTradingDaysPerYear);
}

double net_logreturn(double gross, std::size_t days, double expense_ratio) {
  if (expense_ratio == 0.0 || days == 0) return gross;
  return gross - static_cast<double>(days) * daily_expense_logcost(expense_ratio);
}

LinearBound linear_bound(double leverage, std::size_t days, double m1) {
  LinearBound bound;
  bound.value = leverage * static_cast<double>(days) * m1;
  bound.direction = (leverage < 0.0 || leverage > 1.0) ? BoundDirection::Upper
                                                       : BoundDirection::Lower;
  return bound;
}

}  // namespace levbound
