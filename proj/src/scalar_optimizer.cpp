#include "levbound/scalar_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

constexpr double kInvPhi = 0.6180339887498948482;

class CountingObjective {
 public:
  explicit CountingObjective(const ScalarObjective& f) : f_(f) {}

  double operator()(double x) {
    ++evaluations_;
    const double v = f_(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "objective returned " << v << " at x = " << x;
      throw NonFiniteError(os.str());
    }
    return v;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const ScalarObjective& f_;
  std::size_t evaluations_ = 0;
};

}  // namespace

OptimizeReport maximize(const ScalarObjective& objective, double lo, double hi,
                        double tolerance, std::span<const double> probes,
                        OptimizeOptions options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidArgumentError("maximize requires finite lo < hi");
  }
  if (!(tolerance > 0.0)) {
    throw InvalidArgumentError("maximize requires tolerance > 0");
  }
  if (options.mesh_points < 2) {
    throw InvalidArgumentError("maximize requires at least 2 mesh points");
  }

  CountingObjective f(objective);
  const std::size_t last = options.mesh_points - 1;
  const double step = (hi - lo) / static_cast<double>(last);
  auto mesh_x = [&](std::size_t i) {
    return i == last ? hi : lo + step * static_cast<double>(i);
  };

  std::size_t best_index = 0;
  double best_x = lo;
  double best_value = f(lo);
  for (std::size_t i = 1; i <= last; ++i) {
    const double x = mesh_x(i);
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best_x = x;
      best_index = i;
    }
  }

  double left = mesh_x(best_index == 0 ? 0 : best_index - 1);
  double right = mesh_x(std::min(best_index + 1, last));

  for (double p : probes) {
    if (!(p >= lo && p <= hi)) continue;
    const double v = f(p);
    if (v > best_value) {
      best_value = v;
      best_x = p;
      left = std::max(lo, p - step);
      right = std::min(hi, p + step);
    }
  }

  // Golden-section on [left, right], keeping the best point seen overall.
  double x1 = right - kInvPhi * (right - left);
  double x2 = left + kInvPhi * (right - left);
  double f1 = 0.0, f2 = 0.0;
  if (right - left > tolerance) {
    f1 = f(x1);
    f2 = f(x2);
  }
  auto consider = [&](double x, double v) {
    if (v > best_value) {
      best_value = v;
      best_x = x;
    }
  };
  if (right - left > tolerance) {
    consider(x1, f1);
    consider(x2, f2);
  }
  while (right - left > tolerance) {
    if (f1 >= f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - kInvPhi * (right - left);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + kInvPhi * (right - left);
      f2 = f(x2);
      consider(x2, f2);
    }
  }

  OptimizeReport report;
  report.argument = best_x;
  report.value = best_value;
  report.evaluations = f.evaluations();
  report.achieved_tolerance = right - left;
  return report;
}

OptimizeReport minimize(const ScalarObjective& objective, double lo, double hi,
                        double tolerance, std::span<const double> probes,
                        OptimizeOptions options) {
  const ScalarObjective negated = [&objective](double x) { return -objective(x); };
  OptimizeReport report = maximize(negated, lo, hi, tolerance, probes, options);
  report.value = -report.value;
  return report;
}

}  // namespace levbound
