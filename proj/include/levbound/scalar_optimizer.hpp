#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace levbound {

using ScalarObjective = std::function<double(double)>;

struct OptimizeReport {
  double argument = 0.0;
  /// objective(argument), as evaluated during the search.
  double value = 0.0;
  std::size_t evaluations = 0;
  /// Width of the final golden-section bracket.
  double achieved_tolerance = 0.0;
};

struct OptimizeOptions {
  std::size_t mesh_points = 1024;
};

/// Best point of a uniform mesh over [lo, hi] (endpoints included), refined
/// by golden-section search inside the neighbouring mesh cells until the
/// bracket is narrower than `tolerance`. Leftmost mesh maximum wins ties.
/// `probes` are extra candidate abscissae; those outside [lo, hi] are ignored.
///
/// The returned value is never below any mesh or probe value. Throws
/// NonFiniteError (naming the abscissa) if the objective is ever non-finite
/// and InvalidArgumentError unless lo < hi, tolerance > 0, mesh_points >= 2.
OptimizeReport maximize(const ScalarObjective& objective, double lo, double hi,
                        double tolerance, std::span<const double> probes = {},
                        OptimizeOptions options = {});

/// maximize of the negated objective; `value` is reported un-negated.
OptimizeReport minimize(const ScalarObjective& objective, double lo, double hi,
                        double tolerance, std::span<const double> probes = {},
                        OptimizeOptions options = {});

}  // namespace levbound
