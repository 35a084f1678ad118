#pragma once

// Threshold curves over an annualized mean axis, as CSV-ready panels.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levbound/core_model.hpp"
#include "levbound/market_data.hpp"
#include "levbound/thresholds.hpp"

namespace levbound {

struct SweepPoint {
  double x = 0.0;
  /// Empty where the threshold is absent.
  std::optional<double> value;
  std::string label;
};

struct SweepPanel {
  std::string name;
  std::vector<SweepPoint> points;
};

/// `x,value,series_label` with 10 significant digits; ABSENT for empty values.
std::string panel_csv(const SweepPanel& panel);

/// Points per curve in the built-in figures.
inline constexpr std::size_t kFigurePoints = 61;

/// Panels for figure 1..8. Throws InvalidArgumentError for other ids.
std::vector<SweepPanel> figure_sweep(int figure, std::size_t points = kFigurePoints);

/// A custom grid: every combination of the lists, one curve per combination,
/// over `points` values of per_year * m1 in [axis_lo, axis_hi].
struct SweepSpec {
  ThresholdCase which = ThresholdCase::OutperformAboveOne;
  double axis_lo = 0.0;
  double axis_hi = 0.25;
  std::size_t points = kFigurePoints;
  std::vector<double> leverages;
  /// Ignored for the underperformance cases, which compare against L0 = 1.
  std::vector<double> targets{1.0};
  std::vector<double> expenses{0.0};
  BoundWindow window{-0.2231435513142097, 0.1823215567939546};
  std::vector<Schedule> schedules{Schedule::Daily};

  std::size_t grid_size() const noexcept;
};

/// Upper limit on SweepSpec::grid_size().
inline constexpr std::size_t kMaxSweepPoints = 1000000;

/// Throws InvalidArgumentError on an empty list, a non-finite axis or more
/// than kMaxSweepPoints points.
SweepPanel custom_sweep(const SweepSpec& spec);

}  // namespace levbound
