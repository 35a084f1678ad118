#include "levbound/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

const double kLog08 = std::log(0.8);
const double kLog115 = std::log(1.15);
const double kLog12 = std::log(1.2);
constexpr double kFee = 0.0095;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(count - 1);
  }
  return xs;
}

// Evaluates every point in parallel; results land at their own index.
void fill_parallel(std::vector<SweepPoint>& points,
                   const std::function<std::optional<double>(std::size_t)>& value_at) {
  const unsigned threads = std::max(1u, std::min<unsigned>(
      std::thread::hardware_concurrency(), static_cast<unsigned>(points.size())));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < points.size(); i += threads) points[i].value = value_at(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::optional<double> threshold_at(ThresholdCase which, double L, double L0, double r,
                                   const BoundWindow& window, double annual_m1,
                                   int periods) {
  return s_threshold(which, ThresholdQuery::from_annual({L, L0, r}, window, annual_m1, periods))
      .s_max;
}

struct Curve {
  std::string label;
  ThresholdCase which;
  double L, L0, r;
  BoundWindow window;
  int periods = 252;
};

SweepPanel curves_panel(std::string name, const std::vector<Curve>& curves,
                        const std::vector<double>& axis) {
  SweepPanel panel{std::move(name), {}};
  for (const Curve& c : curves) {
    for (double x : axis) panel.points.push_back({x, std::nullopt, c.label});
  }
  fill_parallel(panel.points, [&](std::size_t i) {
    const Curve& c = curves[i / axis.size()];
    return threshold_at(c.which, c.L, c.L0, c.r, c.window, panel.points[i].x, c.periods);
  });
  return panel;
}

std::string y_label(const char* name, double base) {
  return std::string(name) + "=log" + num(base);
}

SweepPanel figure1(std::size_t points) {
  SweepPanel panel{"fig1", {}};
  for (double L : {2.0, 3.0}) {
    for (double L0 : {0.0, 0.5, 1.0, 1.5}) {
      const std::string label = "L=" + num(L) + ";L0=" + num(L0);
      for (double x : linspace(-30.0, -1.0, points)) {
        panel.points.push_back(
            {x, ratio_threshold_lower(L, L0, std::log1p(x / 100.0)), label});
      }
    }
  }
  return panel;
}

std::vector<SweepPanel> figure2(std::size_t points) {
  std::vector<SweepPanel> panels;
  const auto axis = linspace(-0.05, 0.25, points);
  for (double L : {2.0, 3.0}) {
    std::vector<Curve> curves;
    for (double L0 : {0.0, 1.0}) {
      for (double base : {0.8, 0.9}) {
        for (double r : {0.0, kFee}) {
          curves.push_back({"L0=" + num(L0) + ";" + y_label("y0", base) + ";r=" + num(r),
                            ThresholdCase::OutperformAboveOne, L, L0, r,
                            {std::log(base), kLog12}});
        }
      }
    }
    panels.push_back(curves_panel("fig2_L" + num(L), curves, axis));
  }
  return panels;
}

// Two leverages compete per point; the larger threshold is kept and tagged.
SweepPanel winner_panel(std::string name, ThresholdCase which, double L_a, double L_b,
                        const std::vector<double>& targets, const BoundWindow& window,
                        const std::vector<double>& axis) {
  SweepPanel panel{std::move(name), {}};
  for (double L0 : targets) {
    for (double x : axis) panel.points.push_back({x, std::nullopt, "L0=" + num(L0)});
  }
  std::vector<std::string> winners(panel.points.size());
  fill_parallel(panel.points, [&](std::size_t i) -> std::optional<double> {
    const double L0 = targets[i / axis.size()];
    const auto a = threshold_at(which, L_a, L0, kFee, window, panel.points[i].x, 252);
    const auto b = threshold_at(which, L_b, L0, kFee, window, panel.points[i].x, 252);
    if (!a && !b) {
      winners[i] = "none";
      return std::nullopt;
    }
    if (a && (!b || *a > *b)) {
      winners[i] = "L=" + num(L_a);
      return a;
    }
    winners[i] = (a && *a == *b) ? "tie" : "L=" + num(L_b);
    return b;
  });
  for (std::size_t i = 0; i < panel.points.size(); ++i) {
    panel.points[i].label += ";winner=" + winners[i];
  }
  return panel;
}

SweepPanel figure3(std::size_t points) {
  std::vector<double> targets;
  for (int k = 10; k <= 20; ++k) targets.push_back(k / 10.0);
  return winner_panel("fig3", ThresholdCase::OutperformAboveOne, 2.0, 3.0, targets,
                      {kLog08, kLog12}, linspace(0.02, 0.2, points));
}

std::vector<SweepPanel> figure4(std::size_t points) {
  std::vector<SweepPanel> panels;
  const auto axis = linspace(-0.6, 0.0, points);
  for (double L : {-2.0, -3.0}) {
    std::vector<Curve> curves;
    for (double L0 : {-1.0, -1.5}) {
      for (double base : {1.15, 1.1}) {
        for (double r : {0.0, kFee}) {
          curves.push_back({"L0=" + num(L0) + ";" + y_label("y1", base) + ";r=" + num(r),
                            ThresholdCase::OutperformNegative, L, L0, r,
                            {std::log(0.85), std::log(base)}});
        }
      }
    }
    panels.push_back(curves_panel("fig4_L" + num(L), curves, axis));
  }
  return panels;
}

SweepPanel figure6(std::size_t points) {
  std::vector<double> targets;
  for (int k = 10; k <= 15; ++k) targets.push_back(-k / 10.0);
  return winner_panel("fig6", ThresholdCase::OutperformNegative, -2.0, -3.0, targets,
                      {std::log(0.85), kLog115}, linspace(-0.6, 0.0, points));
}

// Boundary fraction of the window, rounded to the hundredth away from the gap.
double boundary_fraction(ThresholdCase which, const BoundWindow& w) {
  if (which == ThresholdCase::UnderperformLow) {
    return std::floor(100.0 / (1.0 + std::exp(w.y1)) - 1e-9) / 100.0;
  }
  return std::ceil(100.0 / (1.0 + std::exp(w.y0)) + 1e-9) / 100.0;
}

std::vector<SweepPanel> fraction_figure(const char* prefix, ThresholdCase which,
                                        std::size_t points) {
  const BoundWindow window{kLog08, kLog12};
  const double green = boundary_fraction(which, window);
  const double red = which == ThresholdCase::UnderperformLow ? green - 0.05 : green + 0.05;
  const auto axis = linspace(0.0, 0.25, points);
  std::vector<SweepPanel> panels;
  for (Schedule s : kAllSchedules) {
    const int periods = plan_for(s).periods_per_year;
    std::vector<Curve> curves{
        {"green;L=" + num(green), which, green, 1.0, 0.0, window, periods},
        {"red;L=" + num(red), which, red, 1.0, 0.0, window, periods}};
    panels.push_back(curves_panel(std::string(prefix) + "_" + std::string(to_string(s)),
                                  curves, axis));
  }
  return panels;
}

std::vector<SweepPanel> figure8(std::size_t points) {
  const BoundWindow window{kLog08, kLog12};
  const auto axis = linspace(0.0, 0.25, points);
  std::vector<SweepPanel> panels;
  for (Schedule s : kAllSchedules) {
    const int periods = plan_for(s).periods_per_year;
    SweepPanel panel{"fig8_" + std::string(to_string(s)), {}};
    for (const char* label : {"red", "green"}) {
      for (double x : axis) panel.points.push_back({x, std::nullopt, label});
    }
    fill_parallel(panel.points, [&](std::size_t i) {
      const FractionMinimum m =
          min_threshold_over_fractions(window, panel.points[i].x / periods, periods);
      return i < axis.size() ? m.red : m.green;
    });
    panels.push_back(std::move(panel));
  }
  return panels;
}

}  // namespace

std::string panel_csv(const SweepPanel& panel) {
  std::string out = "x,value,series_label\n";
  for (const SweepPoint& p : panel.points) {
    out += num(p.x);
    out += ',';
    out += p.value ? num(*p.value) : std::string("ABSENT");
    out += ',';
    out += p.label;
    out += '\n';
  }
  return out;
}

std::vector<SweepPanel> figure_sweep(int figure, std::size_t points) {
  if (points < 2 || points > kMaxSweepPoints) {
    throw InvalidArgumentError("points per curve must be in [2, 1000000]");
  }
  switch (figure) {
    case 1: return {figure1(points)};
    case 2: return figure2(points);
    case 3: return {figure3(points)};
    case 4: return figure4(points);
    case 5: return fraction_figure("fig5", ThresholdCase::UnderperformHigh, points);
    case 6: return {figure6(points)};
    case 7: return fraction_figure("fig7", ThresholdCase::UnderperformLow, points);
    case 8: return figure8(points);
    default:
      throw InvalidArgumentError("unknown figure " + std::to_string(figure) +
                                 " (expected 1..8)");
  }
}

std::size_t SweepSpec::grid_size() const noexcept {
  const bool under = which == ThresholdCase::UnderperformLow ||
                     which == ThresholdCase::UnderperformHigh;
  const std::size_t t = under ? 1 : targets.size();
  const std::size_t r = under ? 1 : expenses.size();
  return points * leverages.size() * t * r * schedules.size();
}

SweepPanel custom_sweep(const SweepSpec& spec) {
  if (!std::isfinite(spec.axis_lo) || !std::isfinite(spec.axis_hi) ||
      !(spec.axis_lo <= spec.axis_hi)) {
    throw InvalidArgumentError("sweep axis must be finite with lo <= hi");
  }
  if (spec.points == 0 || spec.leverages.empty() || spec.targets.empty() ||
      spec.expenses.empty() || spec.schedules.empty()) {
    throw InvalidArgumentError("sweep lists must be non-empty");
  }
  if (spec.grid_size() > kMaxSweepPoints) {
    throw InvalidArgumentError("sweep grid has " + std::to_string(spec.grid_size()) +
                               " points, more than 1000000");
  }
  const bool under = spec.which == ThresholdCase::UnderperformLow ||
                     spec.which == ThresholdCase::UnderperformHigh;
  const std::vector<double> targets = under ? std::vector<double>{1.0} : spec.targets;
  const std::vector<double> expenses = under ? std::vector<double>{0.0} : spec.expenses;
  std::vector<Curve> curves;
  for (Schedule s : spec.schedules) {
    for (double L : spec.leverages) {
      for (double L0 : targets) {
        for (double r : expenses) {
          std::string label = "L=" + num(L);
          if (!under) label += ";L0=" + num(L0) + ";r=" + num(r);
          label += ";schedule=" + std::string(to_string(s));
          curves.push_back({label, spec.which, L, L0, r, spec.window,
                            plan_for(s).periods_per_year});
        }
      }
    }
  }
  return curves_panel("custom_" + std::string(to_string(spec.which)), curves,
                      linspace(spec.axis_lo, spec.axis_hi, spec.points));
}

}  // namespace levbound
