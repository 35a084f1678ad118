#include "levbound/oracle_verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>
#include <thread>

#include "levbound/bounds_engine.hpp"
#include "levbound/errors.hpp"
#include "levbound/market_data.hpp"
#include "levbound/thresholds.hpp"

namespace levbound {
namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    salt};
  return std::mt19937_64(seq);
}

template <class T>
const T& pick(const std::vector<T>& values, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> index(0, values.size() - 1);
  return values[index(rng)];
}

// Uniform draws, endpoint-only draws, or a tight cluster around a random
// centre, rotating with the trial index.
std::vector<double> trial_values(const BoundWindow& w, std::size_t n, std::size_t trial,
                                 std::mt19937_64& rng) {
  std::vector<double> values(n);
  std::uniform_real_distribution<double> uniform(w.y0, w.y1);
  switch (trial % 4) {
    case 0: {
      std::bernoulli_distribution coin(0.5);
      for (double& y : values) y = coin(rng) ? w.y1 : w.y0;
      break;
    }
    case 1: {
      const double centre = uniform(rng);
      const double half = 1e-3 * (w.y1 - w.y0);
      std::uniform_real_distribution<double> near(std::max(w.y0, centre - half),
                                                  std::min(w.y1, centre + half));
      for (double& y : values) y = near(rng);
      break;
    }
    default:
      for (double& y : values) y = uniform(rng);
  }
  return values;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
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

void validate_config(const TrialConfig& config) {
  if (config.trials == 0) throw InvalidArgumentError("trials must be >= 1");
  if (config.n_min == 0 || config.n_min > config.n_max) {
    throw InvalidArgumentError("series length range must satisfy 1 <= n_min <= n_max");
  }
  if (!(config.window.y0 < config.window.y1)) {
    throw InvalidArgumentError("window needs y0 < y1");
  }
  if (config.leverage_set.empty()) throw InvalidArgumentError("leverage set is empty");
}

bool linear_holds(double exact, const LinearBound& linear) {
  return linear.direction == BoundDirection::Upper
             ? exact <= linear.value + kViolationSlack
             : exact >= linear.value - kViolationSlack;
}

void format_field(std::string& out, const std::optional<double>& v) {
  if (!v) return;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", *v == 0.0 ? 0.0 : *v);
  out += buf;
}

}  // namespace

LogReturnSeries random_series(const BoundWindow& window, std::size_t n, std::uint64_t seed) {
  if (!(window.y0 < window.y1)) throw InvalidArgumentError("window needs y0 < y1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(window.y0, window.y1);
  std::vector<double> values(n);
  for (double& y : values) y = uniform(rng);
  return LogReturnSeries(std::move(values));
}

std::optional<LogReturnSeries> two_point_series(const BoundWindow& window, double m1,
                                                double s, std::size_t n,
                                                TwoPointAnchor anchor) {
  const double y0 = window.y0, y1 = window.y1;
  if (n == 0 || !(y0 <= m1 && m1 <= y1) || !(s >= 0.0)) return std::nullopt;
  if (s == 0.0) return LogReturnSeries(std::vector<double>(n, m1));
  if (n < 2 || s * s > (y1 - m1) * (m1 - y0) * (1.0 + 1e-12)) return std::nullopt;

  // p = share of the lower value u; u >= y0 iff p >= p_lo, v <= y1 iff p <= p_hi.
  const double below = m1 - y0, above = y1 - m1;
  const double p_lo = s * s / (s * s + below * below);
  const double p_hi = above * above / (s * s + above * above);
  const double nd = static_cast<double>(n);
  const auto k_lo = static_cast<long long>(std::max(1.0, std::ceil(p_lo * nd - 1e-9)));
  const auto k_hi = static_cast<long long>(std::min(nd - 1.0, std::floor(p_hi * nd + 1e-9)));
  if (k_lo > k_hi) return std::nullopt;
  const long long k = anchor == TwoPointAnchor::Low ? k_lo : k_hi;

  const double p = static_cast<double>(k) / nd;
  const double u = std::clamp(m1 - s * std::sqrt((1.0 - p) / p), y0, y1);
  const double v = std::clamp(m1 + s * std::sqrt(p / (1.0 - p)), y0, y1);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool low = (static_cast<long long>(i + 1) * k) / static_cast<long long>(n) >
                     (static_cast<long long>(i) * k) / static_cast<long long>(n);
    values[i] = low ? u : v;
  }
  return LogReturnSeries(std::move(values));
}

void VerifyReport::add(TrialRecord record) {
  record.trial = rows_.size();
  rows_.push_back(std::move(record));
}

void VerifyReport::append(const VerifyReport& other) {
  for (const TrialRecord& r : other.rows_) add(r);
  probes_above_threshold += other.probes_above_threshold;
  failures_above_threshold += other.failures_above_threshold;
  queries_checked += other.queries_checked;
}

std::size_t VerifyReport::violations() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(), [](const TrialRecord& r) { return r.violation; }));
}

std::string VerifyReport::to_csv() const {
  std::string out = "trial,regime,L,L0,n,m1,s,lower,exact,upper,violation\n";
  for (const TrialRecord& r : rows_) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.regime;
    out += ',';
    format_field(out, r.leverage);
    out += ',';
    format_field(out, r.target);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    format_field(out, r.m1);
    out += ',';
    format_field(out, r.s);
    out += ',';
    format_field(out, r.lower);
    out += ',';
    format_field(out, r.exact);
    out += ',';
    format_field(out, r.upper);
    out += r.violation ? ",1\n" : ",0\n";
  }
  return out;
}

VerifyReport check_sandwich(const TrialConfig& config) {
  validate_config(config);
  std::vector<TrialRecord> records(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    std::mt19937_64 rng = trial_engine(config.seed, trial, 0x5a17u);
    const double L = pick(config.leverage_set, rng);
    std::uniform_int_distribution<std::size_t> length(config.n_min, config.n_max);
    const std::size_t n = length(rng);
    const std::vector<double> values = trial_values(config.window, n, trial, rng);
    const SeriesStats stats = summarize(values);
    const double exact = exact_leveraged_logreturn(L, values);
    const BoundResult bounds = bound_interval(L, config.window, stats, n);

    TrialRecord& r = records[trial];
    r.regime = std::string(to_string(bounds.regime));
    r.leverage = L;
    r.n = n;
    r.m1 = stats.m1;
    r.s = stats.s;
    r.lower = bounds.lower;
    r.exact = exact;
    r.upper = bounds.upper;
    const bool sandwiched = bounds.lower - kViolationSlack <= exact &&
                            exact <= bounds.upper + kViolationSlack;
    r.violation = !sandwiched || !linear_holds(exact, linear_bound(L, n, stats.m1));
  });
  VerifyReport report;
  for (TrialRecord& r : records) report.add(std::move(r));
  return report;
}

VerifyReport check_linear_bound(const TrialConfig& config) {
  validate_config(config);
  VerifyReport report;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    std::mt19937_64 rng = trial_engine(config.seed, trial, 0x11eau);
    const double L = pick(config.leverage_set, rng);
    std::uniform_int_distribution<std::size_t> length(config.n_min, config.n_max);
    const std::size_t n = length(rng);
    const std::vector<double> values = trial_values(config.window, n, trial, rng);
    const SeriesStats stats = summarize(values);
    const double exact = exact_leveraged_logreturn(L, values);
    const LinearBound linear = linear_bound(L, n, stats.m1);

    TrialRecord r;
    r.regime = std::string(to_string(classify_regime(L, config.window)));
    r.leverage = L;
    r.n = n;
    r.m1 = stats.m1;
    r.s = stats.s;
    r.exact = exact;
    (linear.direction == BoundDirection::Upper ? r.upper : r.lower) = linear.value;
    r.violation = !linear_holds(exact, linear);
    report.add(std::move(r));
  }
  return report;
}

VerifyReport check_threshold_implications(const TrialConfig& config) {
  validate_config(config);
  VerifyReport report;
  const BoundWindow& w = config.window;
  std::uint64_t query_index = 0;

  for (double L : config.leverage_set) {
    // Underperformance compares against the index itself, with no fee.
    const bool fraction = L > 0.0 && L < 1.0;
    const std::vector<double> targets = fraction ? std::vector<double>{1.0} : config.target_set;
    const std::vector<double> fees = fraction ? std::vector<double>{0.0} : config.expense_set;
    for (double L0 : targets) {
      for (double r : fees) {
        for (int periods : config.periods_per_year_set) {
          for (double annual_m1 : config.annual_m1_set) {
            ThresholdCase which;
            std::string label;
            if (L > 1.0 && L0 <= L) {
              which = ThresholdCase::OutperformAboveOne;
            } else if (L < 0.0 && L <= L0 && L0 < 0.0) {
              which = ThresholdCase::OutperformNegative;
            } else if (fraction && w.y1 < std::log(1.0 / L - 1.0)) {
              which = ThresholdCase::UnderperformLow;
            } else if (fraction && w.y0 > std::log(1.0 / L - 1.0)) {
              which = ThresholdCase::UnderperformHigh;
            } else {
              continue;
            }
            const ThresholdQuery query =
                ThresholdQuery::from_annual({L, L0, r}, w, annual_m1, periods);
            const SThreshold threshold = s_threshold(which, query);
            ++query_index;
            if (!threshold.s_max || !w.contains(query.m1)) continue;
            const double s_max = *threshold.s_max;
            ++report.queries_checked;
            const bool outperform = which == ThresholdCase::OutperformAboveOne ||
                                    which == ThresholdCase::OutperformNegative;

            auto goal_holds = [&](const LogReturnSeries& series, TrialRecord& rec) {
              const SeriesStats stats = summarize(series);
              const double gross = exact_leveraged_logreturn(L, series);
              const double n = static_cast<double>(series.size());
              rec.regime = "CASE_" + std::string(to_string(which));
              rec.leverage = L;
              rec.n = series.size();
              rec.m1 = stats.m1;
              rec.s = stats.s;
              if (outperform) {
                rec.target = L0;
                rec.lower = L0 * n * stats.m1;
                rec.exact = net_logreturn(gross, series.size(), r * 252.0 / periods);
                return *rec.exact >= *rec.lower - kViolationSlack;
              }
              rec.target = 1.0;
              rec.exact = gross;
              rec.upper = n * stats.m1;
              return *rec.exact <= *rec.upper + kViolationSlack;
            };

            auto record = [&](const LogReturnSeries& series) {
              TrialRecord rec;
              rec.violation = !goal_holds(series, rec);
              report.add(std::move(rec));
            };

            for (double scale : {1.0, 0.5, 0.0}) {
              for (TwoPointAnchor anchor : {TwoPointAnchor::Low, TwoPointAnchor::High}) {
                if (auto series = two_point_series(w, query.m1, scale * s_max, config.n_max, anchor)) {
                  record(*series);
                }
              }
            }

            std::mt19937_64 rng = trial_engine(config.seed, query_index, 0x7e57u);
            std::uniform_int_distribution<std::size_t> length(std::max<std::size_t>(config.n_min, 2),
                                                              std::max<std::size_t>(config.n_max, 2));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            for (std::size_t t = 0; t < config.trials; ++t) {
              const std::size_t n = length(rng);
              std::vector<double> z(n);
              for (double& v : z) v = unit(rng);
              const SeriesStats zs = summarize(z);
              if (!(zs.s > 0.0)) continue;
              const double target_s = s_max * (1.0 - unit(rng));
              for (double& v : z) v = query.m1 + target_s * (v - zs.m1) / zs.s;
              if (!std::all_of(z.begin(), z.end(), [&](double v) { return w.contains(v); })) continue;
              record(LogReturnSeries(std::move(z)));
            }

            // Slightly above the certificate: informational only.
            if (auto series = two_point_series(w, query.m1, 1.05 * s_max + 1e-6, config.n_max)) {
              TrialRecord rec;
              ++report.probes_above_threshold;
              if (!goal_holds(*series, rec)) ++report.failures_above_threshold;
            }
          }
        }
      }
    }
  }
  return report;
}

std::vector<TrialConfig> default_sandwich_configs(std::uint64_t seed, std::size_t trials) {
  const BoundWindow wide{std::log(0.8), std::log(1.2)};
  const BoundWindow inverse{std::log(0.85), std::log(1.15)};
  std::vector<TrialConfig> configs;
  auto make = [&](BoundWindow w, std::vector<double> leverages, std::size_t count,
                  std::uint64_t salt) {
    TrialConfig c;
    c.seed = seed * 1000003ULL + salt;
    c.trials = count;
    c.window = w;
    c.leverage_set = std::move(leverages);
    configs.push_back(std::move(c));
  };
  make(wide, {1.5, 2.0, 3.0}, trials, 1);
  make(wide, {0.1, 0.25, 0.4, 0.45}, trials, 2);
  make(wide, {0.6, 0.75, 0.9, 0.99}, trials, 3);
  make(inverse, {-1.0, -2.0, -3.0}, trials, 4);
  make(wide, {1.0}, std::max<std::size_t>(1, trials / 100), 5);
  return configs;
}

std::vector<TrialConfig> default_implication_configs(std::uint64_t seed) {
  const BoundWindow wide{std::log(0.8), std::log(1.2)};
  const BoundWindow inverse{std::log(0.85), std::log(1.15)};
  std::vector<TrialConfig> configs;
  auto base = [&](BoundWindow w, std::uint64_t salt) {
    TrialConfig c;
    c.seed = seed * 1000003ULL + 100 + salt;
    c.trials = 25;
    c.n_min = 20;
    c.n_max = 252;
    c.window = w;
    return c;
  };

  TrialConfig case_i = base(wide, 1);
  case_i.leverage_set = {2.0, 3.0};
  case_i.target_set = {0.0, 1.0, 1.5};
  case_i.expense_set = {0.0, 0.0095};
  case_i.annual_m1_set = {0.02, 0.05, 0.08, 0.1, 0.15, 0.2};
  configs.push_back(case_i);

  TrialConfig case_ii = base(inverse, 2);
  case_ii.leverage_set = {-2.0, -3.0};
  case_ii.target_set = {-1.0, -1.5};
  case_ii.expense_set = {0.0, 0.0095};
  case_ii.annual_m1_set = {-0.6, -0.42, -0.3, -0.2, -0.1, -0.05};
  configs.push_back(case_ii);

  TrialConfig under = base(wide, 3);
  under.leverage_set = {0.05, 0.2, 0.3, 0.4, 0.6, 0.8, 0.9, 0.99};
  under.annual_m1_set = {0.0, 0.0658, 0.15};
  under.periods_per_year_set = {252, 52, 12, 4, 2, 1};
  under.n_min = 20;
  under.n_max = 120;
  configs.push_back(under);
  return configs;
}

VerifyReport run_default_suite(std::uint64_t seed, std::size_t trials) {
  if (trials == 0) throw InvalidArgumentError("trials must be >= 1");
  VerifyReport report;
  for (const TrialConfig& c : default_sandwich_configs(seed, trials)) {
    report.append(check_sandwich(c));
  }
  for (const TrialConfig& c : default_implication_configs(seed)) {
    report.append(check_threshold_implications(c));
  }
  return report;
}

}  // namespace levbound
