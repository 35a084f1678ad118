#include "levbound/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "levbound/bounds_engine.hpp"
#include "levbound/errors.hpp"
#include "levbound/thresholds.hpp"

namespace levbound {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Which certificate applies to (L, L0) for this window, if any.
std::optional<ThresholdCase> certificate_for(double L, double L0, const BoundWindow& w) {
  if (L > 1.0) {
    if (L0 <= L) return ThresholdCase::OutperformAboveOne;
    return std::nullopt;
  }
  if (L < 0.0) {
    if (L <= L0 && L0 < 0.0) return ThresholdCase::OutperformNegative;
    return std::nullopt;
  }
  if (L == 1.0 || L0 != 1.0) return std::nullopt;
  switch (classify_regime(L, w)) {
    case Regime::FractionLow: return ThresholdCase::UnderperformLow;
    case Regime::FractionHigh: return ThresholdCase::UnderperformHigh;
    default: return std::nullopt;
  }
}

}  // namespace

std::vector<BacktestRow> run_backtest(const PriceSeries& prices,
                                      const BacktestOptions& options) {
  LeverageSpec{options.leverage, 1.0, options.expense_ratio}.validate();
  if (options.window_days == 0) throw InvalidArgumentError("window-days must be >= 1");
  if (prices.size() <= options.window_days) {
    throw TooShortError("backtest needs more than " + std::to_string(options.window_days) +
                        " closes, got " + std::to_string(prices.size()));
  }
  const double L = options.leverage;
  const BoundWindow& w = options.window;
  if (!(w.y0 < w.y1)) throw DomainError("window needs y0 < y1");

  std::vector<std::optional<ThresholdCase>> certificates;
  for (double L0 : options.targets) {
    if (!std::isfinite(L0)) throw DomainError("target multiple L0 must be finite");
    auto which = certificate_for(L, L0, w);
    // The hypotheses on the window are checked once, not per row.
    if (which) {
      ThresholdQuery probe;
      probe.spec = {L, L0, options.expense_ratio};
      probe.window = w;
      s_threshold(*which, probe);
    }
    certificates.push_back(which);
  }

  const LogReturnSeries returns = log_returns(prices);
  const auto y = returns.values();
  const std::size_t n = options.window_days;
  std::vector<BacktestRow> rows;
  rows.reserve(y.size() - n + 1);
  for (std::size_t start = 0; start + n <= y.size(); ++start) {
    const auto slice = y.subspan(start, n);
    BacktestRow row;
    row.start = prices.dates()[start];
    row.end = prices.dates()[start + n];
    row.n = n;
    row.stats = summarize(slice);
    row.index_logret = std::log(prices.closes()[start + n] / prices.closes()[start]);
    row.exact_net =
        net_logreturn(exact_leveraged_logreturn(L, slice), n, options.expense_ratio);
    row.in_window = std::all_of(slice.begin(), slice.end(),
                                [&](double v) { return w.contains(v); });
    for (std::size_t t = 0; t < options.targets.size(); ++t) {
      TargetOutcome out;
      out.target = options.targets[t];
      out.target_logret = out.target * row.index_logret;
      out.beats = row.exact_net >= out.target_logret;
      if (certificates[t]) {
        ThresholdQuery query;
        query.spec = {L, out.target, options.expense_ratio};
        query.window = w;
        query.m1 = row.stats.m1;
        const SThreshold th = s_threshold(*certificates[t], query);
        out.condition = row.in_window && th.s_max && row.stats.s <= *th.s_max;
      }
      row.outcomes.push_back(out);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string backtest_csv(const std::vector<BacktestRow>& rows,
                         const BacktestOptions& options) {
  std::string out = "start_date,end_date,n,m1,m2,s,index_logret,exact_net,in_window";
  for (double L0 : options.targets) {
    const std::string tag = num(L0);
    out += ",target_" + tag + ",beats_" + tag + ",condition_" + tag;
  }
  out += '\n';
  for (const BacktestRow& r : rows) {
    out += format_iso_date(r.start) + ',' + format_iso_date(r.end) + ',' +
           std::to_string(r.n) + ',' + num(r.stats.m1) + ',' + num(r.stats.m2) + ',' +
           num(r.stats.s) + ',' + num(r.index_logret) + ',' + num(r.exact_net) + ',' +
           (r.in_window ? "1" : "0");
    for (const TargetOutcome& o : r.outcomes) {
      out += ',' + num(o.target_logret) + ',' + (o.beats ? "1" : "0") + ',';
      out += o.condition ? (*o.condition ? "1" : "0") : "NA";
    }
    out += '\n';
  }
  return out;
}

}  // namespace levbound
