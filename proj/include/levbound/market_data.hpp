#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "levbound/core_model.hpp"

namespace levbound {

using Date = std::chrono::year_month_day;

/// "YYYY-MM-DD"; throws ParseError otherwise.
Date parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

/// Adjusted closes on strictly increasing dates, all > 0.
class PriceSeries {
 public:
  PriceSeries() = default;
  /// Throws InvalidArgumentError on length mismatch, OrderError on
  /// non-increasing dates and ValueError on non-positive closes.
  PriceSeries(std::vector<Date> dates, std::vector<double> closes);

  std::span<const Date> dates() const noexcept { return dates_; }
  std::span<const double> closes() const noexcept { return closes_; }
  std::size_t size() const noexcept { return closes_.size(); }
  bool empty() const noexcept { return closes_.empty(); }

 private:
  std::vector<Date> dates_;
  std::vector<double> closes_;
};

/// Reads a `date,adjusted_close` file. ParseError carries line and field,
/// OrderError and ValueError name the offending line.
PriceSeries load_price_csv(const std::filesystem::path& path);
PriceSeries parse_price_csv(std::istream& in);
void write_price_csv(std::ostream& out, const PriceSeries& series);

/// Y_i = log(C_i / C_{i-1}). Throws TooShortError for fewer than 2 closes.
LogReturnSeries log_returns(const PriceSeries& series);

/// Population moments. m2 is formed as m1^2 + s^2, so m2 >= m1^2 holds
/// exactly and a constant series has s = 0 and m1 equal to its value.
SeriesStats summarize(std::span<const double> values);
SeriesStats summarize(const LogReturnSeries& series);

enum class Schedule { Daily, Weekly, Monthly, Quarterly, SemiAnnual, Annual };

struct SchedulePlan {
  Schedule schedule = Schedule::Daily;
  int periods_per_year = 252;
};

SchedulePlan plan_for(Schedule schedule);
/// daily, weekly, monthly, quarterly, semiannual, annual.
Schedule parse_schedule(std::string_view name);
std::string_view to_string(Schedule schedule);
inline constexpr Schedule kAllSchedules[] = {
    Schedule::Daily,     Schedule::Weekly,     Schedule::Monthly,
    Schedule::Quarterly, Schedule::SemiAnnual, Schedule::Annual};

/// Last close of each ISO week, calendar month, quarter, half-year or year.
PriceSeries subsample(const PriceSeries& series, const SchedulePlan& plan);

struct ShillerRecord {
  int year = 0;
  double price = 0.0;     ///< P: average monthly close of the index
  double dividend = 0.0;  ///< D: dividend per share
  double cpi = 0.0;       ///< J: January consumer price index
};

/// Reads a `year,P,D,J` file; P > 0, J > 0, D >= 0.
std::vector<ShillerRecord> load_shiller_csv(const std::filesystem::path& path);
std::vector<ShillerRecord> parse_shiller_csv(std::istream& in);

/// log(((P_{k+1} + D_k) / P_k) (J_k / J_{k+1})) for each consecutive pair.
/// Throws YearGapError on a missing year, TooShortError below 2 records.
std::vector<double> shiller_real_log_returns(std::span<const ShillerRecord> records);

}  // namespace levbound
