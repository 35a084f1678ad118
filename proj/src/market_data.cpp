#include "levbound/market_data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "levbound/errors.hpp"

namespace levbound {
namespace {

using namespace std::chrono;

std::string at_line(std::size_t line) { return "line " + std::to_string(line); }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_decimal(std::string_view text, std::size_t line, std::string_view field) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(at_line(line) + ", field " + std::string(field) +
                     ": not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

int parse_integer(std::string_view text, std::size_t line, std::string_view field) {
  int value = 0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(at_line(line) + ", field " + std::string(field) +
                     ": not an integer: '" + std::string(text) + "'");
  }
  return value;
}

// Reads non-empty lines, stripping a trailing CR. Returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

void expect_header(std::istream& in, std::string_view header, std::size_t& number) {
  std::string line;
  if (!next_line(in, line, number)) {
    throw ParseError("empty input: expected header '" + std::string(header) + "'");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != header) {
    throw ParseError(at_line(number) + ": expected header '" + std::string(header) +
                     "', got '" + line + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

long long period_key(const Date& date, Schedule schedule) {
  const int y = static_cast<int>(date.year());
  const int m = static_cast<int>(static_cast<unsigned>(date.month())) - 1;
  switch (schedule) {
    case Schedule::Daily:
      return sys_days(date).time_since_epoch().count();
    case Schedule::Weekly: {
      const sys_days day(date);
      const unsigned iso = weekday(day).iso_encoding();
      return (day - days(iso - 1)).time_since_epoch().count();
    }
    case Schedule::Monthly: return y * 12LL + m;
    case Schedule::Quarterly: return y * 4LL + m / 3;
    case Schedule::SemiAnnual: return y * 2LL + m / 6;
    case Schedule::Annual: return y;
  }
  return 0;
}

}  // namespace

Date parse_iso_date(std::string_view text) {
  auto bad = [&] { return ParseError("not an ISO-8601 date: '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  auto number = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    const char* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc() || ptr != first + len) throw bad();
    return v;
  };
  const Date date{year{number(0, 4)}, month{static_cast<unsigned>(number(5, 2))},
                  day{static_cast<unsigned>(number(8, 2))}};
  if (!date.ok()) throw bad();
  return date;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

PriceSeries::PriceSeries(std::vector<Date> dates, std::vector<double> closes)
    : dates_(std::move(dates)), closes_(std::move(closes)) {
  if (dates_.size() != closes_.size()) {
    throw InvalidArgumentError("dates and closes differ in length");
  }
  for (std::size_t i = 0; i < closes_.size(); ++i) {
    if (!(closes_[i] > 0.0) || !std::isfinite(closes_[i])) {
      throw ValueError("row " + std::to_string(i) + ": close must be positive");
    }
    if (i > 0 && !(dates_[i - 1] < dates_[i])) {
      throw OrderError("row " + std::to_string(i) + ": date " +
                       format_iso_date(dates_[i]) + " does not follow " +
                       format_iso_date(dates_[i - 1]));
    }
  }
}

PriceSeries parse_price_csv(std::istream& in) {
  std::size_t number = 0;
  expect_header(in, "date,adjusted_close", number);
  std::vector<Date> dates;
  std::vector<double> closes;
  std::string line;
  while (next_line(in, line, number)) {
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError(at_line(number) + ": expected 2 fields, got " +
                       std::to_string(fields.size()));
    }
    Date date;
    try {
      date = parse_iso_date(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError(at_line(number) + ", field date: " + e.what());
    }
    const double close = parse_decimal(fields[1], number, "adjusted_close");
    if (!(close > 0.0)) {
      throw ValueError(at_line(number) + ": adjusted_close must be positive, got " +
                       std::string(fields[1]));
    }
    if (!dates.empty() && !(dates.back() < date)) {
      throw OrderError(at_line(number) + ": date " + std::string(fields[0]) +
                       " does not follow " + format_iso_date(dates.back()));
    }
    dates.push_back(date);
    closes.push_back(close);
  }
  return PriceSeries(std::move(dates), std::move(closes));
}

PriceSeries load_price_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_price_csv(in);
}

void write_price_csv(std::ostream& out, const PriceSeries& series) {
  out << "date,adjusted_close\n";
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", series.closes()[i]);
    out << format_iso_date(series.dates()[i]) << ',' << buf << '\n';
  }
}

LogReturnSeries log_returns(const PriceSeries& series) {
  if (series.size() < 2) {
    throw TooShortError("log-returns need at least 2 closes, got " +
                        std::to_string(series.size()));
  }
  const auto closes = series.closes();
  std::vector<double> values(closes.size() - 1);
  for (std::size_t i = 1; i < closes.size(); ++i) {
    values[i - 1] = std::log(closes[i] / closes[i - 1]);
  }
  return LogReturnSeries(std::move(values));
}

SeriesStats summarize(std::span<const double> values) {
  if (values.empty()) throw TooShortError("summary statistics need n >= 1");
  const double n = static_cast<double>(values.size());
  // Deviations from the first value keep a constant series exactly constant.
  const double shift = values.front();
  double sum = 0.0;
  for (double y : values) sum += y - shift;
  double mean = shift + sum / n;
  double residual = 0.0;
  for (double y : values) residual += y - mean;
  mean += residual / n;
  double centered = 0.0;
  for (double y : values) centered += (y - mean) * (y - mean);
  SeriesStats stats;
  stats.n = values.size();
  stats.m1 = mean;
  stats.s = std::sqrt(centered / n);
  stats.m2 = mean * mean + centered / n;
  return stats;
}

SeriesStats summarize(const LogReturnSeries& series) { return summarize(series.values()); }

SchedulePlan plan_for(Schedule schedule) {
  switch (schedule) {
    case Schedule::Daily: return {schedule, 252};
    case Schedule::Weekly: return {schedule, 52};
    case Schedule::Monthly: return {schedule, 12};
    case Schedule::Quarterly: return {schedule, 4};
    case Schedule::SemiAnnual: return {schedule, 2};
    case Schedule::Annual: return {schedule, 1};
  }
  throw InvalidArgumentError("unknown schedule");
}

Schedule parse_schedule(std::string_view name) {
  for (Schedule s : kAllSchedules) {
    if (name == to_string(s)) return s;
  }
  throw InvalidArgumentError("unknown schedule '" + std::string(name) +
                             "' (daily, weekly, monthly, quarterly, semiannual, annual)");
}

std::string_view to_string(Schedule schedule) {
  switch (schedule) {
    case Schedule::Daily: return "daily";
    case Schedule::Weekly: return "weekly";
    case Schedule::Monthly: return "monthly";
    case Schedule::Quarterly: return "quarterly";
    case Schedule::SemiAnnual: return "semiannual";
    case Schedule::Annual: return "annual";
  }
  return "unknown";
}

PriceSeries subsample(const PriceSeries& series, const SchedulePlan& plan) {
  if (plan.schedule == Schedule::Daily || series.empty()) return series;
  const auto dates = series.dates();
  const auto closes = series.closes();
  std::vector<Date> kept_dates;
  std::vector<double> kept_closes;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const bool period_ends = i + 1 == series.size() ||
                             period_key(dates[i], plan.schedule) !=
                                 period_key(dates[i + 1], plan.schedule);
    if (period_ends) {
      kept_dates.push_back(dates[i]);
      kept_closes.push_back(closes[i]);
    }
  }
  return PriceSeries(std::move(kept_dates), std::move(kept_closes));
}

std::vector<ShillerRecord> parse_shiller_csv(std::istream& in) {
  std::size_t number = 0;
  expect_header(in, "year,P,D,J", number);
  std::vector<ShillerRecord> records;
  std::string line;
  while (next_line(in, line, number)) {
    const auto fields = split_fields(line);
    if (fields.size() != 4) {
      throw ParseError(at_line(number) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    }
    ShillerRecord r;
    r.year = parse_integer(fields[0], number, "year");
    r.price = parse_decimal(fields[1], number, "P");
    r.dividend = parse_decimal(fields[2], number, "D");
    r.cpi = parse_decimal(fields[3], number, "J");
    if (!(r.price > 0.0) || !(r.cpi > 0.0) || r.dividend < 0.0) {
      throw ValueError(at_line(number) + ": need P > 0, J > 0 and D >= 0");
    }
    records.push_back(r);
  }
  return records;
}

std::vector<ShillerRecord> load_shiller_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_shiller_csv(in);
}

std::vector<double> shiller_real_log_returns(std::span<const ShillerRecord> records) {
  if (records.size() < 2) {
    throw TooShortError("real returns need at least 2 annual records");
  }
  std::vector<double> out;
  out.reserve(records.size() - 1);
  for (std::size_t k = 0; k + 1 < records.size(); ++k) {
    const ShillerRecord& now = records[k];
    const ShillerRecord& next = records[k + 1];
    if (next.year != now.year + 1) {
      throw YearGapError("year " + std::to_string(now.year) + " is followed by " +
                         std::to_string(next.year));
    }
    out.push_back(std::log((next.price + now.dividend) / now.price) +
                  std::log(now.cpi / next.cpi));
  }
  return out;
}

}  // namespace levbound
