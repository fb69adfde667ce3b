#include "visnet/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "visnet/csv.hpp"
#include "visnet/errors.hpp"

namespace visnet {
namespace {

bool is_leap(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) {
    return 29;
  }
  return kDays[month - 1];
}

int parse_int(std::string_view s) {
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      return -1;
    }
    v = v * 10 + (c - '0');
  }
  return s.empty() ? -1 : v;
}

}  // namespace

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Date Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw DataError("invalid ISO-8601 date '" + std::string(text) + "'");
  }
  Date d;
  d.year = parse_int(text.substr(0, 4));
  d.month = parse_int(text.substr(5, 2));
  d.day = parse_int(text.substr(8, 2));
  if (d.year < 0 || d.month < 1 || d.month > 12 || d.day < 1 ||
      d.day > days_in_month(d.year, d.month)) {
    throw DataError("invalid ISO-8601 date '" + std::string(text) + "'");
  }
  return d;
}

Date Date::next_day() const {
  Date d = *this;
  if (++d.day > days_in_month(d.year, d.month)) {
    d.day = 1;
    if (++d.month > 12) {
      d.month = 1;
      ++d.year;
    }
  }
  return d;
}

PriceSeries::PriceSeries(std::vector<Date> dates, std::vector<double> prices, std::string label)
    : dates_(std::move(dates)), prices_(std::move(prices)), label_(std::move(label)) {
  if (prices_.size() != dates_.size()) {
    throw DataError("price series: dates and prices differ in length");
  }
  if (prices_.size() < 2) {
    throw DataError("price series: need at least 2 points, got " +
                    std::to_string(prices_.size()));
  }
  log_prices_.reserve(prices_.size());
  for (std::size_t pos = 0; pos < prices_.size(); ++pos) {
    const double p = prices_[pos];
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw DataError("price series: nonpositive price at row " + std::to_string(pos + 1));
    }
    if (pos > 0 && !(dates_[pos - 1] < dates_[pos])) {
      throw DataError("price series: dates not strictly ascending at row " +
                      std::to_string(pos + 1));
    }
    log_prices_.push_back(std::log(p));
  }
}

PriceSeries load_csv(const std::filesystem::path& path, std::string_view price_column,
                     std::string_view date_column) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path.string() + "'");
  }

  std::string line;
  std::size_t header_cols = 0;
  std::ptrdiff_t price_idx = -1;
  std::ptrdiff_t date_idx = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto fields = csv::split_fields(line);
    header_cols = fields.size();
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == price_column) {
        price_idx = static_cast<std::ptrdiff_t>(c);
      }
      if (fields[c] == date_column) {
        date_idx = static_cast<std::ptrdiff_t>(c);
      }
    }
    break;
  }
  if (header_cols == 0) {
    throw DataError("'" + path.string() + "': missing header row");
  }
  if (price_idx < 0) {
    throw DataError("'" + path.string() + "': missing column '" + std::string(price_column) + "'");
  }
  if (date_idx < 0) {
    throw DataError("'" + path.string() + "': missing column '" + std::string(date_column) + "'");
  }

  std::vector<Date> dates;
  std::vector<double> prices;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    ++row;
    const auto fields = csv::split_fields(line);
    if (fields.size() != header_cols) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header_cols));
    }
    const auto price = csv::parse_double(fields[static_cast<std::size_t>(price_idx)]);
    if (!price) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) +
                      ": unparsable price '" +
                      std::string(fields[static_cast<std::size_t>(price_idx)]) + "'");
    }
    if (!(*price > 0.0)) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) +
                      ": price must be positive, got " + csv::format_double(*price));
    }
    Date date;
    try {
      date = Date::parse_iso(fields[static_cast<std::size_t>(date_idx)]);
    } catch (const DataError& e) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) + ": " + e.what());
    }
    if (!dates.empty() && !(dates.back() < date)) {
      throw DataError("'" + path.string() + "': row " + std::to_string(row) +
                      ": date " + date.iso() + " does not ascend past " + dates.back().iso());
    }
    dates.push_back(date);
    prices.push_back(*price);
  }

  if (prices.size() < 2) {
    throw DataError("'" + path.string() + "': need at least 2 data rows, got " +
                    std::to_string(prices.size()));
  }
  return PriceSeries(std::move(dates), std::move(prices), path.stem().string());
}

void write_series_csv(const PriceSeries& series, const std::filesystem::path& path,
                      bool timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  if (timestamp) {
    out << csv::timestamp_line();
  }
  out << "day_index,date,price,log_price\n";
  for (std::size_t pos = 0; pos < series.size(); ++pos) {
    out << series.day_index(pos) << ',' << series.date(pos).iso() << ','
        << csv::format_double(series.price(pos)) << ','
        << csv::format_double(series.log_price(pos)) << '\n';
  }
}

}  // namespace visnet
