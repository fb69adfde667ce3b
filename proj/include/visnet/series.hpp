#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace visnet {

// Calendar date, informational only; the time axis of every computation is
// the trading-day ordinal (non-trading days are absent from the data).
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  std::string iso() const;
  static Date parse_iso(std::string_view text);  // throws DataError
  Date next_day() const;
};

struct PricePoint {
  std::size_t day_index;  // 1-based, consecutive
  Date date;
  double price;
};

// Daily price series over consecutive trading-day ordinals, with the natural
// log of each price precomputed. Immutable after construction.
class PriceSeries {
public:
  // Throws DataError unless all prices are positive, dates strictly ascend,
  // and there are at least two points.
  PriceSeries(std::vector<Date> dates, std::vector<double> prices, std::string label);

  std::size_t size() const { return prices_.size(); }
  const std::string& label() const { return label_; }

  std::size_t day_index(std::size_t pos) const { return pos + 1; }
  const Date& date(std::size_t pos) const { return dates_[pos]; }
  double price(std::size_t pos) const { return prices_[pos]; }
  double log_price(std::size_t pos) const { return log_prices_[pos]; }

  std::span<const double> prices() const { return prices_; }
  std::span<const double> log_prices() const { return log_prices_; }

  // y-axis used by the network construction: log-prices by default, raw
  // closes when use_log is false.
  std::span<const double> values(bool use_log = true) const {
    return use_log ? log_prices() : prices();
  }

private:
  std::vector<Date> dates_;
  std::vector<double> prices_;
  std::vector<double> log_prices_;
  std::string label_;
};

// Loads a header-first CSV with a date column (ISO-8601) and a price column.
// Rows must carry positive prices and strictly ascending dates; violations
// are reported with their 1-based data-row number. Throws DataError.
PriceSeries load_csv(const std::filesystem::path& path,
                     std::string_view price_column = "close",
                     std::string_view date_column = "date");

// Writes `day_index,date,price,log_price` rows. Prices round-trip exactly
// through write_series_csv/load_csv.
void write_series_csv(const PriceSeries& series, const std::filesystem::path& path,
                      bool timestamp = true);

}  // namespace visnet
