#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "visnet/series.hpp"

namespace visnet {

enum class ExtremeKind {
  Peak,
  Trough,
};

std::string_view to_string(ExtremeKind kind);

// Left-constrained network degree divided by the look-back scope S, one
// value per day after the first S days. Values lie in [0, 1] and are exact
// multiples of 1/S.
class IndicatorSeries {
public:
  IndicatorSeries(ExtremeKind kind, std::size_t scope, std::string source,
                  std::vector<double> values);

  ExtremeKind kind() const { return kind_; }
  std::size_t scope() const { return scope_; }
  const std::string& source() const { return source_; }

  // First 0-based series position with a defined value (= scope).
  std::size_t first_position() const { return scope_; }
  std::size_t series_length() const { return scope_ + values_.size(); }

  bool defined_at(std::size_t pos) const { return pos >= scope_ && pos < series_length(); }
  double at(std::size_t pos) const { return values_[pos - scope_]; }

  std::span<const double> values() const { return values_; }

private:
  ExtremeKind kind_;
  std::size_t scope_;
  std::string source_;
  std::vector<double> values_;  // values_[t] belongs to position scope_ + t
};

// Peak indicator: for each position i >= S, the number of left-window points
// j in [i-S, i-1] with y[i] > y[j] that are visibility-linked to i, divided
// by S. Throws DataError unless y.size() > S >= 2.
IndicatorSeries peak_indicator(std::span<const double> y, std::size_t scope,
                               std::string source = {}, unsigned jobs = 1);

// Trough indicator: mirror image, counting higher left points linked under
// absolute invisibility.
IndicatorSeries trough_indicator(std::span<const double> y, std::size_t scope,
                                 std::string source = {}, unsigned jobs = 1);

IndicatorSeries compute_indicator(ExtremeKind kind, std::span<const double> y,
                                  std::size_t scope, std::string source = {},
                                  unsigned jobs = 1);

// `day_index,date,indicator_value` rows; kind and scope go into a comment
// header. The series supplies the dates.
void write_indicator_csv(const IndicatorSeries& indicator, const PriceSeries& series,
                         const std::filesystem::path& path, bool timestamp = true);

}  // namespace visnet
