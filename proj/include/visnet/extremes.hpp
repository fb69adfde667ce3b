#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "visnet/indicator.hpp"
#include "visnet/series.hpp"

namespace visnet {

// Realized peaks or troughs: days whose value is the window extreme over
// `before` days back and `after` days ahead. Positions are 0-based, sorted,
// duplicate-free; only days with the full window inside the series qualify.
struct ExtremeSet {
  ExtremeKind kind = ExtremeKind::Peak;
  std::size_t before = 0;
  std::size_t after = 0;
  std::vector<std::size_t> positions;
};

// Windowed max/min detection with the earliest index kept on plateaus of
// equal extreme values. Throws DataError when before < 1, after < 1, or the
// series is not longer than before + after.
ExtremeSet detect_extremes(std::span<const double> y, ExtremeKind kind,
                           std::size_t before, std::size_t after);

// `day_index,date,price,kind` rows for one or two extreme sets.
void write_extremes_csv(std::span<const ExtremeSet> sets, const PriceSeries& series,
                        const std::filesystem::path& path, bool timestamp = true);

}  // namespace visnet
