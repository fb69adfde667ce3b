#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "visnet/extremes.hpp"
#include "visnet/indicator.hpp"

namespace visnet {

struct ErrorDiagramPoint {
  double threshold;             // indicator value that produced this point
  double alarm_fraction;        // alarm days / prediction days, in [0, 1]
  double unpredicted_fraction;  // unpredicted extremes / total extremes, in [0, 1]
};

// Threshold-descent curve. Points are recorded only when lowering the
// threshold predicts at least one new extreme, so alarm_fraction strictly
// increases and unpredicted_fraction strictly decreases along the list; the
// last point always has unpredicted_fraction 0. The implied curve starts at
// (0, 1).
struct ErrorDiagram {
  ExtremeKind kind = ExtremeKind::Peak;
  std::size_t scope = 0;
  std::size_t before = 0;
  std::size_t after = 0;
  std::size_t horizon = 0;
  std::size_t series_length = 0;
  std::size_t prediction_days = 0;  // series_length - scope - after
  std::size_t total_extremes = 0;   // extremes inside the evaluation domain
  std::vector<ErrorDiagramPoint> points;
};

// Implements the threshold descent over the evaluation domain
// [scope+1, T-after] (day indices): thresholds walk the distinct indicator
// values downward; a day alarms when its value is at or above the threshold;
// an extreme at e counts as predicted once some alarm day d satisfies
// d <= e <= d + horizon. Extremes outside the domain are dropped from the
// total. Throws DataError when the domain is empty of extremes or the
// series is too short.
ErrorDiagram error_diagram(const IndicatorSeries& indicator, const ExtremeSet& extremes,
                           std::size_t after, std::size_t horizon = 0);

// Area under the right-continuous staircase extension of the curve within
// the unit square: (0, 1) to the first point, each unpredicted_fraction held
// until the next alarm_fraction, and on to alarm_fraction 1. Smaller means
// stronger predictive power; a random indicator averages 0.5.
double p_value(const ErrorDiagram& diagram);

// Trapezoidal variant over the same completed curve, reported alongside the
// staircase value as an integration-convention diagnostic.
double p_value_trapezoid(const ErrorDiagram& diagram);

// Mean staircase p-value over `trials` random permutations of the indicator
// values across the evaluation domain. Deterministic per seed.
double shuffled_null_p_value(const IndicatorSeries& indicator, const ExtremeSet& extremes,
                             std::size_t after, std::size_t horizon, std::uint64_t seed,
                             unsigned trials);

// Box-plot statistics: inclusive linear-interpolation quartiles, whiskers at
// the most extreme data within 1.5 IQR of the quartile box, and everything
// outside listed as an outlier.
struct QuartileSummary {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

QuartileSummary quartile_summary(std::vector<double> values);  // throws on empty

struct SweepCell {
  std::size_t scope = 0;
  std::size_t after = 0;
  std::size_t before = 0;
  double p = 0.0;     // meaningful only when valid
  bool valid = false;
};

// P-values over the (S, a, b) grid, cells ordered S-major, then a, then b.
// Cells whose parameters do not fit the series (or leave no extreme in the
// evaluation domain) are marked invalid and excluded from the statistics.
struct SweepResult {
  ExtremeKind kind = ExtremeKind::Peak;
  std::vector<std::size_t> scope_grid;
  std::vector<std::size_t> after_grid;
  std::vector<std::size_t> before_grid;
  std::vector<SweepCell> cells;
  std::size_t invalid = 0;
  QuartileSummary stats;
};

// The 1000-combination default: S = 200,230,...,470; a,b = 30,45,...,165.
std::vector<std::size_t> default_scope_grid();
std::vector<std::size_t> default_window_grid();

SweepResult parameter_sweep(std::span<const double> y, std::span<const std::size_t> scopes,
                            std::span<const std::size_t> afters,
                            std::span<const std::size_t> befores, ExtremeKind kind,
                            std::size_t horizon = 0, unsigned jobs = 1);

void write_error_diagram_csv(const ErrorDiagram& diagram, const std::filesystem::path& path,
                             bool timestamp = true);

// `S,a,b,p_value` rows (nan for invalid cells) plus an invalid-count comment.
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path,
                     bool timestamp = true);

void write_stats_json(const QuartileSummary& stats, const std::filesystem::path& path);

}  // namespace visnet
