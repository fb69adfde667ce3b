#include "visnet/indicator.hpp"

#include <fstream>
#include <utility>

#include "visnet/csv.hpp"
#include "visnet/errors.hpp"
#include "visnet/kernels.hpp"
#include "visnet/parallel.hpp"

namespace visnet {

std::string_view to_string(ExtremeKind kind) {
  return kind == ExtremeKind::Peak ? "peak" : "trough";
}

IndicatorSeries::IndicatorSeries(ExtremeKind kind, std::size_t scope, std::string source,
                                 std::vector<double> values)
    : kind_(kind), scope_(scope), source_(std::move(source)), values_(std::move(values)) {
  if (scope_ < 2) {
    throw DataError("indicator: scope must be at least 2");
  }
  if (values_.empty()) {
    throw DataError("indicator: no defined values (series no longer than scope)");
  }
}

IndicatorSeries compute_indicator(ExtremeKind kind, std::span<const double> y,
                                  std::size_t scope, std::string source, unsigned jobs) {
  if (scope < 2) {
    throw DataError("indicator: scope must be at least 2, got " + std::to_string(scope));
  }
  if (y.size() <= scope) {
    throw DataError("indicator: series length " + std::to_string(y.size()) +
                    " does not exceed scope " + std::to_string(scope));
  }
  const auto link = kind == ExtremeKind::Peak ? LinkKind::Visibility
                                              : LinkKind::AbsoluteInvisibility;
  const auto filter = kind == ExtremeKind::Peak ? DirectionFilter::RequireLowerLeft
                                                : DirectionFilter::RequireHigherLeft;
  const double scope_days = static_cast<double>(scope);

  std::vector<double> values(y.size() - scope);
  parallel_for(values.size(), jobs, [&](std::size_t t) {
    const int degree = left_degree_scan(y, scope + t, scope, link, filter);
    values[t] = static_cast<double>(degree) / scope_days;
  });
  return IndicatorSeries(kind, scope, std::move(source), std::move(values));
}

IndicatorSeries peak_indicator(std::span<const double> y, std::size_t scope,
                               std::string source, unsigned jobs) {
  return compute_indicator(ExtremeKind::Peak, y, scope, std::move(source), jobs);
}

IndicatorSeries trough_indicator(std::span<const double> y, std::size_t scope,
                                 std::string source, unsigned jobs) {
  return compute_indicator(ExtremeKind::Trough, y, scope, std::move(source), jobs);
}

void write_indicator_csv(const IndicatorSeries& indicator, const PriceSeries& series,
                         const std::filesystem::path& path, bool timestamp) {
  if (series.size() != indicator.series_length()) {
    throw DataError("indicator csv: series and indicator lengths disagree");
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  if (timestamp) {
    out << csv::timestamp_line();
  }
  out << "# kind=" << to_string(indicator.kind()) << " scope=" << indicator.scope()
      << " source=" << indicator.source() << '\n';
  out << "day_index,date,indicator_value\n";
  for (std::size_t pos = indicator.first_position(); pos < series.size(); ++pos) {
    out << series.day_index(pos) << ',' << series.date(pos).iso() << ','
        << csv::format_double(indicator.at(pos)) << '\n';
  }
}

}  // namespace visnet
