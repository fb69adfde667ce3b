#include "visnet/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <random>

#include <json.hpp>

#include "visnet/csv.hpp"
#include "visnet/errors.hpp"
#include "visnet/parallel.hpp"

namespace visnet {
namespace {

// Threshold descent over explicit (value, position) pairs. `values[t]`
// belongs to domain position domain_begin + t; extreme positions must be
// sorted and lie inside the domain.
std::vector<ErrorDiagramPoint> descend(std::span<const double> values,
                                       std::size_t domain_begin,
                                       std::span<const std::size_t> extremes,
                                       std::size_t horizon) {
  const std::size_t n = values.size();
  const std::size_t total = extremes.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) {
      return values[a] > values[b];
    }
    return a < b;
  });

  std::vector<bool> predicted(total, false);
  std::size_t predicted_count = 0;
  std::size_t alarm_days = 0;
  std::size_t emitted_predicted = 0;

  std::vector<ErrorDiagramPoint> points;
  std::size_t idx = 0;
  while (idx < n && predicted_count < total) {
    const double threshold = values[order[idx]];
    // Alarm every day of the equal-value group, then record one point if
    // the group predicted anything new.
    for (; idx < n && values[order[idx]] == threshold; ++idx) {
      const std::size_t day = domain_begin + order[idx];
      ++alarm_days;
      const auto from = std::lower_bound(extremes.begin(), extremes.end(), day);
      for (auto it = from; it != extremes.end() && *it <= day + horizon; ++it) {
        const std::size_t e = static_cast<std::size_t>(it - extremes.begin());
        if (!predicted[e]) {
          predicted[e] = true;
          ++predicted_count;
        }
      }
    }
    if (predicted_count > emitted_predicted) {
      points.push_back({threshold,
                        static_cast<double>(alarm_days) / static_cast<double>(n),
                        static_cast<double>(total - predicted_count) /
                            static_cast<double>(total)});
      emitted_predicted = predicted_count;
    }
  }
  if (predicted_count != total) {
    throw InternalError("error diagram: descent exhausted thresholds before predicting "
                        "every extreme");
  }
  return points;
}

// Days in the evaluation domain [S+1, T-a]; throws when it is empty.
std::size_t domain_length(const IndicatorSeries& indicator, std::size_t after) {
  const std::size_t series_length = indicator.series_length();
  const std::size_t scope = indicator.scope();
  if (series_length <= scope + after) {
    throw DataError("error diagram: series length " + std::to_string(series_length) +
                    " leaves no prediction days for scope " + std::to_string(scope) +
                    " and after-window " + std::to_string(after));
  }
  return series_length - scope - after;
}

ErrorDiagram build_diagram(const IndicatorSeries& indicator, const ExtremeSet& extremes,
                           std::span<const double> domain_values, std::size_t after,
                           std::size_t horizon) {
  const std::size_t series_length = indicator.series_length();
  const std::size_t scope = indicator.scope();
  const std::size_t domain_begin = scope;
  const std::size_t domain_end = series_length - after;  // exclusive

  std::vector<std::size_t> in_domain;
  for (std::size_t pos : extremes.positions) {
    if (pos >= domain_begin && pos < domain_end) {
      in_domain.push_back(pos);
    }
  }
  if (in_domain.empty()) {
    throw DataError("error diagram: no extremes inside the evaluation domain");
  }

  ErrorDiagram diagram;
  diagram.kind = extremes.kind;
  diagram.scope = scope;
  diagram.before = extremes.before;
  diagram.after = after;
  diagram.horizon = horizon;
  diagram.series_length = series_length;
  diagram.prediction_days = domain_end - domain_begin;
  diagram.total_extremes = in_domain.size();
  diagram.points = descend(domain_values, domain_begin, in_domain, horizon);
  return diagram;
}

}  // namespace

ErrorDiagram error_diagram(const IndicatorSeries& indicator, const ExtremeSet& extremes,
                           std::size_t after, std::size_t horizon) {
  const std::size_t n = domain_length(indicator, after);
  return build_diagram(indicator, extremes, indicator.values().first(n), after, horizon);
}

double p_value(const ErrorDiagram& diagram) {
  double area = 0.0;
  double prev_alarm = 0.0;
  double prev_unpredicted = 1.0;
  for (const ErrorDiagramPoint& pt : diagram.points) {
    area += prev_unpredicted * (pt.alarm_fraction - prev_alarm);
    prev_alarm = pt.alarm_fraction;
    prev_unpredicted = pt.unpredicted_fraction;
  }
  // Final level is 0, so the stretch to alarm_fraction 1 adds nothing.
  return area;
}

double p_value_trapezoid(const ErrorDiagram& diagram) {
  double area = 0.0;
  double prev_alarm = 0.0;
  double prev_unpredicted = 1.0;
  for (const ErrorDiagramPoint& pt : diagram.points) {
    area += 0.5 * (prev_unpredicted + pt.unpredicted_fraction) *
            (pt.alarm_fraction - prev_alarm);
    prev_alarm = pt.alarm_fraction;
    prev_unpredicted = pt.unpredicted_fraction;
  }
  return area;
}

double shuffled_null_p_value(const IndicatorSeries& indicator, const ExtremeSet& extremes,
                             std::size_t after, std::size_t horizon, std::uint64_t seed,
                             unsigned trials) {
  if (trials == 0) {
    throw DataError("shuffled null: need at least one trial");
  }
  const std::size_t n = domain_length(indicator, after);
  std::vector<double> values(indicator.values().begin(),
                             indicator.values().begin() + static_cast<std::ptrdiff_t>(n));

  std::mt19937_64 rng(seed);
  double sum = 0.0;
  for (unsigned trial = 0; trial < trials; ++trial) {
    // Fisher-Yates with an explicit RNG so trials are reproducible.
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(values[i - 1], values[j]);
    }
    const ErrorDiagram diagram =
        build_diagram(indicator, extremes, values, after, horizon);
    sum += p_value(diagram);
  }
  return sum / static_cast<double>(trials);
}

QuartileSummary quartile_summary(std::vector<double> values) {
  if (values.empty()) {
    throw DataError("quartile summary: empty value list");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();

  const auto quantile = [&](double q) {
    const double h = q * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, n - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };

  QuartileSummary s;
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  const double fence_low = s.q1 - 1.5 * iqr;
  const double fence_high = s.q3 + 1.5 * iqr;

  s.whisker_low = std::numeric_limits<double>::quiet_NaN();
  s.whisker_high = std::numeric_limits<double>::quiet_NaN();
  for (double v : values) {
    if (v < fence_low || v > fence_high) {
      s.outliers.push_back(v);
      continue;
    }
    if (std::isnan(s.whisker_low)) {
      s.whisker_low = v;  // first in-fence value of the sorted list
    }
    s.whisker_high = v;
  }
  return s;
}

std::vector<std::size_t> default_scope_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t s = 200; s <= 470; s += 30) {
    grid.push_back(s);
  }
  return grid;
}

std::vector<std::size_t> default_window_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t w = 30; w <= 165; w += 15) {
    grid.push_back(w);
  }
  return grid;
}

SweepResult parameter_sweep(std::span<const double> y, std::span<const std::size_t> scopes,
                            std::span<const std::size_t> afters,
                            std::span<const std::size_t> befores, ExtremeKind kind,
                            std::size_t horizon, unsigned jobs) {
  if (scopes.empty() || afters.empty() || befores.empty()) {
    throw DataError("parameter sweep: empty grid");
  }

  SweepResult result;
  result.kind = kind;
  result.scope_grid.assign(scopes.begin(), scopes.end());
  result.after_grid.assign(afters.begin(), afters.end());
  result.before_grid.assign(befores.begin(), befores.end());

  // The indicator is the expensive factor and depends on S alone; extremes
  // depend on (a, b) alone. Compute each once, then combine per cell.
  std::vector<std::unique_ptr<IndicatorSeries>> indicators(scopes.size());
  parallel_for(scopes.size(), jobs, [&](std::size_t si) {
    if (scopes[si] >= 2 && y.size() > scopes[si]) {
      indicators[si] = std::make_unique<IndicatorSeries>(
          compute_indicator(kind, y, scopes[si]));
    }
  });

  std::vector<std::unique_ptr<ExtremeSet>> extreme_sets(afters.size() * befores.size());
  parallel_for(extreme_sets.size(), jobs, [&](std::size_t wi) {
    const std::size_t a = afters[wi / befores.size()];
    const std::size_t b = befores[wi % befores.size()];
    if (a >= 1 && b >= 1 && y.size() > a + b) {
      extreme_sets[wi] = std::make_unique<ExtremeSet>(detect_extremes(y, kind, b, a));
    }
  });

  const std::size_t cell_count = scopes.size() * afters.size() * befores.size();
  result.cells.assign(cell_count, SweepCell{});
  parallel_for(cell_count, jobs, [&](std::size_t ci) {
    const std::size_t si = ci / (afters.size() * befores.size());
    const std::size_t ai = (ci / befores.size()) % afters.size();
    const std::size_t bi = ci % befores.size();
    SweepCell& cell = result.cells[ci];
    cell.scope = scopes[si];
    cell.after = afters[ai];
    cell.before = befores[bi];
    const auto& indicator = indicators[si];
    const auto& extremes = extreme_sets[ai * befores.size() + bi];
    if (!indicator || !extremes || y.size() <= cell.scope + cell.after) {
      return;
    }
    try {
      cell.p = p_value(error_diagram(*indicator, *extremes, cell.after, horizon));
      cell.valid = true;
    } catch (const DataError&) {
      // No extremes in the evaluation domain: cell stays invalid.
    }
  });

  std::vector<double> valid_ps;
  valid_ps.reserve(cell_count);
  for (const SweepCell& cell : result.cells) {
    if (cell.valid) {
      valid_ps.push_back(cell.p);
    }
  }
  result.invalid = cell_count - valid_ps.size();
  if (valid_ps.empty()) {
    throw DataError("parameter sweep: no valid (S, a, b) combination for this series");
  }
  result.stats = quartile_summary(std::move(valid_ps));
  return result;
}

void write_error_diagram_csv(const ErrorDiagram& diagram, const std::filesystem::path& path,
                             bool timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  if (timestamp) {
    out << csv::timestamp_line();
  }
  out << "# kind=" << to_string(diagram.kind) << " S=" << diagram.scope
      << " a=" << diagram.after << " b=" << diagram.before << " horizon=" << diagram.horizon
      << " T=" << diagram.series_length << " prediction_days=" << diagram.prediction_days
      << " total_extremes=" << diagram.total_extremes << '\n';
  out << "# p_value=" << csv::format_double(p_value(diagram))
      << " p_value_trapezoid=" << csv::format_double(p_value_trapezoid(diagram)) << '\n';
  out << "threshold,alarm_fraction,unpredicted_fraction\n";
  for (const ErrorDiagramPoint& pt : diagram.points) {
    out << csv::format_double(pt.threshold) << ',' << csv::format_double(pt.alarm_fraction)
        << ',' << csv::format_double(pt.unpredicted_fraction) << '\n';
  }
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path,
                     bool timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  if (timestamp) {
    out << csv::timestamp_line();
  }
  out << "# kind=" << to_string(sweep.kind) << " invalid_triples=" << sweep.invalid << '\n';
  out << "S,a,b,p_value\n";
  for (const SweepCell& cell : sweep.cells) {
    out << cell.scope << ',' << cell.after << ',' << cell.before << ',';
    if (cell.valid) {
      out << csv::format_double(cell.p);
    } else {
      out << "nan";
    }
    out << '\n';
  }
}

void write_stats_json(const QuartileSummary& stats, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["q1"] = stats.q1;
  j["median"] = stats.median;
  j["q3"] = stats.q3;
  j["whisker_low"] = stats.whisker_low;
  j["whisker_high"] = stats.whisker_high;
  j["outliers"] = stats.outliers;
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  out << j.dump(2) << '\n';
}

}  // namespace visnet
