#include "visnet/extremes.hpp"

#include <deque>
#include <fstream>

#include "visnet/csv.hpp"
#include "visnet/errors.hpp"

namespace visnet {
namespace {

// Sliding-extreme pass with two monotone deques: one over the full window
// [p-b, p+a], one over the trailing part [p-b, p-1]. A day qualifies when it
// attains the window extreme and strictly beats every earlier day in the
// window, which keeps exactly the earliest index of a tied plateau.
template <bool kPeak>
std::vector<std::size_t> detect(std::span<const double> y, std::size_t before,
                                std::size_t after) {
  const auto better = [](double a, double b) { return kPeak ? a > b : a < b; };
  const std::size_t n = y.size();

  std::deque<std::size_t> full;      // candidate extreme indices, values strictly ordered
  std::deque<std::size_t> trailing;  // same structure over the days before p
  std::vector<std::size_t> found;
  std::size_t next_full = 0;
  std::size_t next_trailing = 0;

  for (std::size_t p = before; p + after < n; ++p) {
    for (; next_full <= p + after; ++next_full) {
      while (!full.empty() && !better(y[full.back()], y[next_full])) {
        full.pop_back();
      }
      full.push_back(next_full);
    }
    while (full.front() + before < p) {
      full.pop_front();
    }

    for (; next_trailing < p; ++next_trailing) {
      while (!trailing.empty() && !better(y[trailing.back()], y[next_trailing])) {
        trailing.pop_back();
      }
      trailing.push_back(next_trailing);
    }
    while (trailing.front() + before < p) {
      trailing.pop_front();
    }

    const bool window_extreme = !better(y[full.front()], y[p]);
    const bool beats_earlier = better(y[p], y[trailing.front()]);
    if (window_extreme && beats_earlier) {
      found.push_back(p);
    }
  }
  return found;
}

}  // namespace

ExtremeSet detect_extremes(std::span<const double> y, ExtremeKind kind,
                           std::size_t before, std::size_t after) {
  if (before < 1 || after < 1) {
    throw DataError("extremes: windows must be at least 1 day");
  }
  if (y.size() <= before + after) {
    throw DataError("extremes: series length " + std::to_string(y.size()) +
                    " does not exceed window " + std::to_string(before + after));
  }
  ExtremeSet set;
  set.kind = kind;
  set.before = before;
  set.after = after;
  set.positions = kind == ExtremeKind::Peak ? detect<true>(y, before, after)
                                            : detect<false>(y, before, after);
  return set;
}

void write_extremes_csv(std::span<const ExtremeSet> sets, const PriceSeries& series,
                        const std::filesystem::path& path, bool timestamp) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  if (timestamp) {
    out << csv::timestamp_line();
  }
  for (const ExtremeSet& set : sets) {
    out << "# kind=" << to_string(set.kind) << " before=" << set.before
        << " after=" << set.after << " count=" << set.positions.size() << '\n';
  }
  out << "day_index,date,price,kind\n";
  for (const ExtremeSet& set : sets) {
    for (std::size_t pos : set.positions) {
      out << series.day_index(pos) << ',' << series.date(pos).iso() << ','
          << csv::format_double(series.price(pos)) << ',' << to_string(set.kind) << '\n';
    }
  }
}

}  // namespace visnet
