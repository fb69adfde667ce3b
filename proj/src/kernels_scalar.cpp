#include <limits>

#include "kernels_impl.hpp"

namespace visnet::detail {
namespace {

// Reference kernel. Walks leftward from i - 1, carrying the running extreme
// of the anchored slopes of the points already passed; those are exactly the
// points between the current candidate and i. A candidate links iff its own
// slope is strictly beyond that extreme (vacuously for the adjacent point).
template <bool kVisibility, DirectionFilter kFilter>
int scan(const double* y, std::size_t i, std::size_t window) {
  const double yi = y[i];
  double running = kVisibility ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
  int count = 0;
  for (std::size_t d = 1; d <= window; ++d) {
    const std::size_t j = i - d;
    const double slope = (y[j] - yi) / static_cast<double>(d);
    const bool beyond = kVisibility ? slope > running : slope < running;
    bool linked = beyond;
    if constexpr (kFilter == DirectionFilter::RequireLowerLeft) {
      linked = linked && yi > y[j];
    } else if constexpr (kFilter == DirectionFilter::RequireHigherLeft) {
      linked = linked && yi < y[j];
    }
    count += linked ? 1 : 0;
    if (beyond) {
      running = slope;
    }
  }
  return count;
}

template <bool kVisibility>
int scan_filtered(const double* y, std::size_t i, std::size_t window,
                  DirectionFilter filter) {
  switch (filter) {
    case DirectionFilter::RequireLowerLeft:
      return scan<kVisibility, DirectionFilter::RequireLowerLeft>(y, i, window);
    case DirectionFilter::RequireHigherLeft:
      return scan<kVisibility, DirectionFilter::RequireHigherLeft>(y, i, window);
    case DirectionFilter::None:
      break;
  }
  return scan<kVisibility, DirectionFilter::None>(y, i, window);
}

}  // namespace

int degree_scan_scalar(const double* y, std::size_t i, std::size_t window,
                       LinkKind kind, DirectionFilter filter) {
  return kind == LinkKind::Visibility ? scan_filtered<true>(y, i, window, filter)
                                      : scan_filtered<false>(y, i, window, filter);
}

}  // namespace visnet::detail
