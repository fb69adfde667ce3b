#include "kernels_impl.hpp"

#if defined(VISNET_HAVE_AVX2_TU)

#include <immintrin.h>

#include <bit>
#include <limits>

namespace visnet::detail {
namespace {

// Lane L holds the point at distance d0 + L from i, so lane order follows the
// leftward walk. The exclusive prefix extreme per lane covers the lanes
// before it plus the carry from previous chunks; that is the running extreme
// the scalar kernel maintains.
//
// All arithmetic (subtract, divide, min/max, ordered compares) is correctly
// rounded or exact, so the result matches the scalar kernel bit for bit.

struct MaxPolicy {  // visibility
  static __m256d extreme(__m256d a, __m256d b) { return _mm256_max_pd(a, b); }
  static __m256d beyond(__m256d s, __m256d run) { return _mm256_cmp_pd(s, run, _CMP_GT_OQ); }
  static double extreme(double a, double b) { return a > b ? a : b; }
  static bool beyond(double s, double run) { return s > run; }
  static constexpr double seed() { return -std::numeric_limits<double>::infinity(); }
};

struct MinPolicy {  // absolute invisibility
  static __m256d extreme(__m256d a, __m256d b) { return _mm256_min_pd(a, b); }
  static __m256d beyond(__m256d s, __m256d run) { return _mm256_cmp_pd(s, run, _CMP_LT_OQ); }
  static double extreme(double a, double b) { return a < b ? a : b; }
  static bool beyond(double s, double run) { return s < run; }
  static constexpr double seed() { return std::numeric_limits<double>::infinity(); }
};

// Shifts lane contents up by one/two positions (towards higher lanes),
// filling vacated lanes with `fill`.
inline __m256d shift_up1(__m256d v, __m256d fill) {
  const __m256d p = _mm256_permute4x64_pd(v, 0x90);  // lanes {0,0,1,2}
  return _mm256_blend_pd(fill, p, 0b1110);
}

inline __m256d shift_up2(__m256d v, __m256d fill) {
  const __m256d p = _mm256_permute4x64_pd(v, 0x40);  // lanes {0,0,0,1}
  return _mm256_blend_pd(fill, p, 0b1100);
}

template <typename Policy, DirectionFilter kFilter>
int scan(const double* y, std::size_t i, std::size_t window) {
  const double yi = y[i];
  const __m256d yi_v = _mm256_set1_pd(yi);
  const __m256d seed_v = _mm256_set1_pd(Policy::seed());

  double running = Policy::seed();
  int count = 0;

  std::size_t d = 1;
  for (; d + 3 <= window; d += 4) {
    // Points i-d, i-d-1, i-d-2, i-d-3 live at y[i-d-3 .. i-d]; reverse into
    // walk order so lane L is distance d + L.
    const __m256d block = _mm256_loadu_pd(y + i - d - 3);
    const __m256d yj = _mm256_permute4x64_pd(block, 0x1B);
    const __m256d dist = _mm256_setr_pd(static_cast<double>(d), static_cast<double>(d + 1),
                                        static_cast<double>(d + 2), static_cast<double>(d + 3));
    const __m256d slope = _mm256_div_pd(_mm256_sub_pd(yj, yi_v), dist);

    // Inclusive prefix extreme over lanes, then shift up for the exclusive
    // form and fold in the carry.
    __m256d inc = Policy::extreme(slope, shift_up1(slope, seed_v));
    inc = Policy::extreme(inc, shift_up2(inc, seed_v));
    const __m256d prev = Policy::extreme(shift_up1(inc, seed_v), _mm256_set1_pd(running));

    __m256d linked = Policy::beyond(slope, prev);
    if constexpr (kFilter == DirectionFilter::RequireLowerLeft) {
      linked = _mm256_and_pd(linked, _mm256_cmp_pd(yi_v, yj, _CMP_GT_OQ));
    } else if constexpr (kFilter == DirectionFilter::RequireHigherLeft) {
      linked = _mm256_and_pd(linked, _mm256_cmp_pd(yi_v, yj, _CMP_LT_OQ));
    }
    count += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(linked)));

    double lane3[4];
    _mm256_storeu_pd(lane3, inc);
    running = Policy::extreme(running, lane3[3]);
  }

  for (; d <= window; ++d) {
    const std::size_t j = i - d;
    const double slope = (y[j] - yi) / static_cast<double>(d);
    const bool beyond = Policy::beyond(slope, running);
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

template <typename Policy>
int scan_filtered(const double* y, std::size_t i, std::size_t window,
                  DirectionFilter filter) {
  switch (filter) {
    case DirectionFilter::RequireLowerLeft:
      return scan<Policy, DirectionFilter::RequireLowerLeft>(y, i, window);
    case DirectionFilter::RequireHigherLeft:
      return scan<Policy, DirectionFilter::RequireHigherLeft>(y, i, window);
    case DirectionFilter::None:
      break;
  }
  return scan<Policy, DirectionFilter::None>(y, i, window);
}

}  // namespace

int degree_scan_avx2(const double* y, std::size_t i, std::size_t window,
                     LinkKind kind, DirectionFilter filter) {
  return kind == LinkKind::Visibility
             ? scan_filtered<MaxPolicy>(y, i, window, filter)
             : scan_filtered<MinPolicy>(y, i, window, filter);
}

}  // namespace visnet::detail

#endif  // VISNET_HAVE_AVX2_TU
