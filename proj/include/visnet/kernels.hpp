#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace visnet {

// Chord rule used to link two points of a series:
//  - Visibility: every interior point lies strictly below the chord.
//  - AbsoluteInvisibility: every interior point lies strictly above it.
// Ties on the chord sever both link kinds.
enum class LinkKind {
  Visibility,
  AbsoluteInvisibility,
};

// Optional value constraint on the left endpoint of a candidate link,
// relative to the right endpoint i: RequireLowerLeft keeps j with y[i] > y[j],
// RequireHigherLeft keeps j with y[i] < y[j].
enum class DirectionFilter {
  None,
  RequireLowerLeft,
  RequireHigherLeft,
};

// All chord decisions reduce to strict comparisons of slopes anchored at the
// right endpoint: slope(i, m) = (y[m] - y[i]) / (i - m) for m < i. A left
// point j is visible from i iff slope(i, j) strictly exceeds slope(i, k) for
// every k between, and invisibility-linked iff it is strictly below all of
// them. Every implementation (pairwise predicate, brute-force counter, scalar
// scan, SIMD scans) evaluates this one expression, so results are
// bit-identical across paths.
inline double anchored_slope(const double* y, std::size_t i, std::size_t m) {
  return (y[m] - y[i]) / static_cast<double>(i - m);
}

// Counts links from point i to the left within `window` points, i.e. over
// j in [i - window, i - 1]. `window` must already be clamped to i.
using DegreeScanFn = int (*)(const double* y, std::size_t i, std::size_t window,
                             LinkKind kind, DirectionFilter filter);

struct KernelInfo {
  std::string_view name;
  DegreeScanFn scan;
  bool available;  // supported by the executing CPU
};

// Compiled-in kernels, scalar first. Availability is probed at first use.
std::span<const KernelInfo> degree_kernels();

// Kernel used by left_degree_scan. Defaults to the fastest available one.
const KernelInfo& active_kernel();

// Selects the kernel by name ("scalar", "avx2", ...) or "auto" for the
// default. Throws UsageError for unknown or unavailable names.
void select_kernel(std::string_view name);

// True iff points i and j (either order, i != j) see each other: all interior
// points lie strictly below the chord joining them. Vacuously true for
// adjacent points. Throws DataError when i == j or an index is out of range.
bool visible(std::span<const double> y, std::size_t i, std::size_t j);

// Mirror predicate: all interior points lie strictly above the chord.
bool invisible(std::span<const double> y, std::size_t i, std::size_t j);

// Number of j in [i - scope, i - 1] linked to i under `kind` and passing
// `filter`. The window is truncated at the start of the series. Runs the
// active kernel in a single O(scope) leftward pass that maintains the running
// extreme of the anchored slopes.
int left_degree_scan(std::span<const double> y, std::size_t i, std::size_t scope,
                     LinkKind kind, DirectionFilter filter);

// Same contract as left_degree_scan, evaluated by direct O(scope^2)
// re-application of the chord rule per candidate j. Testing oracle; keeps no
// incremental state.
int brute_force_degree(std::span<const double> y, std::size_t i, std::size_t scope,
                       LinkKind kind, DirectionFilter filter);

}  // namespace visnet
