#include "visnet/kernels.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <string>

#include "kernels_impl.hpp"
#include "visnet/errors.hpp"

namespace visnet {
namespace {

#if defined(VISNET_HAVE_AVX2_TU)
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
#endif

#if defined(VISNET_HAVE_AVX2_TU)
constexpr std::size_t kKernelCount = 2;
#else
constexpr std::size_t kKernelCount = 1;
#endif

const std::array<KernelInfo, kKernelCount>& kernel_table() {
  static const auto table = [] {
    std::array<KernelInfo, kKernelCount> t{};
    t[0] = KernelInfo{"scalar", &detail::degree_scan_scalar, true};
#if defined(VISNET_HAVE_AVX2_TU)
    t[1] = KernelInfo{"avx2", &detail::degree_scan_avx2, cpu_has_avx2()};
#endif
    return t;
  }();
  return table;
}

std::atomic<const KernelInfo*> g_active{nullptr};

const KernelInfo& best_available() {
  const auto& table = kernel_table();
  for (auto it = table.rbegin(); it != table.rend(); ++it) {
    if (it->available) {
      return *it;
    }
  }
  return table.front();
}

void check_pair(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) {
    throw DataError("visibility: index out of range");
  }
  if (i == j) {
    throw DataError("visibility: a point cannot be paired with itself");
  }
}

// Quantifier form of the chord rule between a < b, anchored at b.
template <bool kVisibility>
bool chord_clear(const double* y, std::size_t a, std::size_t b) {
  const double slope_ab = anchored_slope(y, b, a);
  for (std::size_t k = a + 1; k < b; ++k) {
    const double slope_kb = anchored_slope(y, b, k);
    if (kVisibility ? !(slope_ab > slope_kb) : !(slope_ab < slope_kb)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::span<const KernelInfo> degree_kernels() { return kernel_table(); }

const KernelInfo& active_kernel() {
  const KernelInfo* k = g_active.load(std::memory_order_acquire);
  if (k == nullptr) {
    k = &best_available();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

void select_kernel(std::string_view name) {
  if (name == "auto") {
    g_active.store(&best_available(), std::memory_order_release);
    return;
  }
  for (const KernelInfo& k : kernel_table()) {
    if (k.name == name) {
      if (!k.available) {
        throw UsageError("kernel '" + std::string(name) + "' is not supported by this CPU");
      }
      g_active.store(&k, std::memory_order_release);
      return;
    }
  }
  throw UsageError("unknown kernel '" + std::string(name) + "'");
}

bool visible(std::span<const double> y, std::size_t i, std::size_t j) {
  check_pair(y.size(), i, j);
  const auto [a, b] = std::minmax(i, j);
  return chord_clear<true>(y.data(), a, b);
}

bool invisible(std::span<const double> y, std::size_t i, std::size_t j) {
  check_pair(y.size(), i, j);
  const auto [a, b] = std::minmax(i, j);
  return chord_clear<false>(y.data(), a, b);
}

int left_degree_scan(std::span<const double> y, std::size_t i, std::size_t scope,
                     LinkKind kind, DirectionFilter filter) {
  if (i >= y.size()) {
    throw DataError("left_degree_scan: index out of range");
  }
  const std::size_t window = std::min(scope, i);
  return active_kernel().scan(y.data(), i, window, kind, filter);
}

int brute_force_degree(std::span<const double> y, std::size_t i, std::size_t scope,
                       LinkKind kind, DirectionFilter filter) {
  if (i >= y.size()) {
    throw DataError("brute_force_degree: index out of range");
  }
  const std::size_t window = std::min(scope, i);
  const double* p = y.data();
  int count = 0;
  for (std::size_t d = 1; d <= window; ++d) {
    const std::size_t j = i - d;
    switch (filter) {
      case DirectionFilter::RequireLowerLeft:
        if (!(p[i] > p[j])) continue;
        break;
      case DirectionFilter::RequireHigherLeft:
        if (!(p[i] < p[j])) continue;
        break;
      case DirectionFilter::None:
        break;
    }
    const bool linked = kind == LinkKind::Visibility ? chord_clear<true>(p, j, i)
                                                     : chord_clear<false>(p, j, i);
    count += linked ? 1 : 0;
  }
  return count;
}

}  // namespace visnet
