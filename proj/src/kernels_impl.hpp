#pragma once

#include <cstddef>

#include "visnet/kernels.hpp"

namespace visnet::detail {

int degree_scan_scalar(const double* y, std::size_t i, std::size_t window,
                       LinkKind kind, DirectionFilter filter);

#if defined(VISNET_HAVE_AVX2_TU)
int degree_scan_avx2(const double* y, std::size_t i, std::size_t window,
                     LinkKind kind, DirectionFilter filter);
#endif

}  // namespace visnet::detail
