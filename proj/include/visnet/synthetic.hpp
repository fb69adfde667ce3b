#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "visnet/series.hpp"

namespace visnet {

// Log-price shape of a synthetic segment. The super-exponential regimes
// approach a finite-time singularity a few days past the segment end, so the
// growth (or decline) rate itself accelerates towards the end: log-price is
// strictly convex over an up segment and strictly concave over a down one.
enum class Regime {
  SuperExponentialUp,
  SuperExponentialDown,
  Exponential,
  FlatNoise,
};

struct Segment {
  std::size_t start = 0;  // 1-based day index, inclusive
  std::size_t end = 0;    // inclusive
  Regime regime = Regime::FlatNoise;
};

// Gaps between segments hold the last level (plus noise). noise_scale is the
// standard deviation of the i.i.d. Gaussian term added to each log-return.
struct SyntheticSpec {
  std::size_t length = 0;
  std::vector<Segment> segments;
  double noise_scale = 0.0;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed spec: same seed, same bytes. Throws DataError on
// overlapping or out-of-range segments.
PriceSeries gen_synthetic(const SyntheticSpec& spec);

// Named fixture layouts for CLI runs without input data ("bubble", "calm",
// "mixed"). Throws UsageError for unknown names.
SyntheticSpec synthetic_preset(std::string_view name, std::uint64_t seed);

Regime parse_regime(std::string_view name);  // "up", "down", "exp", "flat"

}  // namespace visnet
