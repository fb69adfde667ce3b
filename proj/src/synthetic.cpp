#include "visnet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "visnet/errors.hpp"

namespace visnet {
namespace {

// Fixed regime magnitudes, in log-price units per segment: a bubble gains
// 1.0 (~170% in price), a negative bubble loses 0.8, an exponential segment
// drifts 5 bp/day. The singularity sits kSingularityLead days past the end.
constexpr double kUpGain = 1.0;
constexpr double kDownLoss = 0.8;
constexpr double kExponentialDrift = 5e-4;
constexpr double kPowerExponent = 0.5;
constexpr double kSingularityLead = 5.0;

// Cumulative log-price contribution of a segment's regime at day t relative
// to the segment start s (f(s) = 0).
class SegmentCurve {
public:
  SegmentCurve(const Segment& seg) : regime_(seg.regime) {
    const double s = static_cast<double>(seg.start);
    const double e = static_cast<double>(seg.end);
    critical_time_ = e + kSingularityLead;
    const double span = std::pow(critical_time_ - s, kPowerExponent) -
                        std::pow(critical_time_ - e, kPowerExponent);
    switch (regime_) {
      case Regime::SuperExponentialUp:
        amplitude_ = span > 0.0 ? kUpGain / span : 0.0;
        break;
      case Regime::SuperExponentialDown:
        amplitude_ = span > 0.0 ? kDownLoss / span : 0.0;
        break;
      case Regime::Exponential:
      case Regime::FlatNoise:
        amplitude_ = 0.0;
        break;
    }
    start_ = seg.start;
  }

  double at(std::size_t day) const {
    const double t = static_cast<double>(day);
    const double s = static_cast<double>(start_);
    switch (regime_) {
      case Regime::SuperExponentialUp:
        return amplitude_ * (std::pow(critical_time_ - s, kPowerExponent) -
                             std::pow(critical_time_ - t, kPowerExponent));
      case Regime::SuperExponentialDown:
        return -amplitude_ * (std::pow(critical_time_ - s, kPowerExponent) -
                              std::pow(critical_time_ - t, kPowerExponent));
      case Regime::Exponential:
        return kExponentialDrift * (t - s);
      case Regime::FlatNoise:
        return 0.0;
    }
    return 0.0;
  }

private:
  Regime regime_;
  std::size_t start_ = 0;
  double critical_time_ = 0.0;
  double amplitude_ = 0.0;
};

// Box-Muller on explicit 53-bit uniforms; identical output on every
// platform, unlike std::normal_distribution.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    constexpr double kTwoPi = 6.283185307179586;
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  double uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

void validate(const SyntheticSpec& spec) {
  if (spec.length < 2) {
    throw DataError("synthetic spec: length must be at least 2");
  }
  if (spec.noise_scale < 0.0) {
    throw DataError("synthetic spec: noise_scale must be nonnegative");
  }
  auto segs = spec.segments;
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  std::size_t prev_end = 0;
  for (const Segment& seg : segs) {
    if (seg.start < 1 || seg.end > spec.length || seg.start > seg.end) {
      throw DataError("synthetic spec: segment [" + std::to_string(seg.start) + ", " +
                      std::to_string(seg.end) + "] out of range for length " +
                      std::to_string(spec.length));
    }
    if (seg.start <= prev_end) {
      throw DataError("synthetic spec: segments overlap at day " + std::to_string(seg.start));
    }
    prev_end = seg.end;
  }
}

}  // namespace

PriceSeries gen_synthetic(const SyntheticSpec& spec) {
  validate(spec);

  auto segs = spec.segments;
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.start < b.start; });
  std::vector<SegmentCurve> curves;
  curves.reserve(segs.size());
  for (const Segment& seg : segs) {
    curves.emplace_back(seg);
  }

  // Deterministic log-return accumulation: each day adds the increment of
  // the segment curve covering it (gaps add zero) plus the noise term.
  GaussianSource noise(spec.seed);
  std::vector<double> log_prices(spec.length);
  log_prices[0] = std::log(100.0);
  std::size_t seg_pos = 0;
  for (std::size_t day = 2; day <= spec.length; ++day) {
    while (seg_pos < segs.size() && segs[seg_pos].end < day) {
      ++seg_pos;
    }
    double drift = 0.0;
    if (seg_pos < segs.size() && segs[seg_pos].start < day && day <= segs[seg_pos].end) {
      drift = curves[seg_pos].at(day) - curves[seg_pos].at(day - 1);
    }
    const double shock = spec.noise_scale > 0.0 ? spec.noise_scale * noise.next() : 0.0;
    log_prices[day - 1] = log_prices[day - 2] + drift + shock;
  }

  std::vector<double> prices(spec.length);
  for (std::size_t pos = 0; pos < spec.length; ++pos) {
    prices[pos] = std::exp(log_prices[pos]);
  }
  std::vector<Date> dates(spec.length);
  Date d{2000, 1, 1};
  for (std::size_t pos = 0; pos < spec.length; ++pos) {
    dates[pos] = d;
    d = d.next_day();
  }
  return PriceSeries(std::move(dates), std::move(prices), "synthetic");
}

SyntheticSpec synthetic_preset(std::string_view name, std::uint64_t seed) {
  SyntheticSpec spec;
  spec.seed = seed;
  if (name == "bubble") {
    // Four bubbles with crashes between them; peaks near days 400, 880,
    // 1360, 1840.
    spec.length = 2000;
    spec.noise_scale = 0.01;
    spec.segments = {
        {100, 400, Regime::SuperExponentialUp},    {401, 579, Regime::SuperExponentialDown},
        {580, 880, Regime::SuperExponentialUp},    {881, 1059, Regime::SuperExponentialDown},
        {1060, 1360, Regime::SuperExponentialUp},  {1361, 1539, Regime::SuperExponentialDown},
        {1540, 1840, Regime::SuperExponentialUp},  {1841, 1999, Regime::SuperExponentialDown},
    };
    return spec;
  }
  if (name == "calm") {
    spec.length = 2000;
    spec.noise_scale = 0.01;
    spec.segments = {{1, 2000, Regime::FlatNoise}};
    return spec;
  }
  if (name == "mixed") {
    spec.length = 2000;
    spec.noise_scale = 0.01;
    spec.segments = {
        {1, 500, Regime::Exponential},
        {501, 900, Regime::SuperExponentialUp},
        {901, 1100, Regime::SuperExponentialDown},
        {1101, 2000, Regime::Exponential},
    };
    return spec;
  }
  throw UsageError("unknown synthetic preset '" + std::string(name) + "'");
}

Regime parse_regime(std::string_view name) {
  if (name == "up") return Regime::SuperExponentialUp;
  if (name == "down") return Regime::SuperExponentialDown;
  if (name == "exp") return Regime::Exponential;
  if (name == "flat") return Regime::FlatNoise;
  throw UsageError("unknown regime '" + std::string(name) +
                   "' (expected up, down, exp or flat)");
}

}  // namespace visnet
