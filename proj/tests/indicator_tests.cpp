#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "visnet/errors.hpp"
#include "visnet/indicator.hpp"

using namespace visnet;

TEST_CASE("convex increasing series saturates the peak indicator", "[indicator]") {
  std::vector<double> y;
  for (std::size_t t = 0; t < 60; ++t) {
    y.push_back(0.002 * static_cast<double>(t) * static_cast<double>(t));
  }
  const IndicatorSeries ind = peak_indicator(y, 15);
  REQUIRE(ind.values().size() == y.size() - 15);
  for (double v : ind.values()) {
    REQUIRE(v == 1.0);
  }
}

TEST_CASE("decreasing series zeroes the peak indicator", "[indicator]") {
  std::vector<double> y;
  for (std::size_t t = 0; t < 40; ++t) {
    y.push_back(3.0 - 0.05 * static_cast<double>(t));
  }
  const IndicatorSeries ind = peak_indicator(y, 10);
  for (double v : ind.values()) {
    REQUIRE(v == 0.0);
  }
}

TEST_CASE("concave decreasing series saturates the trough indicator", "[indicator]") {
  std::vector<double> y;
  for (std::size_t t = 0; t < 60; ++t) {
    y.push_back(-0.002 * static_cast<double>(t) * static_cast<double>(t));
  }
  const IndicatorSeries ind = trough_indicator(y, 15);
  for (double v : ind.values()) {
    REQUIRE(v == 1.0);
  }
}

TEST_CASE("increasing series zeroes the trough indicator", "[indicator]") {
  std::vector<double> y;
  for (std::size_t t = 0; t < 40; ++t) {
    y.push_back(0.05 * static_cast<double>(t));
  }
  const IndicatorSeries ind = trough_indicator(y, 10);
  for (double v : ind.values()) {
    REQUIRE(v == 0.0);
  }
}

TEST_CASE("worked example: one of three left points counts", "[indicator]") {
  const std::vector<double> y{0.0, 3.0, 1.0, 2.0};
  const IndicatorSeries peak = peak_indicator(y, 3);
  REQUIRE(peak.values().size() == 1);
  CHECK(peak.at(3) == 1.0 / 3.0);

  // Negating the values maps the peak indicator onto the trough indicator.
  const std::vector<double> neg{0.0, -3.0, -1.0, -2.0};
  const IndicatorSeries trough = trough_indicator(neg, 3);
  CHECK(trough.at(3) == 1.0 / 3.0);
}

TEST_CASE("indicator is undefined for the first scope days", "[indicator]") {
  const auto y = test::random_log_series(3, 100);
  const IndicatorSeries ind = peak_indicator(y, 30);
  CHECK(ind.first_position() == 30);
  CHECK(ind.series_length() == 100);
  CHECK(ind.values().size() == 70);
  CHECK_FALSE(ind.defined_at(29));
  CHECK(ind.defined_at(30));
}

TEST_CASE("series not longer than scope is rejected", "[indicator]") {
  const auto y = test::random_log_series(4, 50);
  CHECK_THROWS_AS(peak_indicator(y, 50), DataError);
  CHECK_THROWS_AS(peak_indicator(y, 51), DataError);
  CHECK_THROWS_AS(peak_indicator(y, 1), DataError);
  CHECK_NOTHROW(peak_indicator(y, 49));
}

TEST_CASE("trough indicator equals peak indicator of the negated series",
          "[indicator][property]") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 25; ++round) {
    const auto y = test::random_log_series(rng(), 200);
    std::vector<double> neg(y.size());
    for (std::size_t pos = 0; pos < y.size(); ++pos) {
      neg[pos] = -y[pos];
    }
    const std::size_t scope = 10 + round % 40;
    const IndicatorSeries trough = trough_indicator(y, scope);
    const IndicatorSeries peak = peak_indicator(neg, scope);
    REQUIRE(trough.values().size() == peak.values().size());
    for (std::size_t t = 0; t < trough.values().size(); ++t) {
      REQUIRE(trough.values()[t] == peak.values()[t]);
    }
  }
}

TEST_CASE("values are multiples of 1/scope in [0, 1]", "[indicator][property]") {
  const auto y = test::random_log_series(21, 300);
  const std::size_t scope = 37;
  for (ExtremeKind kind : {ExtremeKind::Peak, ExtremeKind::Trough}) {
    const IndicatorSeries ind = compute_indicator(kind, y, scope);
    for (double v : ind.values()) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
      const double scaled = v * static_cast<double>(scope);
      REQUIRE(scaled == std::floor(scaled + 0.5));
    }
  }
}

TEST_CASE("indicator value is causal and windowed", "[indicator][property]") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    auto y = test::random_log_series(rng(), 150);
    const std::size_t scope = 25;
    const std::size_t i = scope + 1 + rng() % (y.size() - scope - 2);
    const IndicatorSeries full = peak_indicator(y, scope);

    // Causality: truncating everything after i does not move the value at i.
    std::vector<double> truncated(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(i + 1));
    const IndicatorSeries trunc = peak_indicator(truncated, scope);
    REQUIRE(trunc.at(i) == full.at(i));

    // Normalization: perturbing days before the window cannot move it either.
    std::vector<double> perturbed(y);
    for (std::size_t pos = 0; pos + scope < i; ++pos) {
      perturbed[pos] += 5.0 * std::sin(static_cast<double>(pos));
    }
    const IndicatorSeries pert = peak_indicator(perturbed, scope);
    REQUIRE(pert.at(i) == full.at(i));
  }
}

TEST_CASE("parallel computation matches serial exactly", "[indicator]") {
  const auto y = test::random_log_series(8, 400);
  const IndicatorSeries serial = peak_indicator(y, 50, "s", 1);
  const IndicatorSeries parallel = peak_indicator(y, 50, "p", 4);
  REQUIRE(serial.values().size() == parallel.values().size());
  for (std::size_t t = 0; t < serial.values().size(); ++t) {
    REQUIRE(serial.values()[t] == parallel.values()[t]);
  }
}
