#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "test_support.hpp"
#include "visnet/errors.hpp"
#include "visnet/evaluation.hpp"
#include "visnet/synthetic.hpp"

using namespace visnet;

namespace {

// Indicator with hand-chosen values: `values[t]` belongs to 0-based series
// position scope + t.
IndicatorSeries make_indicator(std::size_t series_length, std::size_t scope,
                               std::vector<double> values) {
  REQUIRE(values.size() == series_length - scope);
  return IndicatorSeries(ExtremeKind::Peak, scope, "test", std::move(values));
}

ExtremeSet make_extremes(std::vector<std::size_t> positions, std::size_t before = 10,
                         std::size_t after = 5) {
  ExtremeSet set;
  set.kind = ExtremeKind::Peak;
  set.before = before;
  set.after = after;
  set.positions = std::move(positions);
  return set;
}

// From-scratch reference: re-evaluates the alarm set at every distinct
// indicator value without incremental state.
std::vector<ErrorDiagramPoint> descent_oracle(const IndicatorSeries& ind,
                                              const ExtremeSet& ext, std::size_t after,
                                              std::size_t horizon) {
  const std::size_t domain_begin = ind.scope();
  const std::size_t domain_end = ind.series_length() - after;
  const std::size_t n = domain_end - domain_begin;

  std::vector<std::size_t> extremes;
  for (std::size_t e : ext.positions) {
    if (e >= domain_begin && e < domain_end) {
      extremes.push_back(e);
    }
  }

  std::vector<double> distinct(ind.values().begin(),
                               ind.values().begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<ErrorDiagramPoint> points;
  std::size_t last_predicted = 0;
  for (double threshold : distinct) {
    std::size_t alarm_days = 0;
    std::vector<std::size_t> alarms;
    for (std::size_t pos = domain_begin; pos < domain_end; ++pos) {
      if (ind.at(pos) >= threshold) {
        ++alarm_days;
        alarms.push_back(pos);
      }
    }
    std::size_t predicted = 0;
    for (std::size_t e : extremes) {
      bool hit = false;
      for (std::size_t d : alarms) {
        if (d <= e && e <= d + horizon) {
          hit = true;
          break;
        }
      }
      predicted += hit ? 1 : 0;
    }
    if (predicted > last_predicted) {
      points.push_back({threshold,
                        static_cast<double>(alarm_days) / static_cast<double>(n),
                        static_cast<double>(extremes.size() - predicted) /
                            static_cast<double>(extremes.size())});
      last_predicted = predicted;
    }
    if (predicted == extremes.size()) {
      break;
    }
  }
  return points;
}

}  // namespace

TEST_CASE("perfect indicator descends in a single step", "[evaluation]") {
  const std::size_t length = 100;
  const std::size_t scope = 10;
  const std::size_t after = 5;
  const std::vector<std::size_t> extreme_days{20, 40, 60};

  std::vector<double> values(length - scope, 0.0);
  for (std::size_t e : extreme_days) {
    values[e - scope] = 1.0;
  }
  const auto ind = make_indicator(length, scope, values);
  const auto ext = make_extremes(extreme_days);

  const ErrorDiagram diagram = error_diagram(ind, ext, after);
  REQUIRE(diagram.prediction_days == length - scope - after);
  REQUIRE(diagram.total_extremes == 3);
  REQUIRE(diagram.points.size() == 1);
  CHECK(diagram.points[0].threshold == 1.0);
  CHECK(diagram.points[0].alarm_fraction == 3.0 / 85.0);
  CHECK(diagram.points[0].unpredicted_fraction == 0.0);
  CHECK(p_value(diagram) == 3.0 / 85.0);
}

TEST_CASE("constant indicator yields the degenerate (1, 0) diagram", "[evaluation]") {
  const auto ind = make_indicator(50, 8, std::vector<double>(42, 0.25));
  const auto ext = make_extremes({15, 30});
  const ErrorDiagram diagram = error_diagram(ind, ext, 4);
  REQUIRE(diagram.points.size() == 1);
  CHECK(diagram.points[0].alarm_fraction == 1.0);
  CHECK(diagram.points[0].unpredicted_fraction == 0.0);
  CHECK(p_value(diagram) == 1.0);
}

TEST_CASE("extremes outside the evaluation domain are dropped", "[evaluation]") {
  const std::size_t length = 100;
  const std::size_t scope = 10;
  const std::size_t after = 5;
  std::vector<double> values(length - scope, 0.1);
  values[30 - scope] = 0.9;
  const auto ind = make_indicator(length, scope, values);
  // 3 is before the domain, 96 is inside the trailing after-window.
  const auto ext = make_extremes({3, 30, 96});
  const ErrorDiagram diagram = error_diagram(ind, ext, after);
  CHECK(diagram.total_extremes == 1);
  CHECK(p_value(diagram) == 1.0 / 85.0);
}

TEST_CASE("no extremes in the domain is an error", "[evaluation]") {
  const auto ind = make_indicator(60, 10, std::vector<double>(50, 0.5));
  CHECK_THROWS_AS(error_diagram(ind, make_extremes({}), 5), DataError);
  CHECK_THROWS_AS(error_diagram(ind, make_extremes({3, 58}), 5), DataError);
  // Series shorter than scope + after leaves no prediction days.
  CHECK_THROWS_AS(error_diagram(ind, make_extremes({30}), 50), DataError);
}

TEST_CASE("forward horizon lets early alarms predict later extremes", "[evaluation]") {
  const std::size_t length = 60;
  const std::size_t scope = 5;
  const std::size_t after = 2;
  std::vector<double> values(length - scope, 0.1);
  values[27 - scope] = 0.9;  // early warning
  values[30 - scope] = 0.5;  // the extreme day itself
  const auto ind = make_indicator(length, scope, values);
  const auto ext = make_extremes({30});

  const ErrorDiagram same_day = error_diagram(ind, ext, after, 0);
  REQUIRE(same_day.points.size() == 1);
  CHECK(same_day.points[0].threshold == 0.5);
  CHECK(same_day.points[0].alarm_fraction ==
        2.0 / static_cast<double>(same_day.prediction_days));

  const ErrorDiagram with_horizon = error_diagram(ind, ext, after, 3);
  REQUIRE(with_horizon.points.size() == 1);
  CHECK(with_horizon.points[0].threshold == 0.9);
  CHECK(with_horizon.points[0].alarm_fraction ==
        1.0 / static_cast<double>(with_horizon.prediction_days));
}

TEST_CASE("incremental descent equals the from-scratch oracle", "[evaluation][property]") {
  std::mt19937_64 rng(202);
  for (int round = 0; round < 25; ++round) {
    const std::size_t length = 120 + rng() % 380;
    const std::size_t scope = 10 + rng() % 30;
    const std::size_t after = 1 + rng() % 10;
    const std::size_t horizon = rng() % 4;

    // Coarse random indicator values produce plenty of threshold ties.
    std::vector<double> values(length - scope);
    for (double& v : values) {
      v = static_cast<double>(rng() % 12) / 11.0;
    }
    const auto ind = make_indicator(length, scope, values);

    std::vector<std::size_t> extreme_days;
    for (std::size_t pos = scope; pos + after < length; ++pos) {
      if (rng() % 23 == 0) {
        extreme_days.push_back(pos);
      }
    }
    if (extreme_days.empty()) {
      extreme_days.push_back(scope + 5);
    }
    const auto ext = make_extremes(extreme_days);

    const ErrorDiagram diagram = error_diagram(ind, ext, after, horizon);
    const auto oracle = descent_oracle(ind, ext, after, horizon);
    REQUIRE(diagram.points.size() == oracle.size());
    for (std::size_t t = 0; t < oracle.size(); ++t) {
      REQUIRE(diagram.points[t].threshold == oracle[t].threshold);
      REQUIRE(diagram.points[t].alarm_fraction == oracle[t].alarm_fraction);
      REQUIRE(diagram.points[t].unpredicted_fraction == oracle[t].unpredicted_fraction);
    }
  }
}

TEST_CASE("diagram geometry invariants hold on random inputs", "[evaluation][property]") {
  std::mt19937_64 rng(203);
  for (int round = 0; round < 25; ++round) {
    const std::size_t length = 150 + rng() % 300;
    const std::size_t scope = 12;
    const std::size_t after = 6;
    std::vector<double> values(length - scope);
    for (double& v : values) {
      v = static_cast<double>(rng() % 1000) / 999.0;
    }
    const auto ind = make_indicator(length, scope, values);
    std::vector<std::size_t> extreme_days;
    for (std::size_t pos = scope; pos + after < length; ++pos) {
      if (rng() % 17 == 0) {
        extreme_days.push_back(pos);
      }
    }
    if (extreme_days.empty()) {
      extreme_days.push_back(scope);
    }
    const ErrorDiagram diagram = error_diagram(ind, make_extremes(extreme_days), after);

    REQUIRE(!diagram.points.empty());
    CHECK(diagram.points.front().unpredicted_fraction < 1.0);
    CHECK(diagram.points.back().unpredicted_fraction == 0.0);
    for (std::size_t t = 0; t < diagram.points.size(); ++t) {
      CHECK(diagram.points[t].alarm_fraction > 0.0);
      CHECK(diagram.points[t].alarm_fraction <= 1.0);
      if (t > 0) {
        CHECK(diagram.points[t].alarm_fraction > diagram.points[t - 1].alarm_fraction);
        CHECK(diagram.points[t].unpredicted_fraction <
              diagram.points[t - 1].unpredicted_fraction);
      }
    }
    const double p = p_value(diagram);
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
    CHECK(p_value_trapezoid(diagram) <= p);
  }
}

TEST_CASE("random indicators average a p-value of one half", "[evaluation][null]") {
  const auto y = test::random_log_series(77, 800, /*with_degenerate_runs=*/false);
  const std::size_t scope = 30;
  const std::size_t after = 10;
  const ExtremeSet ext = detect_extremes(y, ExtremeKind::Peak, 20, after);
  REQUIRE(ext.positions.size() >= 5);

  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double sum = 0.0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> values(y.size() - scope);
    for (double& v : values) {
      v = uniform(rng);
    }
    sum += p_value(error_diagram(make_indicator(y.size(), scope, values), ext, after));
  }
  const double mean = sum / trials;
  CHECK(mean > 0.44);
  CHECK(mean < 0.56);
}

TEST_CASE("shuffled-indicator null is random-grade, not signal-grade",
          "[evaluation][null]") {
  // Real indicator values are coarse multiples of 1/scope; the big tie
  // groups land each descent step on its right edge, so the shuffled null
  // sits somewhat above the tie-free 0.5 (a constant indicator is the
  // extreme case at 1.0). What matters is that it stays far above any
  // genuine signal.
  const auto y = test::random_log_series(78, 700, /*with_degenerate_runs=*/false);
  const std::size_t scope = 40;
  const std::size_t after = 8;
  const auto ind = peak_indicator(y, scope);
  const auto ext = detect_extremes(y, ExtremeKind::Peak, 15, after);
  REQUIRE(!ext.positions.empty());
  const double null_p = shuffled_null_p_value(ind, ext, after, 0, 99, 40);
  CHECK(null_p > 0.4);
  CHECK(null_p < 0.8);
}

TEST_CASE("quartile summary follows the inclusive convention", "[evaluation][stats]") {
  const QuartileSummary s = quartile_summary({0.1, 0.2, 0.3, 0.4});
  CHECK(s.median == Catch::Approx(0.25));
  CHECK(s.q1 == Catch::Approx(0.175));
  CHECK(s.q3 == Catch::Approx(0.325));
  CHECK(s.whisker_low == 0.1);
  CHECK(s.whisker_high == 0.4);
  CHECK(s.outliers.empty());
}

TEST_CASE("degenerate quartile summaries", "[evaluation][stats]") {
  const QuartileSummary all_equal = quartile_summary({0.3, 0.3, 0.3, 0.3, 0.3});
  CHECK(all_equal.q1 == 0.3);
  CHECK(all_equal.median == 0.3);
  CHECK(all_equal.q3 == 0.3);
  CHECK(all_equal.outliers.empty());

  const QuartileSummary single = quartile_summary({0.7});
  CHECK(single.q1 == 0.7);
  CHECK(single.whisker_low == 0.7);
  CHECK(single.whisker_high == 0.7);

  CHECK_THROWS_AS(quartile_summary({}), DataError);
}

TEST_CASE("far-out value is flagged as the only outlier", "[evaluation][stats]") {
  std::vector<double> values{0.10, 0.11, 0.12, 0.13, 0.14, 0.15, 0.16, 0.17};
  values.push_back(0.9);  // way beyond q3 + 1.5 IQR
  const QuartileSummary s = quartile_summary(values);
  REQUIRE(s.outliers.size() == 1);
  CHECK(s.outliers[0] == 0.9);
  CHECK(s.whisker_high <= 0.17);
}

TEST_CASE("singleton sweep equals the direct evaluation", "[evaluation][sweep]") {
  const PriceSeries series = gen_synthetic(synthetic_preset("bubble", 5));
  const auto y = series.log_prices();

  const std::vector<std::size_t> scopes{262};
  const std::vector<std::size_t> afters{45};
  const std::vector<std::size_t> befores{131};
  const SweepResult sweep =
      parameter_sweep(y, scopes, afters, befores, ExtremeKind::Peak, 0, 2);
  REQUIRE(sweep.cells.size() == 1);
  REQUIRE(sweep.cells[0].valid);

  const auto ind = peak_indicator(y, 262);
  const auto ext = detect_extremes(y, ExtremeKind::Peak, 131, 45);
  const double direct = p_value(error_diagram(ind, ext, 45));
  CHECK(sweep.cells[0].p == direct);
  CHECK(sweep.stats.q1 == direct);
  CHECK(sweep.stats.median == direct);
  CHECK(sweep.stats.q3 == direct);
}

TEST_CASE("default grid spans exactly 1000 combinations", "[evaluation][sweep]") {
  CHECK(default_scope_grid().size() == 10);
  CHECK(default_scope_grid().front() == 200);
  CHECK(default_scope_grid().back() == 470);
  CHECK(default_window_grid().size() == 10);
  CHECK(default_window_grid().front() == 30);
  CHECK(default_window_grid().back() == 165);
  CHECK(default_scope_grid().size() * default_window_grid().size() *
            default_window_grid().size() ==
        1000);
}

TEST_CASE("unusable triples are marked invalid and excluded", "[evaluation][sweep]") {
  const auto y = test::random_log_series(55, 300);
  const std::vector<std::size_t> scopes{200, 290};
  const std::vector<std::size_t> afters{30};
  const std::vector<std::size_t> befores{50};
  const SweepResult sweep =
      parameter_sweep(y, scopes, afters, befores, ExtremeKind::Peak, 0, 1);
  REQUIRE(sweep.cells.size() == 2);
  CHECK(sweep.cells[0].valid);
  CHECK_FALSE(sweep.cells[1].valid);  // 300 <= 290 + 30
  CHECK(sweep.invalid == 1);
}

TEST_CASE("sweep cells are ordered S-major, then a, then b", "[evaluation][sweep]") {
  const auto y = test::random_log_series(56, 500);
  const std::vector<std::size_t> scopes{50, 60};
  const std::vector<std::size_t> afters{10, 20};
  const std::vector<std::size_t> befores{15, 25};
  const SweepResult sweep =
      parameter_sweep(y, scopes, afters, befores, ExtremeKind::Trough, 0, 3);
  REQUIRE(sweep.cells.size() == 8);
  std::size_t ci = 0;
  for (std::size_t s : scopes) {
    for (std::size_t a : afters) {
      for (std::size_t b : befores) {
        CHECK(sweep.cells[ci].scope == s);
        CHECK(sweep.cells[ci].after == a);
        CHECK(sweep.cells[ci].before == b);
        ++ci;
      }
    }
  }
}

TEST_CASE("rescaling prices moves no diagram point", "[evaluation][property]") {
  const PriceSeries base = gen_synthetic(synthetic_preset("mixed", 9));
  std::vector<double> scaled_prices(base.prices().begin(), base.prices().end());
  std::vector<Date> dates;
  for (std::size_t pos = 0; pos < base.size(); ++pos) {
    dates.push_back(base.date(pos));
  }
  for (double& p : scaled_prices) {
    p *= 3.7;
  }
  const PriceSeries scaled(std::move(dates), std::move(scaled_prices), "scaled");

  const auto diagram_of = [](const PriceSeries& s) {
    const auto ind = peak_indicator(s.log_prices(), 100);
    const auto ext = detect_extremes(s.log_prices(), ExtremeKind::Peak, 60, 25);
    return error_diagram(ind, ext, 25);
  };
  const ErrorDiagram a = diagram_of(base);
  const ErrorDiagram b = diagram_of(scaled);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t t = 0; t < a.points.size(); ++t) {
    REQUIRE(a.points[t].alarm_fraction == b.points[t].alarm_fraction);
    REQUIRE(a.points[t].unpredicted_fraction == b.points[t].unpredicted_fraction);
  }
  REQUIRE(p_value(a) == p_value(b));
}
