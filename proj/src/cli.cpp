#include "visnet/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string_view>

#include <CLI11.hpp>

#include "visnet/csv.hpp"
#include "visnet/errors.hpp"
#include "visnet/evaluation.hpp"
#include "visnet/extremes.hpp"
#include "visnet/indicator.hpp"
#include "visnet/kernels.hpp"
#include "visnet/network.hpp"
#include "visnet/series.hpp"
#include "visnet/synthetic.hpp"

namespace fs = std::filesystem;

namespace visnet::cli {
namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string synthetic;  // preset name, alternative to inputs
  std::string price_column = "close";
  std::string date_column = "date";

  std::size_t scope = 262;
  std::size_t before = 131;
  std::size_t after = 45;
  std::size_t horizon = 0;
  bool raw = false;  // network on raw closes instead of log-prices
  std::string kind = "both";

  std::string out_dir = ".";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
  std::string kernel = "auto";

  // sweep grid overrides
  std::vector<std::size_t> grid_scope;
  std::vector<std::size_t> grid_after;
  std::vector<std::size_t> grid_before;

  // mark
  double threshold = 0.1;

  // synth
  std::size_t length = 2000;
  double noise = 0.01;
  std::string segments;

  // network export
  std::string link_kind = "visibility";
  std::size_t network_scope = 0;  // 0 = unlimited
};

std::vector<ExtremeKind> selected_kinds(const RunConfig& cfg) {
  if (cfg.kind == "peak") {
    return {ExtremeKind::Peak};
  }
  if (cfg.kind == "trough") {
    return {ExtremeKind::Trough};
  }
  if (cfg.kind == "both") {
    return {ExtremeKind::Peak, ExtremeKind::Trough};
  }
  throw UsageError("--kind must be peak, trough or both");
}

std::vector<Segment> parse_segments(std::string_view text) {
  std::vector<Segment> segments;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view item = text.substr(start, end - start);
    if (!item.empty()) {
      const std::size_t c1 = item.find(':');
      const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                          : item.find(':', c1 + 1);
      if (c2 == std::string_view::npos) {
        throw UsageError("segment '" + std::string(item) + "' is not start:end:regime");
      }
      const auto from = csv::parse_double(item.substr(0, c1));
      const auto to = csv::parse_double(item.substr(c1 + 1, c2 - c1 - 1));
      if (!from || !to || *from < 1 || *to < *from) {
        throw UsageError("segment '" + std::string(item) + "' has invalid bounds");
      }
      segments.push_back({static_cast<std::size_t>(*from), static_cast<std::size_t>(*to),
                          parse_regime(item.substr(c2 + 1))});
    }
    start = end + 1;
  }
  return segments;
}

std::vector<PriceSeries> load_inputs(const RunConfig& cfg) {
  std::vector<PriceSeries> series;
  if (!cfg.synthetic.empty()) {
    if (!cfg.inputs.empty()) {
      throw UsageError("pass either --input or --synthetic, not both");
    }
    series.push_back(gen_synthetic(synthetic_preset(cfg.synthetic, cfg.seed)));
    return series;
  }
  if (cfg.inputs.empty()) {
    throw UsageError("no input: pass --input FILE or --synthetic PRESET");
  }
  series.reserve(cfg.inputs.size());
  for (const std::string& path : cfg.inputs) {
    series.push_back(load_csv(path, cfg.price_column, cfg.date_column));
  }
  return series;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw DataError("cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

void apply_kernel(const RunConfig& cfg) { select_kernel(cfg.kernel); }

// ---- subcommands ----------------------------------------------------------

int cmd_synth(const RunConfig& cfg) {
  SyntheticSpec spec;
  if (!cfg.segments.empty()) {
    spec.length = cfg.length;
    spec.noise_scale = cfg.noise;
    spec.seed = cfg.seed;
    spec.segments = parse_segments(cfg.segments);
  } else {
    const std::string preset = cfg.synthetic.empty() ? "bubble" : cfg.synthetic;
    spec = synthetic_preset(preset, cfg.seed);
  }
  const PriceSeries series = gen_synthetic(spec);
  const fs::path out = ensure_out_dir(cfg) / "synthetic.csv";
  write_series_csv(series, out, !cfg.no_timestamp);
  std::cout << "wrote " << out.string() << " (" << series.size() << " days)\n";
  return kExitOk;
}

int cmd_indicator(const RunConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const auto kinds = selected_kinds(cfg);
  for (const PriceSeries& series : load_inputs(cfg)) {
    const auto y = series.values(!cfg.raw);
    for (ExtremeKind kind : kinds) {
      const IndicatorSeries indicator =
          compute_indicator(kind, y, cfg.scope, series.label(), cfg.jobs);
      const fs::path out =
          dir / (series.label() + "_" + std::string(to_string(kind)) + "_indicator.csv");
      write_indicator_csv(indicator, series, out, !cfg.no_timestamp);
      std::cout << "wrote " << out.string() << " (" << indicator.values().size()
                << " defined days)\n";
    }
  }
  return kExitOk;
}

int cmd_mark(const RunConfig& cfg) {
  if (!(cfg.threshold > 0.0) || cfg.threshold > 1.0) {
    throw UsageError("--threshold must lie in (0, 1]");
  }
  const fs::path dir = ensure_out_dir(cfg);
  const auto kinds = selected_kinds(cfg);
  for (const PriceSeries& series : load_inputs(cfg)) {
    const auto y = series.values(!cfg.raw);
    for (ExtremeKind kind : kinds) {
      const IndicatorSeries indicator =
          compute_indicator(kind, y, cfg.scope, series.label(), cfg.jobs);
      const fs::path out =
          dir / (series.label() + "_" + std::string(to_string(kind)) + "_marks.csv");
      std::ofstream file(out);
      if (!file) {
        throw DataError("cannot write '" + out.string() + "'");
      }
      if (!cfg.no_timestamp) {
        file << csv::timestamp_line();
      }
      file << "# kind=" << to_string(kind) << " scope=" << cfg.scope
           << " threshold=" << csv::format_double(cfg.threshold) << '\n';
      file << "day_index,date,price,indicator_value\n";
      std::size_t rows = 0;
      for (std::size_t pos = indicator.first_position(); pos < series.size(); ++pos) {
        if (indicator.at(pos) > cfg.threshold) {
          file << series.day_index(pos) << ',' << series.date(pos).iso() << ','
               << csv::format_double(series.price(pos)) << ','
               << csv::format_double(indicator.at(pos)) << '\n';
          ++rows;
        }
      }
      if (rows == 0) {
        std::cerr << "warning: no " << to_string(kind) << " indicator value exceeds "
                  << csv::format_double(cfg.threshold) << "; " << out.string()
                  << " has no rows\n";
      }
      std::cout << "wrote " << out.string() << " (" << rows << " marked days)\n";
    }
  }
  return kExitOk;
}

int cmd_extremes(const RunConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const auto kinds = selected_kinds(cfg);
  for (const PriceSeries& series : load_inputs(cfg)) {
    const auto y = series.values(!cfg.raw);
    std::vector<ExtremeSet> sets;
    for (ExtremeKind kind : kinds) {
      sets.push_back(detect_extremes(y, kind, cfg.before, cfg.after));
    }
    const fs::path out = dir / (series.label() + "_extremes.csv");
    write_extremes_csv(sets, series, out, !cfg.no_timestamp);
    std::size_t count = 0;
    for (const ExtremeSet& set : sets) {
      count += set.positions.size();
    }
    std::cout << "wrote " << out.string() << " (" << count << " extremes)\n";
  }
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const auto inputs = load_inputs(cfg);

  std::vector<std::string> summary_rows(inputs.size());
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    const PriceSeries& series = inputs[idx];
    const auto y = series.values(!cfg.raw);
    std::string row = series.label();
    for (ExtremeKind kind : {ExtremeKind::Peak, ExtremeKind::Trough}) {
      const IndicatorSeries indicator =
          compute_indicator(kind, y, cfg.scope, series.label(), cfg.jobs);
      const ExtremeSet extremes = detect_extremes(y, kind, cfg.before, cfg.after);
      if (extremes.positions.empty()) {
        throw DataError(series.label() + ": no " + std::string(to_string(kind)) +
                        "s under windows b=" + std::to_string(cfg.before) +
                        " a=" + std::to_string(cfg.after));
      }
      const ErrorDiagram diagram = error_diagram(indicator, extremes, cfg.after, cfg.horizon);
      const fs::path out =
          dir / (series.label() + "_" + std::string(to_string(kind)) + "_error_diagram.csv");
      write_error_diagram_csv(diagram, out, !cfg.no_timestamp);
      row += "," + csv::format_double(p_value(diagram));
      std::cout << series.label() << ' ' << to_string(kind)
                << " p=" << csv::format_double(p_value(diagram))
                << " (extremes=" << diagram.total_extremes << ")\n";
    }
    summary_rows[idx] = row;
  }

  const fs::path summary = dir / "summary.csv";
  std::ofstream out(summary);
  if (!out) {
    throw DataError("cannot write '" + summary.string() + "'");
  }
  if (!cfg.no_timestamp) {
    out << csv::timestamp_line();
  }
  out << "ticker,peak_p,trough_p\n";
  for (const std::string& row : summary_rows) {
    out << row << '\n';
  }
  std::cout << "wrote " << summary.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const fs::path dir = ensure_out_dir(cfg);
  const auto scopes = cfg.grid_scope.empty() ? default_scope_grid() : cfg.grid_scope;
  const auto afters = cfg.grid_after.empty() ? default_window_grid() : cfg.grid_after;
  const auto befores = cfg.grid_before.empty() ? default_window_grid() : cfg.grid_before;
  const auto kinds = selected_kinds(cfg);

  std::vector<double> medians[2];
  for (const PriceSeries& series : load_inputs(cfg)) {
    const auto y = series.values(!cfg.raw);
    for (ExtremeKind kind : kinds) {
      const SweepResult sweep =
          parameter_sweep(y, scopes, afters, befores, kind, cfg.horizon, cfg.jobs);
      const std::string stem = series.label() + "_" + std::string(to_string(kind));
      write_sweep_csv(sweep, dir / (stem + "_sweep.csv"), !cfg.no_timestamp);
      write_stats_json(sweep.stats, dir / (stem + "_sweep_stats.json"));
      medians[kind == ExtremeKind::Trough ? 1 : 0].push_back(sweep.stats.median);
      std::cout << series.label() << ' ' << to_string(kind) << " sweep: "
                << sweep.cells.size() << " triples, " << sweep.invalid
                << " invalid, median p=" << csv::format_double(sweep.stats.median) << '\n';
    }
  }
  for (int k = 0; k < 2; ++k) {
    if (!medians[k].empty()) {
      double sum = 0.0;
      for (double m : medians[k]) {
        sum += m;
      }
      std::cout << (k == 0 ? "peak" : "trough") << " mean of medians: "
                << csv::format_double(sum / static_cast<double>(medians[k].size())) << '\n';
    }
  }
  return kExitOk;
}

int cmd_network(const RunConfig& cfg) {
  LinkKind kind;
  if (cfg.link_kind == "visibility") {
    kind = LinkKind::Visibility;
  } else if (cfg.link_kind == "invisibility") {
    kind = LinkKind::AbsoluteInvisibility;
  } else {
    throw UsageError("--link must be visibility or invisibility");
  }
  const fs::path dir = ensure_out_dir(cfg);
  for (const PriceSeries& series : load_inputs(cfg)) {
    const auto y = series.values(!cfg.raw);
    const auto scope = cfg.network_scope == 0 ? std::nullopt
                                              : std::optional<std::size_t>(cfg.network_scope);
    const Network network = build_network(y, kind, scope);
    const std::string stem = series.label() + "_" + cfg.link_kind;
    write_edge_list(network, dir / (stem + "_edges.txt"));
    write_degree_csv(network, dir / (stem + "_degrees.csv"));
    std::cout << "wrote " << (dir / (stem + "_edges.txt")).string() << " ("
              << network.edges.size() << " edges)\n";
  }
  return kExitOk;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input,-i", cfg.inputs, "input CSV file(s)");
  cmd->add_option("--synthetic", cfg.synthetic,
                  "synthetic preset instead of input files (bubble, calm, mixed)");
  cmd->add_option("--price-column", cfg.price_column, "price column name (default close)");
  cmd->add_option("--date-column", cfg.date_column, "date column name (default date)");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"visibility-network indicators for financial extremes"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--scope,-S", cfg.scope, "look-back scope in trading days (default 262)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  app.add_option("--before,-b", cfg.before, "extreme window, days before (default 131)")
      ->check(CLI::PositiveNumber);
  app.add_option("--after,-a", cfg.after, "extreme window, days after (default 45)")
      ->check(CLI::PositiveNumber);
  app.add_option("--horizon", cfg.horizon,
                 "alarm horizon: an alarm at day d predicts extremes in [d, d+h]");
  app.add_flag("--raw", cfg.raw, "build networks on raw closes instead of log-prices");
  app.add_flag("--log,!--no-log", [](std::int64_t) {},
               "build networks on log-prices (default)");
  app.add_option("--out,-o", cfg.out_dir, "output directory (default .)");
  app.add_option("--jobs,-j", cfg.jobs, "worker threads (default 1)");
  app.add_option("--seed", cfg.seed, "seed for synthetic data");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "omit the generated-at comment line");
  app.add_option("--kernel", cfg.kernel, "degree-scan kernel: auto, scalar, avx2");
  app.add_option("--kind", cfg.kind, "peak, trough or both (default both)");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic price series CSV");
  synth->add_option("--synthetic", cfg.synthetic, "preset name (default bubble)");
  synth->add_option("--length", cfg.length, "series length in days (with --segments)");
  synth->add_option("--noise", cfg.noise, "log-return noise std dev (with --segments)")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--segments", cfg.segments,
                    "comma-separated start:end:regime list (regimes: up, down, exp, flat)");

  CLI::App* indicator =
      app.add_subcommand("indicator", "compute peak/trough indicator series");
  add_input_options(indicator, cfg);

  CLI::App* mark =
      app.add_subcommand("mark", "list days whose indicator exceeds a threshold");
  add_input_options(mark, cfg);
  mark->add_option("--threshold,-t", cfg.threshold, "indicator threshold in (0, 1]")
      ->required();

  CLI::App* extremes =
      app.add_subcommand("extremes", "detect realized peaks/troughs under the (b, a) windows");
  add_input_options(extremes, cfg);

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "error diagrams and p-values for both extreme kinds");
  add_input_options(evaluate, cfg);

  CLI::App* sweep =
      app.add_subcommand("sweep", "p-values over the (S, a, b) parameter grid");
  add_input_options(sweep, cfg);
  sweep->add_option("--grid-S", cfg.grid_scope, "scope grid (default 200..470 step 30)");
  sweep->add_option("--grid-a", cfg.grid_after, "after grid (default 30..165 step 15)");
  sweep->add_option("--grid-b", cfg.grid_before, "before grid (default 30..165 step 15)");

  CLI::App* network =
      app.add_subcommand("network", "debug export of the full link network");
  add_input_options(network, cfg);
  network->add_option("--link", cfg.link_kind, "visibility or invisibility");
  network->add_option("--network-scope", cfg.network_scope,
                      "limit links to pairs at most this many days apart (0 = none)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("visnet");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& a : argv_storage) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    apply_kernel(cfg);
    if (synth->parsed()) return cmd_synth(cfg);
    if (indicator->parsed()) return cmd_indicator(cfg);
    if (mark->parsed()) return cmd_mark(cfg);
    if (extremes->parsed()) return cmd_extremes(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (network->parsed()) return cmd_network(cfg);
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(args);
}

}  // namespace visnet::cli
