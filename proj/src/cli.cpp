#include "faultgan/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "faultgan/analysis.hpp"
#include "faultgan/emit.hpp"
#include "faultgan/error.hpp"
#include "faultgan/hopfield.hpp"
#include "faultgan/netlist.hpp"
#include "faultgan/sampler.hpp"
#include "faultgan/table1.hpp"
#include "json.hpp"

namespace faultgan {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Raised when a run completes but has nothing to report.
class EmptyResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view tok(text.data() + start, comma - start);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error("epsilon grid entry `" + std::string(tok) + "` is not a number");
    }
    grid.push_back(v);
    start = comma + 1;
  }
  return grid;
}

void check_epsilon(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error("epsilon out of range [0, 1]: " + format_double(eps));
}

Circuit resolve_circuit(RunConfig& cfg) {
  if (cfg.circuit.empty()) {
    if (cfg.netlist_path.empty()) throw Error("no circuit given (use --ckt)");
    if (!fs::exists(cfg.netlist_path)) throw Error("cannot open netlist " + cfg.netlist_path);
    cfg.circuit = serialize_netlist(load_netlist(cfg.netlist_path));
  }
  return parse_netlist(cfg.circuit);
}

ExperimentConfig experiment_from(RunConfig& cfg, const Circuit& circuit) {
  if (!cfg.seed) throw Error("missing --seed: every run must be seeded explicitly");
  const auto mode = parse_mode(cfg.mode);
  if (!mode) throw Error("unknown mode `" + cfg.mode + "` (fault-compare or target-search)");
  if (cfg.trials < 1) throw Error("trials must be at least 1");
  if (cfg.max_iterations < 1) throw Error("max iterations must be at least 1");
  ExperimentConfig e(circuit);
  e.faults = parse_faults(cfg.faults);
  e.epsilon = cfg.epsilon.value_or(0.1);
  e.max_iterations = cfg.max_iterations;
  e.trials = cfg.trials;
  e.mode = *mode;
  e.seed = *cfg.seed;
  e.memoize = cfg.memoize;
  e.workers = std::max(1U, cfg.workers);
  e.label = cfg.label.empty() ? cfg.faults : cfg.label;
  std::replace(e.label.begin(), e.label.end(), ',', '+');
  // Validate structural faults up front so errors surface before sampling.
  inject_all(e.ideal, e.faults);
  return e;
}

fs::path require_out(const RunConfig& cfg) {
  if (cfg.out_dir.empty()) throw Error("missing --out directory");
  return cfg.out_dir;
}

void write_echo(const RunConfig& cfg, const fs::path& dir) {
  write_text_file(dir / "run.json", run_config_to_json(cfg));
}

int cmd_simulate(RunConfig& cfg, std::ostream& out) {
  const Circuit circuit = resolve_circuit(cfg);
  check_epsilon(cfg.epsilon.value_or(0.1));
  const ExperimentConfig exp = experiment_from(cfg, circuit);
  const fs::path dir = require_out(cfg);
  const auto samples = run_experiment(exp);
  write_samples_csv(samples, dir / "samples.csv");
  write_text_file(dir / "scatter.svg", render_scatter(samples, circuit.width(), cfg.canvas, cfg.canvas));
  write_echo(cfg, dir);
  const IterationStats st = iteration_stats(samples);
  out << "trials " << st.trials << ", accepted " << st.accepted << ", mean iterations "
      << format_double(st.mean_iterations) << "\n";
  return kExitOk;
}

int cmd_sweep(RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tau > 0.0)) throw Error("tau must be positive");
  const fs::path dir = require_out(cfg);
  SweepResult sweep;
  if (!cfg.input_sweep.empty()) {
    sweep = parse_sweep_csv(read_text_file(cfg.input_sweep));
  } else {
    const Circuit circuit = resolve_circuit(cfg);
    if (cfg.grid.empty()) cfg.grid = default_epsilon_grid();
    for (double e : cfg.grid) check_epsilon(e);
    const ExperimentConfig base = experiment_from(cfg, circuit);
    sweep = run_sweep(base, cfg.grid, false);
  }
  const TransitionEstimate t = detect_transition(sweep, cfg.tau, cfg.min_samples);
  std::optional<ScalingFit> scaling;
  try {
    scaling = fit_iteration_scaling(sweep);
  } catch (const Error&) {
    scaling.reset();
  }
  write_text_file(dir / "sweep.csv", format_sweep_csv(sweep));
  write_text_file(dir / "transition.json", format_transition_json(t, scaling ? &*scaling : nullptr));
  write_echo(cfg, dir);
  out << "epsilon* " << (t.epsilon_star ? format_double(*t.epsilon_star) : std::string("none"))
      << " (tau " << format_double(t.tau) << ", min samples " << t.min_samples << ")\n";
  return kExitOk;
}

int cmd_table1(RunConfig& cfg, std::ostream& out) {
  const std::string report = format_table1_report(table1_report());
  out << report;
  if (!cfg.out_dir.empty()) {
    write_text_file(fs::path(cfg.out_dir) / "table1.txt", report);
    write_echo(cfg, cfg.out_dir);
  }
  return kExitOk;
}

int cmd_spectrum(RunConfig& cfg, std::ostream& out) {
  const fs::path dir = require_out(cfg);
  if (!cfg.seed) throw Error("missing --seed: every run must be seeded explicitly");
  std::vector<AgreementVector> ensemble;
  int width = 0;
  if (cfg.exhaustive > 0) {
    width = cfg.exhaustive;
    if (width > 16) throw Error("width: --exhaustive supports N <= 16");
    ensemble = exhaustive_ensemble(width);
  } else {
    const Circuit circuit = resolve_circuit(cfg);
    check_epsilon(cfg.epsilon.value_or(0.1));
    const ExperimentConfig exp = experiment_from(cfg, circuit);
    width = circuit.width();
    for (const auto& s : run_experiment(exp)) {
      if (!s.accepted) continue;
      ensemble.push_back(agreement_vector(decode_int(width, s.re), decode_int(width, s.im)));
    }
    if (ensemble.empty()) throw EmptyResult("no accepted samples: every trial exhausted its budget");
  }
  const EnergySpectrum spec = spectrum(ensemble);
  std::optional<CompletenessReport> completeness;
  if (width <= 16) completeness = completeness_check(width, ensemble);
  write_text_file(dir / "spectrum.json",
                  format_spectrum_json(spec, completeness ? &*completeness : nullptr));
  if (cfg.energies) write_text_file(dir / "energies.csv", format_energies_csv(spec));
  write_echo(cfg, dir);
  out << "P " << spec.ensemble_size() << ", N " << width << ", degeneracies";
  for (const auto& [k, m] : spec.manifolds()) out << ' ' << k << ':' << m.degeneracy();
  if (completeness) out << (completeness->complete() ? ", complete" : ", incomplete");
  out << '\n';
  return kExitOk;
}

int cmd_dataset(RunConfig& cfg, std::ostream& out) {
  const fs::path dir = require_out(cfg);
  if (cfg.runs.empty()) throw Error("dataset needs at least one --run label=faults");
  const Circuit circuit = resolve_circuit(cfg);
  check_epsilon(cfg.epsilon.value_or(0.1));
  std::vector<DatasetRun> runs;
  for (const auto& [label, faults] : cfg.runs) {
    RunConfig one = cfg;
    one.faults = faults;
    one.label = label;
    runs.push_back({label, experiment_from(one, circuit)});
  }
  const DatasetManifest m = emit_dataset(runs, dir, {cfg.bins, cfg.global_norm});
  write_echo(cfg, dir);
  for (const auto& e : m.entries) out << e.file << ' ' << e.label << ' ' << e.samples << '\n';
  return kExitOk;
}

}  // namespace

std::string run_config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["circuit"] = cfg.circuit;
  j["faults"] = cfg.faults;
  j["epsilon"] = cfg.epsilon ? ordered_json(*cfg.epsilon) : ordered_json(nullptr);
  j["grid"] = cfg.grid;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr);
  j["mode"] = cfg.mode;
  j["tau"] = cfg.tau;
  j["min_samples"] = cfg.min_samples;
  j["bins"] = cfg.bins;
  j["max_iterations"] = cfg.max_iterations;
  j["memoize"] = cfg.memoize;
  j["label"] = cfg.label;
  j["runs"] = ordered_json::array();
  for (const auto& [label, faults] : cfg.runs) j["runs"].push_back({{"label", label}, {"faults", faults}});
  j["global_norm"] = cfg.global_norm;
  j["canvas"] = cfg.canvas;
  j["exhaustive"] = cfg.exhaustive;
  j["energies"] = cfg.energies;
  j["input_sweep"] = cfg.input_sweep;
  return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: top level must be an object");
  RunConfig c;
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key) && !j[key].is_null()) j[key].get_to(field);
    };
    get("command", c.command);
    get("netlist", c.netlist_path);
    get("circuit", c.circuit);
    get("faults", c.faults);
    if (j.contains("epsilon") && !j["epsilon"].is_null()) c.epsilon = j["epsilon"].get<double>();
    get("grid", c.grid);
    get("trials", c.trials);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    get("mode", c.mode);
    get("out", c.out_dir);
    get("tau", c.tau);
    get("min_samples", c.min_samples);
    get("bins", c.bins);
    get("max_iterations", c.max_iterations);
    get("memoize", c.memoize);
    get("workers", c.workers);
    get("label", c.label);
    if (j.contains("runs")) {
      for (const auto& r : j["runs"]) c.runs.emplace_back(r.at("label").get<std::string>(), r.at("faults").get<std::string>());
    }
    get("global_norm", c.global_norm);
    get("canvas", c.canvas);
    get("exhaustive", c.exhaustive);
    get("energies", c.energies);
    get("input_sweep", c.input_sweep);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fault-tolerance estimation of gate networks by random sampling", "faultgan"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::string grid_text;
  std::vector<std::string> run_specs;
  // Option -> copier from the flag values into the effective config.
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> bound;
  auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> copy) { bound.emplace_back(opt, std::move(copy)); };

  auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--config", config_path, "JSON run configuration (flags override it)");
    bind(sub->add_option("--out", flags.out_dir, "output directory"), [&](RunConfig& c) { c.out_dir = flags.out_dir; });
    if (!sampling) return;
    bind(sub->add_option("--ckt", flags.netlist_path, "circuit netlist (.ckt)"), [&](RunConfig& c) {
      c.netlist_path = flags.netlist_path;
      c.circuit.clear();
    });
    bind(sub->add_option("--fault", flags.faults, "fault specs, comma separated"), [&](RunConfig& c) { c.faults = flags.faults; });
    bind(sub->add_option("--eps", flags.epsilon, "uncertainty level in [0, 1]"), [&](RunConfig& c) { c.epsilon = flags.epsilon; });
    bind(sub->add_option("--trials", flags.trials, "number of trials"), [&](RunConfig& c) { c.trials = flags.trials; });
    bind(sub->add_option("--seed", flags.seed, "random seed (required)"), [&](RunConfig& c) { c.seed = flags.seed; });
    bind(sub->add_option("--mode", flags.mode, "fault-compare or target-search"), [&](RunConfig& c) { c.mode = flags.mode; });
    bind(sub->add_option("--max-iter", flags.max_iterations, "iteration budget per trial"),
         [&](RunConfig& c) { c.max_iterations = flags.max_iterations; });
    bind(sub->add_flag("--memo", flags.memoize, "replay cached generator inputs (target-search)"),
         [&](RunConfig& c) { c.memoize = flags.memoize; });
    bind(sub->add_option("--workers", flags.workers, "worker threads (0 = all cores)"), [&](RunConfig& c) { c.workers = flags.workers; });
    bind(sub->add_option("--label", flags.label, "fault label for outputs"), [&](RunConfig& c) { c.label = flags.label; });
  };

  auto* simulate = app.add_subcommand("simulate", "one epsilon: samples.csv and scatter.svg");
  add_common(simulate, true);
  bind(simulate->add_option("--canvas", flags.canvas, "scatter canvas size in pixels"), [&](RunConfig& c) { c.canvas = flags.canvas; });

  auto* sweep = app.add_subcommand("sweep", "epsilon sweep: sweep.csv and transition.json");
  add_common(sweep, true);
  bind(sweep->add_option("--grid", grid_text, "comma-separated epsilon grid (default 0:0.05:0.5)"),
       [&](RunConfig& c) { c.grid = parse_grid(grid_text); });
  bind(sweep->add_option("--tau", flags.tau, "normalized residual threshold"), [&](RunConfig& c) { c.tau = flags.tau; });
  bind(sweep->add_option("--min-samples", flags.min_samples, "accepted samples needed per epsilon"),
       [&](RunConfig& c) { c.min_samples = flags.min_samples; });
  bind(sweep->add_option("--input-sweep", flags.input_sweep, "analyse an existing sweep.csv instead of sampling"),
       [&](RunConfig& c) { c.input_sweep = flags.input_sweep; });

  auto* table1 = app.add_subcommand("table1", "exhaustive check of the reversed gate compositions");
  add_common(table1, false);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Hopfield pair energies of accepted samples");
  add_common(spectrum_cmd, true);
  bind(spectrum_cmd->add_option("--exhaustive", flags.exhaustive, "enumerate all 2^N patterns of width N"),
       [&](RunConfig& c) { c.exhaustive = flags.exhaustive; });
  bind(spectrum_cmd->add_flag("--energies", flags.energies, "also write energies.csv"),
       [&](RunConfig& c) { c.energies = flags.energies; });

  auto* dataset = app.add_subcommand("dataset", "labelled histogram rasters and manifest.json");
  add_common(dataset, true);
  bind(dataset->add_option("--run", run_specs, "label=faults, repeatable"), [&](RunConfig& c) {
    c.runs.clear();
    for (const auto& spec : run_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) throw Error("--run expects label=faults, got `" + spec + "`");
      c.runs.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
    }
  });
  bind(dataset->add_option("--bins", flags.bins, "histogram bins per axis"), [&](RunConfig& c) { c.bins = flags.bins; });
  bind(dataset->add_flag("--global-norm", flags.global_norm, "normalize rasters by the global maximum"),
       [&](RunConfig& c) { c.global_norm = flags.global_norm; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = run_config_from_json(read_text_file(config_path));
      if (!cfg.command.empty() && cfg.command != sub->get_name()) {
        throw Error("config is for `" + cfg.command + "`, not `" + sub->get_name() + "`");
      }
    }
    cfg.command = sub->get_name();
    for (auto& [opt, copy] : bound) {
      if (opt->count() > 0) copy(cfg);
    }
    if (cfg.workers == 0) cfg.workers = std::max(1U, std::thread::hardware_concurrency());
    if (cfg.bins < 1 || cfg.bins > 4096) throw Error("bins must be in [1, 4096]");

    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "table1") return cmd_table1(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "dataset") return cmd_dataset(cfg, out);
    err << "error: unknown command\n";
    return kExitConfig;
  } catch (const EmptyResult& e) {
    err << "error: " << e.what() << '\n';
    return kExitEmpty;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace faultgan
