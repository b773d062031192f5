#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pckhdmr/experiments.hpp"
#include "pckhdmr/surrogate.hpp"

namespace {

using nlohmann::json;
using namespace pckhdmr;

// Flag values layered over the config file; only flags the user passed
// override file values.
struct Flags {
  std::string config_path;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::vector<std::string> functions;
  std::optional<double> C;
  std::optional<double> epsilon;
  std::optional<long long> budget;
  std::optional<int> replicates;
  std::optional<int> validation;
  std::optional<int> cantilever_seeds;
  std::optional<int> mc_samples;
  std::vector<int> dimensions;
  std::vector<long long> budgets;
  std::optional<std::string> pc_mode;
  std::optional<int> max_degree;
  // fit-only
  std::string fit_function;
  std::string fit_method = "pc-kriging-hdmr";
  std::string model_out;
};

RunOptions options_from_config(const json& cfg) {
  RunOptions o;
  if (cfg.contains("seed")) o.seed = cfg.at("seed").get<std::uint64_t>();
  if (cfg.contains("validation")) o.validation = cfg.at("validation").get<int>();
  if (cfg.contains("C")) o.build.C = cfg.at("C").get<double>();
  if (cfg.contains("epsilon")) {
    o.build.epsilon = cfg.at("epsilon").get<double>();
    o.epsilon = o.build.epsilon;
  }
  if (cfg.contains("linearity_tol")) {
    o.build.linearity_tol = cfg.at("linearity_tol").get<double>();
  }
  if (cfg.contains("stage1_max")) o.build.stage1_max = cfg.at("stage1_max").get<int>();
  if (cfg.contains("stage2_max")) o.build.stage2_max = cfg.at("stage2_max").get<int>();
  if (cfg.contains("probe_count")) {
    o.build.probe_count = cfg.at("probe_count").get<int>();
  }
  if (cfg.contains("pc_mode")) {
    o.build.surrogate.pc_mode = pc_mode_from_string(cfg.at("pc_mode").get<std::string>());
  }
  if (cfg.contains("max_degree")) {
    o.build.surrogate.max_degree = cfg.at("max_degree").get<int>();
  }
  if (cfg.contains("methods")) {
    o.methods = cfg.at("methods").get<std::vector<std::string>>();
  }
  if (cfg.contains("functions")) {
    o.functions = cfg.at("functions").get<std::vector<std::string>>();
  }
  if (cfg.contains("budget") && !cfg.at("budget").is_null()) {
    o.budget = cfg.at("budget").get<long long>();
  }
  if (cfg.contains("replicates")) o.replicates = cfg.at("replicates").get<int>();
  if (cfg.contains("dimensions")) {
    o.dimensions = cfg.at("dimensions").get<std::vector<int>>();
  }
  if (cfg.contains("budgets")) {
    o.budgets = cfg.at("budgets").get<std::vector<long long>>();
  }
  if (cfg.contains("cantilever_seeds")) {
    o.cantilever_seeds = cfg.at("cantilever_seeds").get<int>();
  }
  if (cfg.contains("sensitivity_samples")) {
    o.sensitivity_samples = cfg.at("sensitivity_samples").get<int>();
  }
  return o;
}

RunOptions build_options(const Flags& f) {
  RunOptions o;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + f.config_path);
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw std::runtime_error("failed to parse config file " + f.config_path + ": " +
                               e.what());
    }
    o = options_from_config(cfg);
  }
  if (f.seed) o.seed = *f.seed;
  if (!f.methods.empty()) o.methods = f.methods;
  if (!f.functions.empty()) o.functions = f.functions;
  if (f.C) o.build.C = *f.C;
  if (f.epsilon) {
    o.build.epsilon = *f.epsilon;
    o.epsilon = f.epsilon;
  }
  if (f.budget) o.budget = *f.budget;
  if (f.replicates) o.replicates = *f.replicates;
  if (f.validation) o.validation = *f.validation;
  if (f.cantilever_seeds) o.cantilever_seeds = *f.cantilever_seeds;
  if (f.mc_samples) o.sensitivity_samples = *f.mc_samples;
  if (!f.dimensions.empty()) o.dimensions = f.dimensions;
  if (!f.budgets.empty()) o.budgets = f.budgets;
  if (f.pc_mode) o.build.surrogate.pc_mode = pc_mode_from_string(*f.pc_mode);
  if (f.max_degree) o.build.surrogate.max_degree = *f.max_degree;
  return o;
}

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--seed", f.seed, "Base seed (overrides config)");
  cmd->add_option("--out", f.out, "Output path (default: <experiment>.<format>)");
  cmd->add_option("--format", f.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--method", f.methods,
                  "Method list: pc-kriging-hdmr, kriging-hdmr, pce-hdmr, kriging-full")
      ->delimiter(',');
  cmd->add_option("--function", f.functions, "Benchmark function name list")
      ->delimiter(',');
  cmd->add_option("--C", f.C, "Interval split ratio in (0,1)");
  cmd->add_option("--epsilon", f.epsilon, "Adaptive convergence tolerance");
  cmd->add_option("--budget", f.budget, "Evaluation budget per build");
  cmd->add_option("--validation", f.validation, "Validation draws per row");
  cmd->add_option("--pc-mode", f.pc_mode, "Trend selection: spc or opc")
      ->check(CLI::IsMember({"spc", "opc"}));
  cmd->add_option("--max-degree", f.max_degree, "Polynomial total-degree cap");
}

int run_guarded(const std::string& experiment, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"experiment", experiment}}.dump() << "\n";
    return 1;
  }
}

void emit(const ResultTable& table, const Flags& f, const std::string& experiment) {
  const std::string path =
      f.out.empty() ? experiment + "." + f.format : f.out;
  table.write(path, f.format);
  std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-decomposition surrogate modeling experiments"};
  app.require_subcommand(1);

  Flags coupling_f, sweep_f, accuracy_f, cost_f, cantilever_f, sensitivity_f, fit_f;

  CLI::App* coupling =
      app.add_subcommand("coupling", "Detect and report the coupling matrix");
  add_common_flags(coupling, coupling_f);

  CLI::App* sweep = app.add_subcommand(
      "c-sweep", "Sweep the split ratio C with replicate builds");
  add_common_flags(sweep, sweep_f);
  sweep->add_option("--replicates", sweep_f.replicates, "Builds per C value");

  CLI::App* accuracy =
      app.add_subcommand("accuracy", "Accuracy study over the test functions");
  add_common_flags(accuracy, accuracy_f);

  CLI::App* cost = app.add_subcommand("cost", "Evaluation-count growth study");
  add_common_flags(cost, cost_f);
  cost->add_option("--dimensions", cost_f.dimensions, "Dimension list")
      ->delimiter(',');

  CLI::App* cantilever = app.add_subcommand(
      "cantilever", "Budgeted study on the cantilever limit state");
  add_common_flags(cantilever, cantilever_f);
  cantilever->add_option("--budgets", cantilever_f.budgets, "Budget list")
      ->delimiter(',');
  cantilever->add_option("--seeds", cantilever_f.cantilever_seeds,
                         "Independent seeds per cell");

  CLI::App* sensitivity = app.add_subcommand(
      "sensitivity", "Variance-based sensitivity ranking");
  add_common_flags(sensitivity, sensitivity_f);
  sensitivity->add_option("--mc", sensitivity_f.mc_samples, "Monte Carlo draws");

  CLI::App* fit = app.add_subcommand("fit", "Fit one function and report metrics");
  add_common_flags(fit, fit_f);
  fit->add_option("--fit-function", fit_f.fit_function, "Function to fit")
      ->required();
  fit->add_option("--fit-method", fit_f.fit_method, "Method to fit with");
  fit->add_option("--model-out", fit_f.model_out, "Save the fitted model document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << json{{"error", e.what()}, {"experiment", "argv"}}.dump() << "\n";
    }
    return app.exit(e);
  }

  if (app.got_subcommand(coupling)) {
    return run_guarded("coupling", [&] {
      emit(run_coupling(build_options(coupling_f)), coupling_f, "coupling");
    });
  }
  if (app.got_subcommand(sweep)) {
    return run_guarded("c-sweep", [&] {
      emit(run_c_sweep(build_options(sweep_f)), sweep_f, "c-sweep");
    });
  }
  if (app.got_subcommand(accuracy)) {
    return run_guarded("accuracy", [&] {
      emit(run_accuracy(build_options(accuracy_f)), accuracy_f, "accuracy");
    });
  }
  if (app.got_subcommand(cost)) {
    return run_guarded("cost", [&] {
      emit(run_cost(build_options(cost_f)), cost_f, "cost");
    });
  }
  if (app.got_subcommand(cantilever)) {
    return run_guarded("cantilever", [&] {
      emit(run_cantilever(build_options(cantilever_f)), cantilever_f, "cantilever");
    });
  }
  if (app.got_subcommand(sensitivity)) {
    return run_guarded("sensitivity", [&] {
      emit(run_sensitivity(build_options(sensitivity_f)), sensitivity_f,
           "sensitivity");
    });
  }
  if (app.got_subcommand(fit)) {
    return run_guarded("fit", [&] {
      emit(run_fit(build_options(fit_f), fit_f.fit_function, fit_f.fit_method,
                   fit_f.model_out),
           fit_f, "fit");
    });
  }
  return 0;
}
