#include "pckhdmr/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <utility>

#include "pckhdmr/sensitivity.hpp"
#include "pckhdmr/serialization.hpp"

namespace pckhdmr {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct TimedBuild {
  std::shared_ptr<const HdmrModel> model;
  bool exhausted = false;
  double wall_ms = 0.0;
};

TimedBuild build_with_budget(const BenchmarkFunction& fn, const BuildConfig& cfg,
                             std::optional<long long> budget) {
  BudgetedFunction f(fn.arity, fn.evaluator, budget);
  Stopwatch clock;
  try {
    HdmrModel model = build_hdmr(f, fn.space, cfg);
    return {std::make_shared<HdmrModel>(std::move(model)), false, clock.ms()};
  } catch (const HdmrBuildError& e) {
    if (!e.partial_model()) throw;
    return {e.partial_model(), true, clock.ms()};
  }
}

RandomStream validation_stream(const RunOptions& opts, const std::string& function) {
  return RandomStream(opts.seed).substream(fnv1a("validate/" + function));
}

std::vector<std::string> resolve_methods(const RunOptions& opts,
                                         std::vector<std::string> defaults) {
  std::vector<std::string> methods =
      opts.methods.empty() ? std::move(defaults) : opts.methods;
  for (const std::string& m : methods) {
    if (!is_hdmr_method(m) && m != "kriging-full") {
      throw std::invalid_argument("unknown method: " + m);
    }
  }
  return methods;
}

std::vector<std::string> resolve_functions(const RunOptions& opts,
                                           std::vector<std::string> defaults) {
  std::vector<std::string> names =
      opts.functions.empty() ? std::move(defaults) : opts.functions;
  for (const std::string& n : names) find_function(n);  // rejects unknown names early
  return names;
}

BuildConfig config_for(const RunOptions& opts, const std::string& method,
                       std::uint64_t seed) {
  BuildConfig cfg = opts.build;
  SurrogateConfig s = opts.build.surrogate;
  s.backend = surrogate_for_method(method).backend;
  cfg.surrogate = s;
  cfg.seed = seed;
  return cfg;
}

json options_json(const std::string& experiment, const RunOptions& o) {
  return json{{"experiment", experiment},
              {"seed", o.seed},
              {"validation", o.validation},
              {"C", o.build.C},
              {"epsilon", o.build.epsilon},
              {"linearity_tol", o.build.linearity_tol},
              {"stage1_max", o.build.stage1_max},
              {"stage2_max", o.build.stage2_max},
              {"probe_count", o.build.probe_count},
              {"surrogate", to_string(o.build.surrogate.backend)},
              {"pc_mode", to_string(o.build.surrogate.pc_mode)},
              {"max_degree", o.build.surrogate.max_degree},
              {"methods", o.methods},
              {"functions", o.functions},
              {"budget", o.budget ? json(*o.budget) : json(nullptr)},
              {"replicates", o.replicates},
              {"dimensions", o.dimensions},
              {"budgets", o.budgets},
              {"cantilever_seeds", o.cantilever_seeds},
              {"sensitivity_samples", o.sensitivity_samples}};
}

struct Meta {
  json metadata;
  std::string hash;
};

Meta make_metadata(const std::string& experiment, const RunOptions& opts) {
  const json cfg = options_json(experiment, opts);
  const std::string hash = hash_hex(fnv1a(cfg.dump()));
  json md{{"experiment", experiment},
          {"generated_at", iso_timestamp_utc()},
          {"config_hash", hash},
          {"seed", opts.seed},
          {"config", cfg}};
  return {std::move(md), hash};
}

SampleSet uniform_training_set(const BenchmarkFunction& fn, long long n,
                               RandomStream& stream) {
  SampleSet data(fn.arity);
  int rejected = 0;
  while (data.size() < n) {
    Vector x(fn.arity);
    for (int i = 0; i < fn.arity; ++i) {
      x(i) = stream.uniform(fn.space.lower(i), fn.space.upper(i));
    }
    if (data.contains(x)) {
      if (++rejected > 1000) {
        throw std::runtime_error("uniform_training_set: cannot place distinct points");
      }
      continue;
    }
    data.add(x, fn.evaluator(x));
  }
  return data;
}

const std::vector<std::string> kMetricColumns = {
    "function", "method", "p",    "samples",    "r2",
    "raae",     "rmae",   "seed", "config_hash", "wall_ms"};

std::vector<std::string> metric_row(const std::string& function,
                                    const std::string& method, int p,
                                    long long samples, const MetricReport& m,
                                    std::uint64_t seed, const std::string& hash,
                                    double wall_ms) {
  return {function,
          method,
          std::to_string(p),
          std::to_string(samples),
          fmt_double(m.r2),
          fmt_double(m.raae),
          fmt_double(m.rmae),
          std::to_string(seed),
          hash,
          fmt_ms(wall_ms)};
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string ResultTable::to_csv() const {
  std::string out = "# " + metadata.dump() + "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(columns[c]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json_text() const {
  json rows_json = json::array();
  for (const auto& row : rows) {
    json obj;
    for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) {
      obj[columns[c]] = row[c];
    }
    rows_json.push_back(std::move(obj));
  }
  return json{{"metadata", metadata}, {"columns", columns}, {"rows", rows_json}}
      .dump(2);
}

void ResultTable::write(const std::string& path, const std::string& format) const {
  std::string text;
  if (format == "csv") {
    text = to_csv();
  } else if (format == "json") {
    text = to_json_text() + "\n";
  } else {
    throw std::invalid_argument("ResultTable::write: format must be csv or json");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

SurrogateConfig surrogate_for_method(const std::string& method) {
  SurrogateConfig cfg;
  if (method == "pc-kriging-hdmr") {
    cfg.backend = SurrogateBackend::PcKriging;
  } else if (method == "kriging-hdmr") {
    cfg.backend = SurrogateBackend::Kriging;
  } else if (method == "pce-hdmr") {
    cfg.backend = SurrogateBackend::Pce;
  } else {
    throw std::invalid_argument("not a decomposition method: " + method);
  }
  return cfg;
}

bool is_hdmr_method(const std::string& method) {
  return method == "pc-kriging-hdmr" || method == "kriging-hdmr" ||
         method == "pce-hdmr";
}

ResultTable run_coupling(const RunOptions& opts) {
  const std::string function =
      opts.functions.empty() ? "rosenbrock9" : opts.functions.front();
  const std::string method =
      opts.methods.empty() ? "pc-kriging-hdmr" : opts.methods.front();
  if (!is_hdmr_method(method)) {
    throw std::invalid_argument("run_coupling: needs a decomposition method");
  }
  const BenchmarkFunction fn = find_function(function);
  Meta meta = make_metadata("coupling", opts);

  TimedBuild built = build_with_budget(fn, config_for(opts, method, opts.seed),
                                       opts.budget);
  if (built.exhausted) {
    throw std::runtime_error(
        "run_coupling: evaluation budget exhausted; partial structure suppressed");
  }

  ResultTable table;
  table.columns = {"variable"};
  for (int j = 0; j < fn.arity; ++j) table.columns.push_back("x" + std::to_string(j + 1));
  const auto matrix = built.model->coupling_matrix();
  for (int i = 0; i < fn.arity; ++i) {
    std::vector<std::string> row{"x" + std::to_string(i + 1)};
    for (int j = 0; j < fn.arity; ++j) {
      row.push_back(matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                        ? "1"
                        : "0");
    }
    table.rows.push_back(std::move(row));
  }

  json pairs = json::array();
  for (const auto& [i, j] : built.model->coupled_pairs()) {
    pairs.push_back(json::array({i + 1, j + 1}));
  }
  meta.metadata["function"] = function;
  meta.metadata["method"] = method;
  meta.metadata["pairs"] = std::move(pairs);
  meta.metadata["samples"] = built.model->total_evals();
  meta.metadata["wall_ms"] = built.wall_ms;
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_c_sweep(const RunOptions& opts) {
  const std::string function =
      opts.functions.empty() ? "rosenbrock9" : opts.functions.front();
  const std::string method =
      opts.methods.empty() ? "pc-kriging-hdmr" : opts.methods.front();
  if (!is_hdmr_method(method)) {
    throw std::invalid_argument("run_c_sweep: needs a decomposition method");
  }
  if (opts.replicates < 1) throw std::invalid_argument("run_c_sweep: replicates >= 1");
  const BenchmarkFunction fn = find_function(function);
  const long long cap = opts.budget.value_or(130);
  Meta meta = make_metadata("c-sweep", opts);

  ResultTable table;
  table.columns = {"kind",  "C",    "replicate", "function",    "method",
                   "p",     "samples", "r2",     "raae",        "rmae",
                   "seed",  "config_hash", "wall_ms"};

  const std::vector<double> c_values = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  for (std::size_t ci = 0; ci < c_values.size(); ++ci) {
    const double C = c_values[ci];
    std::vector<double> r2s, raaes, rmaes, counts, times;
    for (int rep = 0; rep < opts.replicates; ++rep) {
      const std::uint64_t build_seed =
          splitmix64(opts.seed ^ fnv1a("c-sweep/" + std::to_string(ci) + "/" +
                                       std::to_string(rep)));
      BuildConfig cfg = config_for(opts, method, build_seed);
      cfg.C = C;
      TimedBuild built = build_with_budget(fn, cfg, cap);
      const HdmrModel& model = *built.model;
      RandomStream vs = validation_stream(opts, function);
      const MetricReport m = evaluate_model(
          [&model](const Vector& x) { return model.predict(x); }, fn.evaluator,
          fn.space, opts.validation, vs);
      r2s.push_back(m.r2);
      raaes.push_back(m.raae);
      rmaes.push_back(m.rmae);
      counts.push_back(static_cast<double>(model.total_evals()));
      times.push_back(built.wall_ms);
      table.rows.push_back({"replicate", fmt_double(C), std::to_string(rep), function,
                            method, std::to_string(fn.arity),
                            std::to_string(model.total_evals()), fmt_double(m.r2),
                            fmt_double(m.raae), fmt_double(m.rmae),
                            std::to_string(build_seed), meta.hash,
                            fmt_ms(built.wall_ms)});
    }
    table.rows.push_back({"median", fmt_double(C), "", function, method,
                          std::to_string(fn.arity), fmt_double(median(counts)),
                          fmt_double(median(r2s)), fmt_double(median(raaes)),
                          fmt_double(median(rmaes)), std::to_string(opts.seed),
                          meta.hash, fmt_ms(median(times))});
  }
  meta.metadata["function"] = function;
  meta.metadata["method"] = method;
  meta.metadata["per_build_budget"] = cap;
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_accuracy(const RunOptions& opts) {
  const std::vector<std::string> functions = resolve_functions(
      opts, {"table3/1", "table3/2", "table3/3", "table3/4", "table3/5", "table3/6"});
  const std::vector<std::string> methods = resolve_methods(
      opts, {"pc-kriging-hdmr", "kriging-hdmr", "pce-hdmr", "kriging-full"});
  Meta meta = make_metadata("accuracy", opts);

  ResultTable table;
  table.columns = kMetricColumns;
  for (const std::string& function : functions) {
    const BenchmarkFunction fn = find_function(function);
    long long pck_count = 0;
    long long max_count = 0;
    for (const std::string& method : methods) {
      if (!is_hdmr_method(method)) continue;
      TimedBuild built =
          build_with_budget(fn, config_for(opts, method, opts.seed), opts.budget);
      const HdmrModel& model = *built.model;
      RandomStream vs = validation_stream(opts, function);
      const MetricReport m = evaluate_model(
          [&model](const Vector& x) { return model.predict(x); }, fn.evaluator,
          fn.space, opts.validation, vs);
      table.rows.push_back(metric_row(function, method, fn.arity, model.total_evals(),
                                      m, opts.seed, meta.hash, built.wall_ms));
      if (method == "pc-kriging-hdmr") pck_count = model.total_evals();
      max_count = std::max(max_count, model.total_evals());
    }
    if (std::find(methods.begin(), methods.end(), "kriging-full") != methods.end()) {
      // The single-surrogate baseline gets the same evaluation budget the
      // decomposition actually spent on this function.
      const long long n_train =
          pck_count > 0 ? pck_count : (max_count > 0 ? max_count : 200);
      RandomStream ts = RandomStream(opts.seed).substream(fnv1a("train/" + function));
      Stopwatch clock;
      const SampleSet data = uniform_training_set(fn, n_train, ts);
      const KrigingModel km = fit_kriging(data, fn.space);
      const double wall = clock.ms();
      RandomStream vs = validation_stream(opts, function);
      const MetricReport m = evaluate_model(
          [&km](const Vector& x) { return km.predict_mean(x); }, fn.evaluator,
          fn.space, opts.validation, vs);
      table.rows.push_back(metric_row(function, "kriging-full", fn.arity, n_train, m,
                                      opts.seed, meta.hash, wall));
    }
  }
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_cost(const RunOptions& opts) {
  const std::vector<std::string> methods =
      resolve_methods(opts, {"pc-kriging-hdmr", "kriging-hdmr"});
  for (const std::string& m : methods) {
    if (!is_hdmr_method(m)) {
      throw std::invalid_argument("run_cost: only decomposition methods apply");
    }
  }
  Meta meta = make_metadata("cost", opts);

  ResultTable table;
  table.columns = {"p",    "method",      "samples", "formula_s8",
                   "seed", "config_hash", "wall_ms"};
  for (int p : opts.dimensions) {
    const BenchmarkFunction fn = cost_function(p);
    for (const std::string& method : methods) {
      TimedBuild built =
          build_with_budget(fn, config_for(opts, method, opts.seed), opts.budget);
      table.rows.push_back({std::to_string(p), method,
                            std::to_string(built.model->total_evals()),
                            std::to_string(sample_count_formula(p, 8)),
                            std::to_string(opts.seed), meta.hash,
                            fmt_ms(built.wall_ms)});
    }
  }
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_cantilever(const RunOptions& opts) {
  const std::vector<std::string> methods =
      resolve_methods(opts, {"pc-kriging-hdmr", "kriging-hdmr", "pce-hdmr"});
  if (opts.cantilever_seeds < 1) {
    throw std::invalid_argument("run_cantilever: need at least one seed");
  }
  const BenchmarkFunction fn = cantilever_function();
  const std::vector<Distribution> dists = cantilever_distributions();
  // This study pins sample counts: with no explicit threshold the
  // convergence test is disabled so every build spends its whole budget.
  const double epsilon = opts.epsilon.value_or(1e-12);
  Meta meta = make_metadata("cantilever", opts);
  meta.metadata["build_epsilon"] = epsilon;

  ResultTable table;
  table.columns = {"kind", "function", "method",      "budget",  "p",
                   "samples", "seed", "r2",          "raae",    "rmae",
                   "config_hash", "wall_ms"};
  for (const std::string& method : methods) {
    if (!is_hdmr_method(method)) {
      throw std::invalid_argument("run_cantilever: only decomposition methods apply");
    }
    for (long long budget : opts.budgets) {
      std::vector<double> r2s, raaes, rmaes, counts, times;
      for (int s = 0; s < opts.cantilever_seeds; ++s) {
        const std::uint64_t build_seed = splitmix64(
            opts.seed ^ fnv1a(method + "/" + std::to_string(budget) + "/" +
                              std::to_string(s)));
        BuildConfig cfg = config_for(opts, method, build_seed);
        cfg.epsilon = epsilon;
        TimedBuild built = build_with_budget(fn, cfg, budget);
        const HdmrModel& model = *built.model;
        RandomStream vs = validation_stream(opts, fn.name);
        const MetricReport m = evaluate_model(
            [&model](const Vector& x) { return model.predict(x); }, fn.evaluator,
            dists, fn.space, opts.validation, vs);
        r2s.push_back(m.r2);
        raaes.push_back(m.raae);
        rmaes.push_back(m.rmae);
        counts.push_back(static_cast<double>(model.total_evals()));
        times.push_back(built.wall_ms);
        table.rows.push_back({"replicate", fn.name, method, std::to_string(budget),
                              std::to_string(fn.arity),
                              std::to_string(model.total_evals()),
                              std::to_string(build_seed), fmt_double(m.r2),
                              fmt_double(m.raae), fmt_double(m.rmae), meta.hash,
                              fmt_ms(built.wall_ms)});
      }
      table.rows.push_back({"median", fn.name, method, std::to_string(budget),
                            std::to_string(fn.arity), fmt_double(median(counts)),
                            std::to_string(opts.seed), fmt_double(median(r2s)),
                            fmt_double(median(raaes)), fmt_double(median(rmaes)),
                            meta.hash, fmt_ms(median(times))});
    }
  }
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_sensitivity(const RunOptions& opts) {
  const std::string function =
      opts.functions.empty() ? "cantilever" : opts.functions.front();
  const std::string method =
      opts.methods.empty() ? "pc-kriging-hdmr" : opts.methods.front();
  if (!is_hdmr_method(method)) {
    throw std::invalid_argument("run_sensitivity: needs a decomposition method");
  }
  const BenchmarkFunction fn = find_function(function);
  const bool is_cantilever = function == "cantilever";
  Meta meta = make_metadata("sensitivity", opts);

  std::vector<Distribution> dists;
  if (is_cantilever) {
    dists = cantilever_distributions();
  } else {
    for (int i = 0; i < fn.arity; ++i) {
      dists.push_back(Distribution::uniform(fn.space.lower(i), fn.space.upper(i)));
    }
  }
  auto label = [&](int i) -> std::string {
    if (!is_cantilever) return "x" + std::to_string(i + 1);
    static const char* names[11] = {"t",  "d", "L1",     "L2",     "F1", "F2",
                                    "P",  "T", "theta1", "theta2", "Sy"};
    return "X" + std::to_string(i + 1) + "(" + names[i] + ")";
  };

  const long long budget = opts.budget.value_or(1001);
  BuildConfig cfg = config_for(opts, method, opts.seed);
  // Same sample-count-pinned protocol as the reliability study whose model
  // this ranking is computed from.
  cfg.epsilon = opts.epsilon.value_or(1e-12);
  TimedBuild built = build_with_budget(fn, cfg, budget);
  RandomStream stream = RandomStream(opts.seed).substream(fnv1a("sensitivity"));
  const SensitivityReport report = analyze_sensitivity(
      *built.model, dists, opts.sensitivity_samples, stream);

  ResultTable table;
  table.columns = {"table", "rank", "variables", "index", "seed", "config_hash"};

  std::vector<std::pair<double, int>> singles;
  for (const auto& [i, s] : report.first_order) singles.emplace_back(s, i);
  std::sort(singles.begin(), singles.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t r = 0; r < singles.size(); ++r) {
    table.rows.push_back({"single", std::to_string(r + 1), label(singles[r].second),
                          fmt_double(singles[r].first), std::to_string(opts.seed),
                          meta.hash});
  }

  std::vector<std::pair<double, std::pair<int, int>>> pairs;
  for (const auto& [ij, s] : report.pairwise) pairs.emplace_back(s, ij);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto [i, j] = pairs[r].second;
    table.rows.push_back({"pair", std::to_string(r + 1),
                          label(i) + "," + label(j), fmt_double(pairs[r].first),
                          std::to_string(opts.seed), meta.hash});
  }

  meta.metadata["function"] = function;
  meta.metadata["method"] = method;
  meta.metadata["budget"] = budget;
  meta.metadata["samples"] = built.model->total_evals();
  meta.metadata["total_variance"] = report.total_variance;
  meta.metadata["mc_samples"] = report.mc_samples;
  meta.metadata["wall_ms"] = built.wall_ms;
  table.metadata = std::move(meta.metadata);
  return table;
}

ResultTable run_fit(const RunOptions& opts, const std::string& function,
                    const std::string& method, const std::string& model_out) {
  const BenchmarkFunction fn = find_function(function);
  Meta meta = make_metadata("fit", opts);

  ResultTable table;
  table.columns = kMetricColumns;
  if (is_hdmr_method(method)) {
    TimedBuild built =
        build_with_budget(fn, config_for(opts, method, opts.seed), opts.budget);
    const HdmrModel& model = *built.model;
    RandomStream vs = validation_stream(opts, function);
    const MetricReport m = evaluate_model(
        [&model](const Vector& x) { return model.predict(x); }, fn.evaluator,
        fn.space, opts.validation, vs);
    table.rows.push_back(metric_row(function, method, fn.arity, model.total_evals(),
                                    m, opts.seed, meta.hash, built.wall_ms));
    if (!model_out.empty()) save_hdmr(model, model_out);
  } else if (method == "kriging-full") {
    if (!model_out.empty()) {
      throw std::invalid_argument("run_fit: model save supports decomposition methods");
    }
    const long long n_train = opts.budget.value_or(200);
    RandomStream ts = RandomStream(opts.seed).substream(fnv1a("train/" + function));
    Stopwatch clock;
    const SampleSet data = uniform_training_set(fn, n_train, ts);
    const KrigingModel km = fit_kriging(data, fn.space);
    const double wall = clock.ms();
    RandomStream vs = validation_stream(opts, function);
    const MetricReport m = evaluate_model(
        [&km](const Vector& x) { return km.predict_mean(x); }, fn.evaluator, fn.space,
        opts.validation, vs);
    table.rows.push_back(
        metric_row(function, method, fn.arity, n_train, m, opts.seed, meta.hash, wall));
  } else {
    throw std::invalid_argument("unknown method: " + method);
  }
  meta.metadata["function"] = function;
  meta.metadata["method"] = method;
  table.metadata = std::move(meta.metadata);
  return table;
}

}  // namespace pckhdmr
