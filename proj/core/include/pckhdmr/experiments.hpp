#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pckhdmr/bench.hpp"
#include "pckhdmr/hdmr.hpp"
#include "pckhdmr/metrics.hpp"
#include "pckhdmr/sensitivity.hpp"

namespace pckhdmr {

/// Tabular experiment artifact.  CSV output carries a one-line JSON metadata
/// header comment (timestamp, config hash, seed); JSON output embeds the
/// same metadata next to the rows.  Bodies are byte-identical across re-runs
/// with the same configuration, except the timestamp line and the wall_ms
/// column (wall time is real measurement, placed last so consumers can mask
/// it when diffing).
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json metadata;

  std::string to_csv() const;
  std::string to_json_text() const;
  /// format: "csv" or "json".
  void write(const std::string& path, const std::string& format) const;
};

/// FNV-1a 64-bit hash of a string; used for configuration hashes and
/// deterministic per-row stream tags.
std::uint64_t fnv1a(const std::string& text);
/// 16-digit lowercase hex rendering.
std::string hash_hex(std::uint64_t h);

/// Options shared by all experiment drivers.  Empty lists mean each
/// experiment's documented default.
struct RunOptions {
  std::uint64_t seed = 2024;
  /// Validation draws per metric row.
  int validation = kDefaultValidationSize;
  /// Base build configuration (C, epsilon, surrogate family, ...).
  BuildConfig build = {};
  /// Explicit convergence-threshold override.  When absent, experiments use
  /// build.epsilon, except the cantilever study whose protocol pins sample
  /// counts (convergence disabled so every build spends its budget).
  std::optional<double> epsilon;
  /// Method names: pc-kriging-hdmr, kriging-hdmr, pce-hdmr, kriging-full.
  std::vector<std::string> methods;
  /// Benchmark function names (see find_function).
  std::vector<std::string> functions;
  /// Optional cap on true-function evaluations per build.
  std::optional<long long> budget;
  /// Replicates per C value in the C-sweep.
  int replicates = 10;
  /// Dimensions of the cost study.
  std::vector<int> dimensions = {10, 15, 20, 25, 30, 35};
  /// Evaluation budgets of the cantilever study.
  std::vector<long long> budgets = {101, 1001};
  /// Independent seeds of the cantilever study.
  int cantilever_seeds = 5;
  /// Monte Carlo draws of the sensitivity study.
  int sensitivity_samples = kDefaultSensitivitySamples;
};

/// Surrogate family behind an HDMR method name; throws on kriging-full or
/// unknown names.
SurrogateConfig surrogate_for_method(const std::string& method);
/// True for the three decomposition methods (not kriging-full).
bool is_hdmr_method(const std::string& method);

/// Coupling structure on one function (default rosenbrock9): builds the
/// decomposition and writes the p x p 0/1 matrix, one row per variable.
ResultTable run_coupling(const RunOptions& opts = {});

/// Split-ratio sweep C in {0.1..0.9} with seeded replicate builds on
/// rosenbrock9 under a per-build evaluation cap; emits every replicate row
/// plus one median row per C.
ResultTable run_c_sweep(const RunOptions& opts = {});

/// Accuracy study over the six registry test functions and the configured
/// methods; the full-dimensional Kriging baseline is trained on as many
/// seeded uniform points as the decomposition spent on the same function.
ResultTable run_accuracy(const RunOptions& opts = {});

/// Cost study: measured evaluation counts of adaptive builds on the coupled
/// power sum across dimensions, next to the full second-order expansion
/// count 1 + p(s-1) + p(p-1)/2 (s-1)^2 at s = 8.
ResultTable run_cost(const RunOptions& opts = {});

/// Cantilever study: the three decomposition backends under hard evaluation
/// budgets, several seeds each, validated on distribution draws; emits
/// replicate rows plus per-(method, budget) median rows.
ResultTable run_cantilever(const RunOptions& opts = {});

/// Sensitivity study: fits the decomposition to the cantilever under the
/// configured budget, then ranks first-order and pairwise variance indices.
ResultTable run_sensitivity(const RunOptions& opts = {});

/// Single fit: builds one function x method, reports one metric row, and
/// optionally saves the model document to model_out (empty = don't save).
ResultTable run_fit(const RunOptions& opts, const std::string& function,
                    const std::string& method, const std::string& model_out = {});

}  // namespace pckhdmr
