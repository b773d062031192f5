#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pckhdmr/budgeted_function.hpp"
#include "pckhdmr/design_space.hpp"
#include "pckhdmr/surrogate.hpp"

namespace pckhdmr {

/// Identifies one component term: FirstOrder(i) or SecondOrder(i,j), i < j.
struct ComponentKey {
  int i = 0;
  int j = -1;  // -1 marks a first-order key

  static ComponentKey first_order(int i) { return {i, -1}; }
  static ComponentKey second_order(int a, int b);

  bool is_second_order() const { return j >= 0; }
  bool operator<(const ComponentKey& o) const {
    return std::pair(i, j) < std::pair(o.i, o.j);
  }
  bool operator==(const ComponentKey& o) const { return i == o.i && j == o.j; }
};

enum class TermKind { Zero, Linear, Surrogate };

std::string to_string(TermKind kind);
TermKind term_kind_from_string(const std::string& name);

/// One term of the truncated decomposition.  All kinds evaluate to exactly 0
/// at the cut center: Linear terms are anchored there, Surrogate terms
/// subtract their model's value at the center.
struct ComponentTerm {
  ComponentKey key;
  TermKind kind = TermKind::Zero;
  /// Truth evaluations consumed while building this term (training points
  /// recycled from elsewhere cost nothing and are not counted here).
  int sample_count = 0;
  /// Linear terms: value is slope * (x_i - c_i).
  double slope = 0.0;
  /// Surrogate terms: fitted component model over the axis/plane.
  std::optional<ComponentModel> model;
  /// Model mean at the center coordinates, subtracted at prediction time.
  double center_offset = 0.0;
  /// First-order terms: the axis coordinates used for training (seeds,
  /// center, refinements) in ascending order.
  std::vector<double> axis_values;

  /// First-order contribution at coordinate v (relative to center c_i).
  double value1(double v, double c_i) const;
  /// Second-order contribution at (vi, vj).
  double value2(double vi, double vj) const;
};

struct BuildConfig {
  /// Interval split ratio of the first-stage criterion, in (0,1).
  double C = 0.5;
  /// Relative convergence tolerance of both adaptive stages.
  double epsilon = 1e-3;
  /// Relative tolerance of the zero/linearity classification.
  double linearity_tol = 1e-6;
  /// Maximum training coordinates per axis (seeds and center included).
  int stage1_max = 20;
  /// Maximum truth evaluations per detected pair in the second stage.
  int stage2_max = 30;
  /// Component surrogate family and its options.
  SurrogateConfig surrogate = {};
  /// Probes in phase (a) of the coupling existence test.
  int probe_count = 3;
  /// Seed for the probe draws (the only randomness in a build).
  std::uint64_t seed = 0;
};

/// Truncated cut-decomposition model: f0 plus first-order terms plus the
/// detected second-order terms.  Immutable once built; predictions are safe
/// to run concurrently.
class HdmrModel {
 public:
  HdmrModel() = default;
  HdmrModel(DesignSpace space, CutCenter center, double f0, SurrogateBackend backend,
            std::map<ComponentKey, ComponentTerm> terms, long long probe_evals,
            long long total_evals);

  const DesignSpace& space() const { return space_; }
  const CutCenter& center() const { return center_; }
  double f0() const { return f0_; }
  SurrogateBackend backend() const { return backend_; }
  const std::map<ComponentKey, ComponentTerm>& terms() const { return terms_; }
  const ComponentTerm* find_term(const ComponentKey& key) const;
  int dim() const { return space_.dim(); }

  /// Truth evaluations spent on coupling probes.
  long long probe_evals() const { return probe_evals_; }
  /// Total truth evaluations consumed by the build.
  long long total_evals() const { return total_evals_; }

  /// p x p symmetric boolean coupling matrix with true diagonal;
  /// coupling(i,j) is true iff the SecondOrder(i,j) term exists.
  std::vector<std::vector<bool>> coupling_matrix() const;
  /// Detected pairs (i < j) in ascending order.
  std::vector<std::pair<int, int>> coupled_pairs() const;

  double predict(const Vector& x) const;
  Vector predict_batch(const Matrix& X) const;

  /// Value of one component term at x's coordinates (0 for absent keys).
  double term_value(const ComponentKey& key, const Vector& x) const;

 private:
  DesignSpace space_{Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  CutCenter center_{Vector::Constant(1, 0.5), space_};
  double f0_ = 0.0;
  SurrogateBackend backend_ = SurrogateBackend::PcKriging;
  std::map<ComponentKey, ComponentTerm> terms_;
  long long probe_evals_ = 0;
  long long total_evals_ = 0;
};

/// Thrown when the evaluation budget runs out mid-build.  Carries the model
/// assembled from the data gathered up to that point (null only when even
/// the center evaluation was refused).
class HdmrBuildError : public std::runtime_error {
 public:
  HdmrBuildError(const std::string& what, std::shared_ptr<const HdmrModel> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  /// Best-effort model from the samples gathered before exhaustion.
  const std::shared_ptr<const HdmrModel>& partial_model() const { return partial_; }

 private:
  std::shared_ptr<const HdmrModel> partial_;
};

/// Two-point line test: is the interpolant through (a, response_a) and
/// (b, response_b) within tol * (1 + max |response|) of 0 at the center?
bool linearity_test(double a, double response_a, double b, double response_b,
                    double center, double tol);

/// Standalone coupling existence test over a first-order model: phase (a)
/// global additive probes, then phase (b) one plane probe per pair.  Returns
/// detected pairs (i < j).  Probe coordinates come from the model's used
/// axis values; the draw is seeded by cfg.seed.
std::vector<std::pair<int, int>> coupling_existence_test(BudgetedFunction& f,
                                                         const HdmrModel& first_order,
                                                         const BuildConfig& cfg);

/// Full build: center evaluation, axis seeding and classification, stage-1
/// refinement, coupling detection, stage-2 plane terms, assembly.
HdmrModel build_hdmr(BudgetedFunction& f, const DesignSpace& space,
                     const CutCenter& center, const BuildConfig& cfg = {});
/// Convenience overload anchoring at the box midpoint.
HdmrModel build_hdmr(BudgetedFunction& f, const DesignSpace& space,
                     const BuildConfig& cfg = {});

}  // namespace pckhdmr
