#pragma once

#include <string>
#include <variant>

#include "pckhdmr/pc_kriging.hpp"

namespace pckhdmr {

/// Which surrogate family models each component term.
enum class SurrogateBackend { PcKriging, Kriging, Pce };

std::string to_string(SurrogateBackend backend);
SurrogateBackend surrogate_backend_from_string(const std::string& name);
std::string to_string(PcMode mode);
PcMode pc_mode_from_string(const std::string& name);

struct SurrogateConfig {
  SurrogateBackend backend = SurrogateBackend::PcKriging;
  PcMode pc_mode = PcMode::SPC;
  /// Total-degree cap for polynomial bases; 0 means the per-dimension default.
  int max_degree = 0;
  KrigingOptions kriging = {};
};

/// A fitted component surrogate behind one interface, so the decomposition
/// orchestration is independent of the backend family.
class ComponentModel {
 public:
  ComponentModel() = default;
  explicit ComponentModel(KrigingModel m);
  explicit ComponentModel(PceModel m);
  explicit ComponentModel(PcKrigingModel m);

  static ComponentModel fit(const SampleSet& data, const DesignSpace& space,
                            const SurrogateConfig& config);

  SurrogateBackend backend() const { return backend_; }
  double mean(const Vector& x) const;

  /// Correlation parameters (on unit-box coordinates) and process variance
  /// feeding the entropy criterion.  Pure polynomial expansions carry no
  /// fitted correlation, so a fixed moderate length-scale and unit variance
  /// are substituted.
  Vector entropy_theta(int dim) const;
  double entropy_sigma2() const;

  const KrigingModel& as_kriging() const;
  const PceModel& as_pce() const;
  const PcKrigingModel& as_pc_kriging() const;

 private:
  SurrogateBackend backend_ = SurrogateBackend::PcKriging;
  std::variant<std::monostate, KrigingModel, PceModel, PcKrigingModel> impl_;
};

}  // namespace pckhdmr
