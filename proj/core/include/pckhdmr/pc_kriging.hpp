#pragma once

#include <utility>

#include "pckhdmr/kriging.hpp"
#include "pckhdmr/pce.hpp"

namespace pckhdmr {

/// How the polynomial trend of a PC-Kriging model is chosen.
/// SPC: take the whole sparse expansion selected by fit_pce as the trend.
/// OPC: sweep prefixes of that expansion (in selection order) and keep the
///      one whose Kriging leave-one-out error is smallest.
enum class PcMode { SPC, OPC };

struct PcKrigingConfig {
  PcMode mode = PcMode::SPC;
  /// Total-degree cap for the candidate basis; 0 means the per-dimension
  /// default (see default_pce_degree).
  int max_degree = 0;
  KrigingOptions kriging = {};
};

/// Kriging model whose trend is a sparse polynomial chaos expansion selected
/// from the same training data.
class PcKrigingModel {
 public:
  PcKrigingModel() = default;
  PcKrigingModel(PcMode mode, PceModel pce, KrigingModel kriging);

  PcMode mode() const { return mode_; }
  /// The selected expansion (its terms equal the Kriging trend set).
  const PceModel& pce_trend() const { return pce_; }
  const KrigingModel& kriging() const { return kriging_; }

  std::pair<double, double> predict(const Vector& x) const { return kriging_.predict(x); }
  double predict_mean(const Vector& x) const { return kriging_.predict_mean(x); }

 private:
  PcMode mode_ = PcMode::SPC;
  PceModel pce_;
  KrigingModel kriging_;
};

PcKrigingModel fit_pc_kriging(const SampleSet& data, const DesignSpace& space,
                              const PcKrigingConfig& config = {});

}  // namespace pckhdmr
