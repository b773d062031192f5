#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pckhdmr/hdmr.hpp"
#include "pckhdmr/random.hpp"

namespace pckhdmr {

/// Variance-based sensitivity of a fitted decomposition over its input
/// distributions: each index is the Monte Carlo variance of one component
/// term divided by the variance of the full model prediction.
struct SensitivityReport {
  /// S_i per dimension (every dimension present; 0 for Zero terms).
  std::map<int, double> first_order;
  /// S_ij for every pair i < j (0 for pairs without a second-order term).
  std::map<std::pair<int, int>, double> pairwise;
  double total_variance = 0.0;
  int mc_samples = 0;
};

/// Default Monte Carlo size for sensitivity studies.
inline constexpr int kDefaultSensitivitySamples = 100000;

/// Full analysis with one shared draw matrix: column i of the n x p input
/// sample is drawn from dists[i] via a fixed per-dimension substream of
/// `stream` (so results do not depend on evaluation order), clipped into the
/// model's box.  Total model variance reuses the same rows.  When the total
/// variance is zero all indices are defined as 0.  Requires n >= 1000.
SensitivityReport analyze_sensitivity(const HdmrModel& model,
                                      const std::vector<Distribution>& dists, int n,
                                      RandomStream& stream);

/// Convenience projections of analyze_sensitivity.
std::map<int, double> first_order_indices(const HdmrModel& model,
                                          const std::vector<Distribution>& dists,
                                          int n, RandomStream& stream);
std::map<std::pair<int, int>, double> pairwise_indices(
    const HdmrModel& model, const std::vector<Distribution>& dists, int n,
    RandomStream& stream);

}  // namespace pckhdmr
