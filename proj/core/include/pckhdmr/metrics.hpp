#pragma once

#include <functional>
#include <vector>

#include "pckhdmr/design_space.hpp"
#include "pckhdmr/random.hpp"

namespace pckhdmr {

/// Accuracy indices of a predictor against the truth on one validation set.
struct MetricReport {
  double r2 = 0.0;
  double raae = 0.0;
  double rmae = 0.0;
  int n_validation = 0;
  /// Sample standard deviation of the true responses, (s-1) divisor.
  double std_dev = 0.0;
};

/// Validation size used when callers do not specify one.
inline constexpr int kDefaultValidationSize = 2000;

/// Sample standard deviation with the (s-1) divisor.  Requires s >= 2.
double sample_std(const Vector& y);

/// 1 - SS_res / SS_tot.  Throws on length mismatch, s < 2, or zero variance.
double r_squared(const Vector& y_true, const Vector& y_pred);

/// Relative average absolute error: sum|e| / (s * STD).
double raae(const Vector& y_true, const Vector& y_pred);

/// Relative maximum absolute error: max|e| / STD.
double rmae(const Vector& y_true, const Vector& y_pred);

/// All three indices from aligned truth/prediction vectors.
MetricReport compute_metrics(const Vector& y_true, const Vector& y_pred);

/// Validation on n uniform draws over the box.  The draws come from the
/// given stream only; they never touch any evaluation budget, so validation
/// cost is accounted separately from modeling cost.
MetricReport evaluate_model(const RealFunction& predictor, const RealFunction& truth,
                            const DesignSpace& space, int n, RandomStream& stream);

/// Validation on n draws from per-coordinate input distributions, each draw
/// clipped into the box the model was built on.
MetricReport evaluate_model(const RealFunction& predictor, const RealFunction& truth,
                            const std::vector<Distribution>& inputs,
                            const DesignSpace& clip_box, int n, RandomStream& stream);

}  // namespace pckhdmr
