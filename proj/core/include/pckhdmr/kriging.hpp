#pragma once

#include <utility>
#include <vector>

#include "pckhdmr/design_space.hpp"
#include "pckhdmr/legendre.hpp"
#include "pckhdmr/sample_set.hpp"

namespace pckhdmr {

/// Hyperparameter search and conditioning controls for Kriging fits.
struct KrigingOptions {
  double theta_min = 1e-3;
  double theta_max = 1e3;
  /// Isotropic log-spaced starting points for the likelihood search.
  int ladder_starts = 10;
  /// Coordinate-descent passes of golden-section refinement after the ladder.
  int refine_sweeps = 2;
  /// Golden-section iterations per coordinate.
  int golden_iters = 28;
  double nugget_min = 1e-10;
  double nugget_max = 1e-4;
};

/// Gaussian-process interpolator with a polynomial trend.  The correlation is
/// the Gaussian kernel exp(-sum_k theta_k (u_k - u'_k)^2) on inputs scaled to
/// the unit box, so theta is comparable across problems of any scale.
/// Immutable once fitted; predictions are safe to run concurrently.
class KrigingModel {
 public:
  KrigingModel() = default;

  const DesignSpace& space() const { return space_; }
  const SampleSet& training() const { return training_; }
  /// Trend basis as Legendre multi-indices on the rescaled box.
  const std::vector<MultiIndex>& trend() const { return trend_; }
  const Vector& theta() const { return theta_; }
  double nugget() const { return nugget_; }
  double sigma2() const { return sigma2_; }
  const Vector& beta() const { return beta_; }
  /// Concentrated log-likelihood attained at theta.
  double log_likelihood() const { return loglik_; }
  int sample_count() const { return training_.size(); }

  /// Best linear unbiased prediction: (mean, variance).  Variance is clamped
  /// to 0 within a small negative tolerance; a larger negative value throws.
  std::pair<double, double> predict(const Vector& x) const;
  double predict_mean(const Vector& x) const;

  /// Trend function values at x (rescaled internally).
  Vector trend_values(const Vector& x) const;

  /// Rebuild a model from explicit state.  Used by fitting and by
  /// deserialization so both construct predictions identically.
  static KrigingModel from_state(SampleSet training, DesignSpace space,
                                 std::vector<MultiIndex> trend, Vector theta,
                                 double nugget, Vector beta, double sigma2,
                                 double loglik);

 private:
  DesignSpace space_{Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  SampleSet training_{1};
  std::vector<MultiIndex> trend_;
  Vector theta_;
  double nugget_ = 0.0;
  double sigma2_ = 0.0;
  Vector beta_;
  double loglik_ = 0.0;

  // Derived factors: unit-box training coordinates, Cholesky factor of the
  // nugget-regularized correlation matrix, whitened trend matrix, correlation
  // weights for the mean, and the Cholesky factor of the GLS normal matrix.
  Matrix unit_points_;
  Matrix chol_lower_;
  Matrix whitened_trend_;
  Vector corr_weights_;
  Matrix gls_chol_lower_;

  Vector correlation_vector(const Vector& u) const;
};

/// Maximum-likelihood Kriging fit.  An empty trend list means the constant
/// trend.  Throws if the correlation matrix stays singular at the maximum
/// nugget, or if the trend matrix is rank-deficient at the training points.
KrigingModel fit_kriging(const SampleSet& data, const DesignSpace& space,
                         std::vector<MultiIndex> trend = {},
                         const KrigingOptions& options = {});

/// Concentrated log-likelihood of the data at a fixed theta (the quantity
/// fit_kriging maximizes).  Returns -infinity when factorization fails at
/// the maximum nugget.
double kriging_log_likelihood(const SampleSet& data, const DesignSpace& space,
                              const std::vector<MultiIndex>& trend,
                              const Vector& theta,
                              const KrigingOptions& options = {});

/// Leave-one-out RMSE at fixed theta: each fold refits the trend
/// coefficients by GLS on the remaining points and predicts the held-out one.
double kriging_loo_rmse(const SampleSet& data, const DesignSpace& space,
                        const std::vector<MultiIndex>& trend, const Vector& theta,
                        const KrigingOptions& options = {});

}  // namespace pckhdmr
