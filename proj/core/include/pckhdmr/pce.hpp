#pragma once

#include <vector>

#include "pckhdmr/design_space.hpp"
#include "pckhdmr/legendre.hpp"
#include "pckhdmr/sample_set.hpp"

namespace pckhdmr {

/// Sparse polynomial chaos expansion on a box, built from orthonormal
/// Legendre tensor products of the inputs rescaled to [-1,1]^dim.
class PceModel {
 public:
  PceModel() = default;
  PceModel(DesignSpace space, std::vector<MultiIndex> terms, Vector coefficients,
           int max_degree, double loo_error);

  const DesignSpace& space() const { return space_; }
  /// Selected terms, in the order the forward selection added them.
  const std::vector<MultiIndex>& terms() const { return terms_; }
  const Vector& coefficients() const { return coefficients_; }
  int max_degree() const { return max_degree_; }
  /// Leave-one-out RMSE of the selected expansion on its training data.
  double loo_error() const { return loo_error_; }

  /// Expansion value at x.  An empty expansion evaluates to 0.
  double predict(const Vector& x) const;

 private:
  DesignSpace space_{Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  std::vector<MultiIndex> terms_;
  Vector coefficients_;
  int max_degree_ = 0;
  double loo_error_ = 0.0;
};

/// Default total-degree cap by input dimension: 10 in one dimension, 5 in
/// two, 3 otherwise.
int default_pce_degree(int dim);

/// Fit a sparse expansion by greedy forward selection (largest normalized
/// residual correlation first, full least-squares refit per step) over the
/// total-degree candidate set, keeping the prefix whose leave-one-out RMSE
/// is smallest.  At most size(data)-1 terms are active.  Deterministic.
PceModel fit_pce(const SampleSet& data, const DesignSpace& space, int max_degree);

}  // namespace pckhdmr
