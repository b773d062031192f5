#pragma once

#include <cstddef>
#include <vector>

#include "pckhdmr/design_space.hpp"
#include "pckhdmr/sample_set.hpp"

namespace pckhdmr {

/// One-dimensional samples kept in strictly increasing coordinate order,
/// with responses aligned to coordinates.
class SortedAxisSamples {
 public:
  static constexpr double kDuplicateTol = 1e-12;

  SortedAxisSamples() = default;

  /// Insert keeping ascending order; coordinates within kDuplicateTol of an
  /// existing one are rejected.
  void insert(double value, double response);
  bool contains(double value, double tol = kDuplicateTol) const;

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& responses() const { return responses_; }
  double value(int k) const { return values_[static_cast<std::size_t>(k)]; }
  double response(int k) const { return responses_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<double> values_;
  std::vector<double> responses_;
};

/// First-stage proportional criterion: pick the interval with the largest
/// absolute response jump (ties toward the smallest index) and return the
/// point splitting it at C : (1-C) from its left end.
double proportional_insert(const SortedAxisSamples& axis, double C);

/// Relative-error stopping test with an absolute floor guarding f near 0:
/// |f_hat - f_true| / max(|f_true|, 1e-8) <= epsilon.
bool converged(double f_true_at_probe, double f_hat_at_probe, double epsilon);

/// One cell of the second-stage candidate grid.
struct GridCell {
  double xi_lo, xi_hi, xj_lo, xj_hi;
  Vector center() const;
};

/// Tensor grid over a plane whose cells are spanned by consecutive
/// first-stage axis coordinates; candidates are the exact cell centers.
class EntropyCandidateGrid {
 public:
  EntropyCandidateGrid(const std::vector<double>& axis_i_values,
                       const std::vector<double>& axis_j_values);

  const std::vector<GridCell>& cells() const { return cells_; }
  /// Cell centers in deterministic order (rows of axis j, then cells of
  /// axis i within a row).
  std::vector<Vector> candidates() const;

 private:
  std::vector<GridCell> cells_;
};

EntropyCandidateGrid build_candidate_grid(const std::vector<double>& axis_i_values,
                                          const std::vector<double>& axis_j_values);

/// Second-stage criterion: index of the candidate maximizing the determinant
/// of the prior covariance of the augmented set, via the bordered-determinant
/// identity det_{N+1} = det_N * sigma2 * (1 - r' R^-1 r).  The Gaussian
/// correlation uses theta on the coordinates as given (callers rescale theta
/// when their model was fitted on normalized coordinates).  Candidates within
/// 1e-12 of an existing point are skipped; ties keep the smallest index.
std::size_t max_entropy_select(const SampleSet& existing,
                               const std::vector<Vector>& candidates,
                               const Vector& theta, double sigma2);

}  // namespace pckhdmr
