#pragma once

#include <vector>

#include "pckhdmr/design_space.hpp"

namespace pckhdmr {

/// Growable collection of (point, response) pairs with duplicate rejection.
/// Two points closer than kDuplicateTol (Euclidean) are considered the same
/// sample; inserting the second one throws.
class SampleSet {
 public:
  static constexpr double kDuplicateTol = 1e-12;

  explicit SampleSet(int dim);

  void add(const Vector& x, double y);
  bool contains(const Vector& x, double tol = kDuplicateTol) const;

  int size() const { return static_cast<int>(ys_.size()); }
  int dim() const { return dim_; }
  bool empty() const { return ys_.empty(); }

  const Vector& point(int k) const { return xs_[static_cast<std::size_t>(k)]; }
  double response(int k) const { return ys_[static_cast<std::size_t>(k)]; }

  /// Points stacked as rows of an N x dim matrix.
  Matrix points_matrix() const;
  /// Responses as a length-N vector.
  Vector responses_vector() const;

 private:
  int dim_;
  std::vector<Vector> xs_;
  std::vector<double> ys_;
};

}  // namespace pckhdmr
