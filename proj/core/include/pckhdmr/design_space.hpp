#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pckhdmr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Scalar-valued function of a point.
using RealFunction = std::function<double(const Vector&)>;

/// Axis-aligned box of admissible inputs.  Every bound pair must satisfy
/// lower[k] < upper[k]; zero-width dimensions are rejected at construction.
class DesignSpace {
 public:
  DesignSpace(Vector lower, Vector upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  double lower(int k) const { return lower_(k); }
  double upper(int k) const { return upper_(k); }
  double range(int k) const { return upper_(k) - lower_(k); }

  /// True when x lies inside the box, within an absolute slack per axis.
  bool contains(const Vector& x, double tol = 0.0) const;

  /// Componentwise projection of x onto the box.
  Vector clip(Vector x) const;

  /// Geometric center of the box.
  Vector midpoint() const;

  /// Box restricted to the given dimensions, in the given order.
  DesignSpace subspace(const std::vector<int>& dims) const;

  /// Map x into unit coordinates u in [0,1]^p (affine per axis).
  Vector to_unit(const Vector& x) const;
  /// Inverse of to_unit.
  Vector from_unit(const Vector& u) const;

 private:
  Vector lower_;
  Vector upper_;
};

/// Anchor point of the decomposition.  All component functions are defined
/// along axes and planes through this point; it must lie inside the space.
class CutCenter {
 public:
  CutCenter(Vector coords, const DesignSpace& space);

  const Vector& coords() const { return coords_; }
  double operator[](int k) const { return coords_(k); }
  const DesignSpace& space() const { return space_; }
  int dim() const { return static_cast<int>(coords_.size()); }

 private:
  Vector coords_;
  DesignSpace space_;
};

/// Full-dimensional point that agrees with the center except coordinate i,
/// which is set to value.  The value must lie within the bounds of axis i.
Vector axis_point(const CutCenter& center, int i, double value);

/// Full-dimensional point that agrees with the center except coordinates
/// i and j (i != j), set to vi and vj.
Vector plane_point(const CutCenter& center, int i, int j, double vi, double vj);

}  // namespace pckhdmr
