#include "pckhdmr/design_space.hpp"

#include <cmath>
#include <string>

namespace pckhdmr {

DesignSpace::DesignSpace(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() == 0) {
    throw std::invalid_argument("DesignSpace: dimension must be positive");
  }
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("DesignSpace: bound vectors differ in length");
  }
  for (int k = 0; k < dim(); ++k) {
    if (!std::isfinite(lower_(k)) || !std::isfinite(upper_(k))) {
      throw std::invalid_argument("DesignSpace: bounds must be finite");
    }
    if (!(lower_(k) < upper_(k))) {
      throw std::invalid_argument(
          "DesignSpace: lower bound must be strictly below upper bound on axis " +
          std::to_string(k));
    }
  }
}

bool DesignSpace::contains(const Vector& x, double tol) const {
  if (x.size() != lower_.size()) return false;
  for (int k = 0; k < dim(); ++k) {
    if (x(k) < lower_(k) - tol || x(k) > upper_(k) + tol) return false;
  }
  return true;
}

Vector DesignSpace::clip(Vector x) const {
  if (x.size() != lower_.size()) {
    throw std::invalid_argument("DesignSpace::clip: dimension mismatch");
  }
  for (int k = 0; k < dim(); ++k) {
    x(k) = std::min(std::max(x(k), lower_(k)), upper_(k));
  }
  return x;
}

Vector DesignSpace::midpoint() const { return 0.5 * (lower_ + upper_); }

DesignSpace DesignSpace::subspace(const std::vector<int>& dims) const {
  Vector lo(dims.size()), up(dims.size());
  for (std::size_t t = 0; t < dims.size(); ++t) {
    int k = dims[t];
    if (k < 0 || k >= dim()) {
      throw std::out_of_range("DesignSpace::subspace: axis index out of range");
    }
    lo(static_cast<Eigen::Index>(t)) = lower_(k);
    up(static_cast<Eigen::Index>(t)) = upper_(k);
  }
  return DesignSpace(std::move(lo), std::move(up));
}

Vector DesignSpace::to_unit(const Vector& x) const {
  if (x.size() != lower_.size()) {
    throw std::invalid_argument("DesignSpace::to_unit: dimension mismatch");
  }
  Vector u(x.size());
  for (int k = 0; k < dim(); ++k) u(k) = (x(k) - lower_(k)) / range(k);
  return u;
}

Vector DesignSpace::from_unit(const Vector& u) const {
  if (u.size() != lower_.size()) {
    throw std::invalid_argument("DesignSpace::from_unit: dimension mismatch");
  }
  Vector x(u.size());
  for (int k = 0; k < dim(); ++k) x(k) = lower_(k) + u(k) * range(k);
  return x;
}

CutCenter::CutCenter(Vector coords, const DesignSpace& space)
    : coords_(std::move(coords)), space_(space) {
  if (coords_.size() != space_.dim()) {
    throw std::invalid_argument("CutCenter: dimension mismatch with space");
  }
  if (!space_.contains(coords_)) {
    throw std::invalid_argument("CutCenter: coordinates outside the design space");
  }
}

Vector axis_point(const CutCenter& center, int i, double value) {
  const DesignSpace& s = center.space();
  if (i < 0 || i >= center.dim()) {
    throw std::out_of_range("axis_point: axis index out of range");
  }
  if (value < s.lower(i) || value > s.upper(i)) {
    throw std::invalid_argument("axis_point: value outside axis bounds");
  }
  Vector x = center.coords();
  x(i) = value;
  return x;
}

Vector plane_point(const CutCenter& center, int i, int j, double vi, double vj) {
  const DesignSpace& s = center.space();
  if (i < 0 || i >= center.dim() || j < 0 || j >= center.dim()) {
    throw std::out_of_range("plane_point: axis index out of range");
  }
  if (i == j) throw std::invalid_argument("plane_point: axes must differ");
  if (vi < s.lower(i) || vi > s.upper(i) || vj < s.lower(j) || vj > s.upper(j)) {
    throw std::invalid_argument("plane_point: value outside axis bounds");
  }
  Vector x = center.coords();
  x(i) = vi;
  x(j) = vj;
  return x;
}

}  // namespace pckhdmr
