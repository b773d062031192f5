#include "pckhdmr/sample_set.hpp"

#include <cmath>
#include <stdexcept>

namespace pckhdmr {

SampleSet::SampleSet(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("SampleSet: dimension must be positive");
}

void SampleSet::add(const Vector& x, double y) {
  if (x.size() != dim_) {
    throw std::invalid_argument("SampleSet::add: point dimension mismatch");
  }
  if (!std::isfinite(y)) {
    throw std::invalid_argument("SampleSet::add: response must be finite");
  }
  for (int k = 0; k < dim_; ++k) {
    if (!std::isfinite(x(k))) {
      throw std::invalid_argument("SampleSet::add: point must be finite");
    }
  }
  if (contains(x)) {
    throw std::invalid_argument("SampleSet::add: duplicate point rejected");
  }
  xs_.push_back(x);
  ys_.push_back(y);
}

bool SampleSet::contains(const Vector& x, double tol) const {
  for (const Vector& p : xs_) {
    if ((p - x).norm() <= tol) return true;
  }
  return false;
}

Matrix SampleSet::points_matrix() const {
  Matrix m(size(), dim_);
  for (int k = 0; k < size(); ++k) m.row(k) = xs_[static_cast<std::size_t>(k)].transpose();
  return m;
}

Vector SampleSet::responses_vector() const {
  Vector v(size());
  for (int k = 0; k < size(); ++k) v(k) = ys_[static_cast<std::size_t>(k)];
  return v;
}

}  // namespace pckhdmr
