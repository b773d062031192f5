#include "pckhdmr/legendre.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pckhdmr {

double legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre: degree must be non-negative");
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    double next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = next;
  }
  return p;
}

double legendre_orthonormal(int n, double x) {
  return std::sqrt(2.0 * n + 1.0) * legendre(n, x);
}

int total_degree(const MultiIndex& mi) {
  return std::accumulate(mi.begin(), mi.end(), 0);
}

namespace {

void enumerate_degree(int dim, int degree, MultiIndex& current,
                      std::vector<MultiIndex>& out) {
  // Fill coordinates left to right; last coordinate absorbs the remainder.
  if (static_cast<int>(current.size()) == dim - 1) {
    current.push_back(degree);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int d = degree; d >= 0; --d) {
    current.push_back(d);
    enumerate_degree(dim, degree - d, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> total_degree_set(int dim, int max_degree) {
  if (dim <= 0) throw std::invalid_argument("total_degree_set: dim must be positive");
  if (max_degree < 0) throw std::invalid_argument("total_degree_set: max_degree must be non-negative");
  std::vector<MultiIndex> out;
  MultiIndex current;
  for (int degree = 0; degree <= max_degree; ++degree) {
    enumerate_degree(dim, degree, current, out);
  }
  return out;
}

double tensor_basis_value(const MultiIndex& mi, const Vector& xi) {
  if (static_cast<Eigen::Index>(mi.size()) != xi.size()) {
    throw std::invalid_argument("tensor_basis_value: dimension mismatch");
  }
  double v = 1.0;
  for (std::size_t k = 0; k < mi.size(); ++k) {
    v *= legendre_orthonormal(mi[k], xi(static_cast<Eigen::Index>(k)));
  }
  return v;
}

Vector to_legendre_coords(const DesignSpace& space, const Vector& x) {
  Vector u = space.to_unit(x);
  return 2.0 * u - Vector::Ones(u.size());
}

}  // namespace pckhdmr
