#pragma once

#include <vector>

#include "pckhdmr/design_space.hpp"

namespace pckhdmr {

/// Legendre polynomial P_n on [-1,1] via the three-term recurrence.
double legendre(int n, double x);

/// Legendre polynomial scaled to unit norm under the uniform probability
/// measure on [-1,1] (density 1/2): sqrt(2n+1) * P_n.
double legendre_orthonormal(int n, double x);

/// Exponent vector of a tensor-product polynomial, one entry per dimension.
using MultiIndex = std::vector<int>;

/// Sum of exponents.
int total_degree(const MultiIndex& mi);

/// All multi-indices of the given dimension with total degree <= max_degree,
/// ordered by total degree, then lexicographically descending.  Deterministic.
std::vector<MultiIndex> total_degree_set(int dim, int max_degree);

/// Product of orthonormal Legendre factors at a point xi in [-1,1]^dim.
double tensor_basis_value(const MultiIndex& mi, const Vector& xi);

/// Map a point of the space to [-1,1]^dim coordinates.
Vector to_legendre_coords(const DesignSpace& space, const Vector& x);

}  // namespace pckhdmr
