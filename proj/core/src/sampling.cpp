#include "pckhdmr/sampling.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pckhdmr {

void SortedAxisSamples::insert(double value, double response) {
  if (!std::isfinite(value) || !std::isfinite(response)) {
    throw std::invalid_argument("SortedAxisSamples::insert: values must be finite");
  }
  if (contains(value)) {
    throw std::invalid_argument("SortedAxisSamples::insert: duplicate coordinate");
  }
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  auto pos = it - values_.begin();
  values_.insert(it, value);
  responses_.insert(responses_.begin() + pos, response);
}

bool SortedAxisSamples::contains(double value, double tol) const {
  for (double v : values_) {
    if (std::abs(v - value) <= tol) return true;
  }
  return false;
}

double proportional_insert(const SortedAxisSamples& axis, double C) {
  if (axis.size() < 2) {
    throw std::invalid_argument("proportional_insert: needs at least 2 samples");
  }
  if (!(C > 0.0) || !(C < 1.0)) {
    throw std::invalid_argument("proportional_insert: C must lie in (0,1)");
  }
  int best = 0;
  double best_jump = -1.0;
  for (int k = 0; k + 1 < axis.size(); ++k) {
    double jump = std::abs(axis.response(k + 1) - axis.response(k));
    if (jump > best_jump) {
      best_jump = jump;
      best = k;
    }
  }
  return C * axis.value(best) + (1.0 - C) * axis.value(best + 1);
}

bool converged(double f_true_at_probe, double f_hat_at_probe, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("converged: epsilon must be positive");
  const double denom = std::max(std::abs(f_true_at_probe), 1e-8);
  return std::abs(f_hat_at_probe - f_true_at_probe) / denom <= epsilon;
}

Vector GridCell::center() const {
  Vector c(2);
  c << 0.5 * (xi_lo + xi_hi), 0.5 * (xj_lo + xj_hi);
  return c;
}

EntropyCandidateGrid::EntropyCandidateGrid(const std::vector<double>& axis_i_values,
                                           const std::vector<double>& axis_j_values) {
  if (axis_i_values.size() < 2 || axis_j_values.size() < 2) {
    throw std::invalid_argument("EntropyCandidateGrid: each axis needs >= 2 values");
  }
  auto check_sorted = [](const std::vector<double>& v) {
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
      if (!(v[k] < v[k + 1])) {
        throw std::invalid_argument(
            "EntropyCandidateGrid: axis values must be strictly increasing");
      }
    }
  };
  check_sorted(axis_i_values);
  check_sorted(axis_j_values);
  for (std::size_t cj = 0; cj + 1 < axis_j_values.size(); ++cj) {
    for (std::size_t ci = 0; ci + 1 < axis_i_values.size(); ++ci) {
      cells_.push_back({axis_i_values[ci], axis_i_values[ci + 1], axis_j_values[cj],
                        axis_j_values[cj + 1]});
    }
  }
}

std::vector<Vector> EntropyCandidateGrid::candidates() const {
  std::vector<Vector> out;
  out.reserve(cells_.size());
  for (const GridCell& cell : cells_) out.push_back(cell.center());
  return out;
}

EntropyCandidateGrid build_candidate_grid(const std::vector<double>& axis_i_values,
                                          const std::vector<double>& axis_j_values) {
  return EntropyCandidateGrid(axis_i_values, axis_j_values);
}

std::size_t max_entropy_select(const SampleSet& existing,
                               const std::vector<Vector>& candidates,
                               const Vector& theta, double sigma2) {
  if (candidates.empty()) {
    throw std::invalid_argument("max_entropy_select: no candidates");
  }
  if (existing.size() < 1) {
    throw std::invalid_argument("max_entropy_select: needs at least one existing point");
  }
  const int n = existing.size();
  const int dim = existing.dim();
  if (theta.size() != dim) {
    throw std::invalid_argument("max_entropy_select: theta dimension mismatch");
  }
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    if (!(theta(k) > 0.0)) {
      throw std::invalid_argument("max_entropy_select: theta entries must be positive");
    }
  }
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("max_entropy_select: sigma2 must be non-negative");
  }

  auto kernel = [&](const Vector& a, const Vector& b) {
    Vector d = a - b;
    return std::exp(-(theta.array() * d.array().square()).sum());
  };

  Matrix corr(n, n);
  for (int a = 0; a < n; ++a) {
    corr(a, a) = 1.0;
    for (int b = 0; b < a; ++b) {
      double e = kernel(existing.point(a), existing.point(b));
      corr(a, b) = e;
      corr(b, a) = e;
    }
  }
  Eigen::LLT<Matrix> llt;
  bool factored = false;
  for (double nugget = 1e-10; nugget <= 1.5e-4; nugget *= 10.0) {
    Matrix c = corr;
    c.diagonal().array() += nugget;
    llt.compute(c);
    if (llt.info() == Eigen::Success) {
      factored = true;
      break;
    }
  }
  if (!factored) {
    throw std::runtime_error(
        "max_entropy_select: correlation matrix singular even at maximum nugget");
  }
  Matrix lower = llt.matrixL();

  // det_N and sigma2 are shared by every candidate, so the argmax reduces to
  // the Schur complement 1 - r' R^-1 r = 1 - |L^-1 r|^2.
  std::size_t best = candidates.size();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Vector& cand = candidates[k];
    if (cand.size() != dim) {
      throw std::invalid_argument("max_entropy_select: candidate dimension mismatch");
    }
    if (existing.contains(cand)) continue;  // coincident: determinant 0, skip
    Vector r(n);
    for (int a = 0; a < n; ++a) r(a) = kernel(cand, existing.point(a));
    Vector z = lower.triangularView<Eigen::Lower>().solve(r);
    double score = 1.0 - z.squaredNorm();
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  if (best == candidates.size()) {
    throw std::runtime_error("max_entropy_select: every candidate coincides with an existing point");
  }
  return best;
}

}  // namespace pckhdmr
