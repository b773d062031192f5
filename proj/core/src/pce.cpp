#include "pckhdmr/pce.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pckhdmr {

PceModel::PceModel(DesignSpace space, std::vector<MultiIndex> terms,
                   Vector coefficients, int max_degree, double loo_error)
    : space_(std::move(space)),
      terms_(std::move(terms)),
      coefficients_(std::move(coefficients)),
      max_degree_(max_degree),
      loo_error_(loo_error) {
  if (static_cast<Eigen::Index>(terms_.size()) != coefficients_.size()) {
    throw std::invalid_argument("PceModel: terms/coefficients length mismatch");
  }
}

double PceModel::predict(const Vector& x) const {
  if (x.size() != space_.dim()) {
    throw std::invalid_argument("PceModel::predict: dimension mismatch");
  }
  if (terms_.empty()) return 0.0;
  Vector xi = to_legendre_coords(space_, x);
  double v = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    v += coefficients_(static_cast<Eigen::Index>(k)) * tensor_basis_value(terms_[k], xi);
  }
  return v;
}

int default_pce_degree(int dim) {
  if (dim <= 1) return 10;
  if (dim == 2) return 5;
  return 3;
}

namespace {

// Leave-one-out RMSE of a least-squares fit from its residuals and the hat
// matrix diagonal: e_k = r_k / (1 - h_kk).  Infinite when the fit
// interpolates some point (h_kk -> 1).  The small-sample correction factor
// N/(N-P) * (1 + tr[(Psi^T Psi)^-1]) penalizes fits close to saturation,
// where the plain estimate is known to be over-optimistic.
double loo_rmse_from_fit(const Vector& residuals, const Vector& hat_diag,
                         double correction = 1.0) {
  const Eigen::Index n = residuals.size();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double denom = 1.0 - hat_diag(k);
    if (denom < 1e-8) return std::numeric_limits<double>::infinity();
    double e = residuals(k) / denom;
    acc += e * e;
  }
  return std::sqrt(correction * acc / static_cast<double>(n));
}

}  // namespace

namespace {

struct SparseFit {
  double loo = std::numeric_limits<double>::infinity();
  std::vector<MultiIndex> terms;
  Vector coef;
};

// One forward-selection pass over the total-degree-d candidate basis: pick
// the most-correlated unused column, refit by least squares, score the
// prefix by corrected leave-one-out error, and keep the best prefix seen.
// Restricting the pool to one degree at a time keeps low-order bases
// reachable even when a higher-order column happens to correlate best with
// an early residual and would otherwise crowd them out of the active set.
void lars_pass(const Matrix& unit_xi, const Vector& y, int dim, int degree,
               SparseFit& best) {
  const int N = static_cast<int>(y.size());
  const std::vector<MultiIndex> candidates = total_degree_set(dim, degree);
  const int M = static_cast<int>(candidates.size());

  Matrix Phi(N, M);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < M; ++c) {
      Phi(r, c) = tensor_basis_value(candidates[static_cast<std::size_t>(c)],
                                     unit_xi.row(r).transpose());
    }
  }
  const double y_scale = y.norm();

  Vector col_norm(M);
  for (int c = 0; c < M; ++c) col_norm(c) = Phi.col(c).norm();

  const int max_active = std::min(M, N - 1);
  std::vector<int> order;
  std::vector<char> used(static_cast<std::size_t>(M), 0);
  Matrix active(N, max_active);
  Vector residual = y;

  std::vector<int> group;
  while (static_cast<int>(order.size()) < max_active) {
    // Most-correlated unused candidate.
    int pick = -1;
    double best_corr = 0.0;
    for (int c = 0; c < M; ++c) {
      if (used[static_cast<std::size_t>(c)] || col_norm(c) <= 1e-300) continue;
      double corr = std::abs(Phi.col(c).dot(residual)) / col_norm(c);
      if (corr > best_corr) {
        best_corr = corr;
        pick = c;
      }
    }
    if (pick < 0 || best_corr <= 1e-12 * std::max(1.0, y_scale)) break;

    // Admit every candidate whose correlation ties the winner within a tight
    // relative tolerance as one group.  Symmetric responses produce exactly
    // tied mirror-image candidates, and resolving such ties by enumeration
    // order would let last-ulp noise in the responses decide the basis — and
    // swing downstream predictions by orders of magnitude.  Candidates with
    // genuinely distinct correlations still enter one at a time.
    group.clear();
    for (int c = 0; c < M; ++c) {
      if (used[static_cast<std::size_t>(c)] || col_norm(c) <= 1e-300) continue;
      double corr = std::abs(Phi.col(c).dot(residual)) / col_norm(c);
      if (corr >= best_corr * (1.0 - 1e-9)) group.push_back(c);
    }

    bool grew = false;
    for (int c : group) {
      const int k = static_cast<int>(order.size());
      if (k >= max_active) break;
      active.col(k) = Phi.col(c);
      Eigen::ColPivHouseholderQR<Matrix> check(active.leftCols(k + 1));
      used[static_cast<std::size_t>(c)] = 1;
      // Linearly dependent on the active set at these points; drop it.
      if (check.rank() < k + 1) continue;
      order.push_back(c);
      grew = true;
    }
    if (!grew) continue;

    const int A = static_cast<int>(order.size());
    Eigen::ColPivHouseholderQR<Matrix> qr(active.leftCols(A));
    Vector coef = qr.solve(y);
    Vector fit_residual = y - active.leftCols(A) * coef;

    Matrix thin_q = qr.householderQ() * Matrix::Identity(N, A);
    // Column pivoting permutes basis order inside Q's span only; the hat
    // diagonal depends on the span, not the ordering.
    Vector hat_diag(N);
    for (int r = 0; r < N; ++r) hat_diag(r) = thin_q.row(r).squaredNorm();

    // tr[(Psi^T Psi)^-1] = ||R^-1||_F^2; pivoting permutes the trace's basis
    // but leaves its value unchanged.
    const Matrix r_inv = qr.matrixR()
                             .topLeftCorner(A, A)
                             .triangularView<Eigen::Upper>()
                             .solve(Matrix::Identity(A, A));
    const double correction = (static_cast<double>(N) / static_cast<double>(N - A)) *
                              (1.0 + r_inv.squaredNorm());

    const double loo = loo_rmse_from_fit(fit_residual, hat_diag, correction);
    // Strict comparison keeps the earlier (lower-degree, shorter) expansion
    // on ties.
    if (loo < best.loo) {
      best.loo = loo;
      best.coef = coef;
      best.terms.clear();
      best.terms.reserve(order.size());
      for (int c : order) best.terms.push_back(candidates[static_cast<std::size_t>(c)]);
    }
    residual = fit_residual;
  }
}

}  // namespace

PceModel fit_pce(const SampleSet& data, const DesignSpace& space, int max_degree) {
  if (data.dim() != space.dim()) {
    throw std::invalid_argument("fit_pce: data/space dimension mismatch");
  }
  if (data.size() < 2) throw std::invalid_argument("fit_pce: needs at least 2 samples");
  if (max_degree < 1) throw std::invalid_argument("fit_pce: max_degree must be at least 1");

  const int N = data.size();
  // Cap the candidate degree so the candidate basis never outnumbers the
  // data.  On N nodes every polynomial of degree >= N is aliased to a lower
  // degree one, so richer sets add no fitting power on the data but let the
  // greedy selection pick terms that oscillate wildly between the nodes.
  int degree = max_degree;
  while (degree > 1 &&
         static_cast<int>(total_degree_set(space.dim(), degree).size()) > N) {
    --degree;
  }

  Matrix unit_xi(N, space.dim());
  for (int r = 0; r < N; ++r) {
    unit_xi.row(r) = to_legendre_coords(space, data.point(r)).transpose();
  }
  const Vector y = data.responses_vector();

  SparseFit best;
  for (int d = 1; d <= degree; ++d) lars_pass(unit_xi, y, space.dim(), d, best);

  if (best.terms.empty()) {
    // Nothing correlates with the data (response is numerically zero):
    // return the constant expansion fitted by least squares.
    const double mean = y.mean();
    Vector coef(1);
    coef(0) = mean;
    Vector res = y - Vector::Constant(N, mean);
    Vector hat = Vector::Constant(N, 1.0 / static_cast<double>(N));
    double loo = loo_rmse_from_fit(res, hat);
    return PceModel(space, {MultiIndex(static_cast<std::size_t>(space.dim()), 0)},
                    std::move(coef), max_degree, loo);
  }

  return PceModel(space, std::move(best.terms), std::move(best.coef), max_degree,
                  best.loo);
}

}  // namespace pckhdmr
