#include "pckhdmr/pc_kriging.hpp"

#include <limits>
#include <stdexcept>

namespace pckhdmr {

PcKrigingModel::PcKrigingModel(PcMode mode, PceModel pce, KrigingModel kriging)
    : mode_(mode), pce_(std::move(pce)), kriging_(std::move(kriging)) {
  if (pce_.terms() != kriging_.trend()) {
    throw std::invalid_argument(
        "PcKrigingModel: Kriging trend must equal the selected expansion terms");
  }
}

namespace {

// Least-squares refit of a fixed term set; used to report the expansion
// coefficients matching an OPC-truncated trend.
PceModel refit_prefix(const SampleSet& data, const DesignSpace& space,
                      const std::vector<MultiIndex>& terms, int max_degree) {
  const int n = data.size();
  const int m = static_cast<int>(terms.size());
  Matrix phi(n, m);
  for (int r = 0; r < n; ++r) {
    Vector xi = to_legendre_coords(space, data.point(r));
    for (int c = 0; c < m; ++c) phi(r, c) = tensor_basis_value(terms[static_cast<std::size_t>(c)], xi);
  }
  Vector y = data.responses_vector();
  Eigen::ColPivHouseholderQR<Matrix> qr(phi);
  Vector coef = qr.solve(y);

  Vector residual = y - phi * coef;
  Matrix thin_q = qr.householderQ() * Matrix::Identity(n, m);
  double acc = 0.0;
  bool interpolating = false;
  for (int r = 0; r < n; ++r) {
    double denom = 1.0 - thin_q.row(r).squaredNorm();
    if (denom < 1e-8) {
      interpolating = true;
      break;
    }
    double e = residual(r) / denom;
    acc += e * e;
  }
  double loo = interpolating ? std::numeric_limits<double>::infinity()
                             : std::sqrt(acc / static_cast<double>(n));
  return PceModel(space, terms, std::move(coef), max_degree, loo);
}

}  // namespace

PcKrigingModel fit_pc_kriging(const SampleSet& data, const DesignSpace& space,
                              const PcKrigingConfig& config) {
  if (data.dim() != space.dim()) {
    throw std::invalid_argument("fit_pc_kriging: data/space dimension mismatch");
  }
  if (data.size() < 2) {
    throw std::invalid_argument("fit_pc_kriging: needs at least 2 samples");
  }
  const int degree =
      config.max_degree > 0 ? config.max_degree : default_pce_degree(space.dim());

  PceModel pce = fit_pce(data, space, degree);

  if (config.mode == PcMode::SPC || data.size() < 3 || pce.terms().size() <= 1) {
    // OPC degenerates to SPC when no shorter prefix can be cross-validated.
    KrigingModel km = fit_kriging(data, space, pce.terms(), config.kriging);
    return PcKrigingModel(config.mode, std::move(pce), std::move(km));
  }

  // OPC: evaluate each prefix of the selection order by leave-one-out error
  // of the Kriging fitted with that prefix as trend; ties keep the shortest.
  const std::vector<MultiIndex>& order = pce.terms();
  const std::size_t max_k =
      std::min(order.size(), static_cast<std::size_t>(data.size() - 1));
  double best_loo = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  KrigingModel best_model;
  for (std::size_t k = 1; k <= max_k; ++k) {
    std::vector<MultiIndex> prefix(order.begin(), order.begin() + static_cast<long>(k));
    KrigingModel km = fit_kriging(data, space, prefix, config.kriging);
    double loo = kriging_loo_rmse(data, space, prefix, km.theta(), config.kriging);
    if (loo < best_loo) {
      best_loo = loo;
      best_k = k;
      best_model = std::move(km);
    }
  }
  if (best_k == 0) {
    // Every prefix interpolated its folds; keep the full expansion.
    KrigingModel km = fit_kriging(data, space, order, config.kriging);
    return PcKrigingModel(PcMode::OPC, std::move(pce), std::move(km));
  }

  std::vector<MultiIndex> chosen(order.begin(), order.begin() + static_cast<long>(best_k));
  PceModel truncated = best_k == order.size()
                           ? std::move(pce)
                           : refit_prefix(data, space, chosen, degree);
  return PcKrigingModel(PcMode::OPC, std::move(truncated), std::move(best_model));
}

}  // namespace pckhdmr
