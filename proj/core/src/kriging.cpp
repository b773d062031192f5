#include "pckhdmr/kriging.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pckhdmr {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Matrix unit_coords(const SampleSet& data, const DesignSpace& space) {
  Matrix u(data.size(), data.dim());
  for (int k = 0; k < data.size(); ++k) {
    u.row(k) = space.to_unit(data.point(k)).transpose();
  }
  return u;
}

Matrix trend_matrix(const Matrix& unit_points, const std::vector<MultiIndex>& trend) {
  const Eigen::Index n = unit_points.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(trend.size());
  Matrix f(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    Vector xi = 2.0 * unit_points.row(r).transpose() - Vector::Ones(unit_points.cols());
    for (Eigen::Index c = 0; c < m; ++c) {
      f(r, c) = tensor_basis_value(trend[static_cast<std::size_t>(c)], xi);
    }
  }
  return f;
}

Matrix correlation_matrix(const Matrix& u, const Vector& theta) {
  const Eigen::Index n = u.rows();
  Matrix c(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    c(a, a) = 1.0;
    for (Eigen::Index b = 0; b < a; ++b) {
      Vector diff = (u.row(a) - u.row(b)).transpose();
      double e = std::exp(-(theta.array() * diff.array().square()).sum());
      c(a, b) = e;
      c(b, a) = e;
    }
  }
  return c;
}

struct GlsFit {
  bool ok = false;
  double nugget = 0.0;
  double sigma2 = 0.0;
  double loglik = kNegInf;
  Vector beta;
};

// Concentrated-likelihood evaluation at fixed theta with nugget escalation.
GlsFit gls_at_theta(const Matrix& u, const Vector& y, const Matrix& f,
                    const Vector& theta, const KrigingOptions& opt) {
  const Eigen::Index n = u.rows();
  const Eigen::Index m = f.cols();
  Matrix corr = correlation_matrix(u, theta);
  for (double nugget = opt.nugget_min; nugget <= opt.nugget_max * 1.5; nugget *= 10.0) {
    Matrix c = corr;
    c.diagonal().array() += nugget;
    Eigen::LLT<Matrix> llt(c);
    if (llt.info() != Eigen::Success) continue;
    Matrix lower = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) logdet += 2.0 * std::log(lower(k, k));
    Matrix a = lower.triangularView<Eigen::Lower>().solve(f);
    Vector b = lower.triangularView<Eigen::Lower>().solve(y);
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    if (qr.rank() < m) continue;  // whitened trend lost rank; try more nugget
    Vector beta = qr.solve(b);
    double sigma2 = (b - a * beta).squaredNorm() / static_cast<double>(n);
    double loglik =
        -0.5 * (static_cast<double>(n) * std::log(std::max(sigma2, 1e-300)) + logdet);
    GlsFit out;
    out.ok = true;
    out.nugget = nugget;
    out.sigma2 = sigma2;
    out.loglik = loglik;
    out.beta = std::move(beta);
    return out;
  }
  return {};
}

// Golden-section scan that maximizes eval on [lo, hi]; eval is responsible
// for recording the best point it sees.
template <typename F>
void golden_scan(F&& eval, double lo, double hi, int iters) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < iters; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = eval(d);
    }
  }
}

std::vector<MultiIndex> normalize_trend(std::vector<MultiIndex> trend, int dim) {
  if (trend.empty()) trend.assign(1, MultiIndex(static_cast<std::size_t>(dim), 0));
  for (const MultiIndex& mi : trend) {
    if (static_cast<int>(mi.size()) != dim) {
      throw std::invalid_argument("kriging: trend multi-index dimension mismatch");
    }
    for (int e : mi) {
      if (e < 0) throw std::invalid_argument("kriging: trend exponent must be non-negative");
    }
  }
  return trend;
}

void validate_theta(const Vector& theta, int dim) {
  if (theta.size() != dim) {
    throw std::invalid_argument("kriging: theta dimension mismatch");
  }
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    if (!(theta(k) > 0.0)) {
      throw std::invalid_argument("kriging: theta entries must be positive");
    }
  }
}

}  // namespace

KrigingModel KrigingModel::from_state(SampleSet training, DesignSpace space,
                                      std::vector<MultiIndex> trend, Vector theta,
                                      double nugget, Vector beta, double sigma2,
                                      double loglik) {
  if (training.dim() != space.dim()) {
    throw std::invalid_argument("KrigingModel: training/space dimension mismatch");
  }
  trend = normalize_trend(std::move(trend), space.dim());
  validate_theta(theta, space.dim());
  if (beta.size() != static_cast<Eigen::Index>(trend.size())) {
    throw std::invalid_argument("KrigingModel: beta/trend length mismatch");
  }
  if (!(nugget >= 0.0) || !(sigma2 >= 0.0)) {
    throw std::invalid_argument("KrigingModel: nugget and sigma2 must be non-negative");
  }

  KrigingModel model;
  model.space_ = std::move(space);
  model.training_ = std::move(training);
  model.trend_ = std::move(trend);
  model.theta_ = std::move(theta);
  model.nugget_ = nugget;
  model.sigma2_ = sigma2;
  model.beta_ = std::move(beta);
  model.loglik_ = loglik;

  model.unit_points_ = unit_coords(model.training_, model.space_);
  Matrix c = correlation_matrix(model.unit_points_, model.theta_);
  c.diagonal().array() += nugget;
  Eigen::LLT<Matrix> llt(c);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("KrigingModel: correlation matrix not positive definite");
  }
  model.chol_lower_ = llt.matrixL();

  Matrix f = trend_matrix(model.unit_points_, model.trend_);
  model.whitened_trend_ = model.chol_lower_.triangularView<Eigen::Lower>().solve(f);

  Vector resid = model.training_.responses_vector() - f * model.beta_;
  Vector tmp = model.chol_lower_.triangularView<Eigen::Lower>().solve(resid);
  model.corr_weights_ =
      model.chol_lower_.transpose().triangularView<Eigen::Upper>().solve(tmp);

  Matrix g = model.whitened_trend_.transpose() * model.whitened_trend_;
  Eigen::LLT<Matrix> gllt(g);
  if (gllt.info() != Eigen::Success) {
    throw std::runtime_error("KrigingModel: trend normal matrix not positive definite");
  }
  model.gls_chol_lower_ = gllt.matrixL();
  return model;
}

Vector KrigingModel::correlation_vector(const Vector& u) const {
  const Eigen::Index n = unit_points_.rows();
  Vector r(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Vector diff = u - unit_points_.row(a).transpose();
    r(a) = std::exp(-(theta_.array() * diff.array().square()).sum());
    // The nugget is the zero-distance component of the covariance, so a query
    // that lands on a training input keeps c(x, x_a) = C_aa and the posterior
    // reproduces the stored response there regardless of how far the nugget
    // escalated during fitting.
    if (diff.squaredNorm() == 0.0) r(a) += nugget_;
  }
  return r;
}

Vector KrigingModel::trend_values(const Vector& x) const {
  Vector xi = to_legendre_coords(space_, x);
  Vector f(static_cast<Eigen::Index>(trend_.size()));
  for (std::size_t k = 0; k < trend_.size(); ++k) {
    f(static_cast<Eigen::Index>(k)) = tensor_basis_value(trend_[k], xi);
  }
  return f;
}

std::pair<double, double> KrigingModel::predict(const Vector& x) const {
  if (x.size() != space_.dim()) {
    throw std::invalid_argument("KrigingModel::predict: dimension mismatch");
  }
  Vector u = space_.to_unit(x);
  Vector r = correlation_vector(u);
  Vector fx = trend_values(x);
  double mean = fx.dot(beta_) + r.dot(corr_weights_);

  Vector z = chol_lower_.triangularView<Eigen::Lower>().solve(r);
  Vector v = whitened_trend_.transpose() * z - fx;
  Vector q = gls_chol_lower_.triangularView<Eigen::Lower>().solve(v);
  // Prior variance 1 + nugget matches the covariance used for the training
  // matrix; at a training input z'z = 1 + nugget and the posterior variance
  // collapses to zero instead of going slightly negative.
  double variance = sigma2_ * (1.0 + nugget_ - z.squaredNorm() + q.squaredNorm());
  const double slack = 1e-10 * std::max(1.0, sigma2_);
  if (variance < -slack) {
    throw std::runtime_error("KrigingModel::predict: negative variance beyond tolerance");
  }
  return {mean, std::max(variance, 0.0)};
}

double KrigingModel::predict_mean(const Vector& x) const {
  if (x.size() != space_.dim()) {
    throw std::invalid_argument("KrigingModel::predict_mean: dimension mismatch");
  }
  Vector u = space_.to_unit(x);
  return trend_values(x).dot(beta_) + correlation_vector(u).dot(corr_weights_);
}

KrigingModel fit_kriging(const SampleSet& data, const DesignSpace& space,
                         std::vector<MultiIndex> trend, const KrigingOptions& opt) {
  if (data.dim() != space.dim()) {
    throw std::invalid_argument("fit_kriging: data/space dimension mismatch");
  }
  if (data.size() < 2) throw std::invalid_argument("fit_kriging: needs at least 2 samples");
  trend = normalize_trend(std::move(trend), space.dim());
  const int m = static_cast<int>(trend.size());
  if (data.size() < m) {
    throw std::invalid_argument("fit_kriging: more trend functions than samples");
  }
  if (!(opt.theta_min > 0.0) || !(opt.theta_min < opt.theta_max)) {
    throw std::invalid_argument("fit_kriging: invalid theta bounds");
  }

  const Matrix u = unit_coords(data, space);
  const Matrix f = trend_matrix(u, trend);
  {
    Eigen::ColPivHouseholderQR<Matrix> qr(f);
    if (qr.rank() < m) {
      throw std::runtime_error(
          "fit_kriging: trend matrix is rank-deficient at the training points");
    }
  }
  const Vector y = data.responses_vector();
  const int dim = space.dim();

  double best_ll = kNegInf;
  Vector best_theta;
  auto consider = [&](const Vector& th) {
    GlsFit g = gls_at_theta(u, y, f, th, opt);
    double ll = g.ok ? g.loglik : kNegInf;
    if (ll > best_ll) {
      best_ll = ll;
      best_theta = th;
    }
    return ll;
  };

  const double lo = std::log10(opt.theta_min);
  const double hi = std::log10(opt.theta_max);
  const int starts = std::max(opt.ladder_starts, 1);
  for (int s = 0; s < starts; ++s) {
    double t = starts == 1 ? 0.5 * (lo + hi)
                           : lo + (hi - lo) * static_cast<double>(s) /
                                      static_cast<double>(starts - 1);
    consider(Vector::Constant(dim, std::pow(10.0, t)));
  }
  if (!(best_ll > kNegInf)) {
    throw std::runtime_error(
        "fit_kriging: correlation matrix singular even at maximum nugget");
  }

  for (int sweep = 0; sweep < opt.refine_sweeps; ++sweep) {
    for (int k = 0; k < dim; ++k) {
      const Vector base = best_theta;
      golden_scan(
          [&](double t) {
            Vector th = base;
            th(k) = std::pow(10.0, t);
            return consider(th);
          },
          lo, hi, opt.golden_iters);
    }
  }

  GlsFit g = gls_at_theta(u, y, f, best_theta, opt);
  return KrigingModel::from_state(data, space, std::move(trend), best_theta, g.nugget,
                                  std::move(g.beta), g.sigma2, g.loglik);
}

double kriging_log_likelihood(const SampleSet& data, const DesignSpace& space,
                              const std::vector<MultiIndex>& trend0,
                              const Vector& theta, const KrigingOptions& opt) {
  if (data.dim() != space.dim()) {
    throw std::invalid_argument("kriging_log_likelihood: dimension mismatch");
  }
  std::vector<MultiIndex> trend = normalize_trend(trend0, space.dim());
  validate_theta(theta, space.dim());
  Matrix u = unit_coords(data, space);
  Matrix f = trend_matrix(u, trend);
  GlsFit g = gls_at_theta(u, data.responses_vector(), f, theta, opt);
  return g.ok ? g.loglik : kNegInf;
}

double kriging_loo_rmse(const SampleSet& data, const DesignSpace& space,
                        const std::vector<MultiIndex>& trend0, const Vector& theta,
                        const KrigingOptions& opt) {
  if (data.dim() != space.dim()) {
    throw std::invalid_argument("kriging_loo_rmse: dimension mismatch");
  }
  std::vector<MultiIndex> trend = normalize_trend(trend0, space.dim());
  validate_theta(theta, space.dim());
  const int n = data.size();
  if (n < 3) throw std::invalid_argument("kriging_loo_rmse: needs at least 3 samples");
  if (n - 1 < static_cast<int>(trend.size())) {
    throw std::invalid_argument("kriging_loo_rmse: folds smaller than trend basis");
  }

  double acc = 0.0;
  for (int hold = 0; hold < n; ++hold) {
    SampleSet fold(data.dim());
    for (int k = 0; k < n; ++k) {
      if (k != hold) fold.add(data.point(k), data.response(k));
    }
    Matrix u = unit_coords(fold, space);
    Matrix f = trend_matrix(u, trend);
    GlsFit g = gls_at_theta(u, fold.responses_vector(), f, theta, opt);
    if (!g.ok) {
      throw std::runtime_error("kriging_loo_rmse: singular fold correlation matrix");
    }
    KrigingModel model = KrigingModel::from_state(std::move(fold), space, trend, theta,
                                                  g.nugget, std::move(g.beta), g.sigma2,
                                                  g.loglik);
    double err = model.predict_mean(data.point(hold)) - data.response(hold);
    acc += err * err;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

}  // namespace pckhdmr
