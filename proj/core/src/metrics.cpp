#include "pckhdmr/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace pckhdmr {

namespace {

void check_pair(const Vector& y_true, const Vector& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("metrics: truth/prediction length mismatch");
  }
  if (y_true.size() < 2) {
    throw std::invalid_argument("metrics: need at least two validation points");
  }
}

double total_ss(const Vector& y) {
  const double mean = y.mean();
  return (y.array() - mean).square().sum();
}

}  // namespace

double sample_std(const Vector& y) {
  if (y.size() < 2) throw std::invalid_argument("sample_std: need at least two values");
  return std::sqrt(total_ss(y) / static_cast<double>(y.size() - 1));
}

double r_squared(const Vector& y_true, const Vector& y_pred) {
  check_pair(y_true, y_pred);
  const double ss_tot = total_ss(y_true);
  if (ss_tot <= 0.0) throw std::runtime_error("r_squared: zero total variance");
  const double ss_res = (y_true - y_pred).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

double raae(const Vector& y_true, const Vector& y_pred) {
  check_pair(y_true, y_pred);
  const double std_dev = sample_std(y_true);
  if (std_dev <= 0.0) throw std::runtime_error("raae: zero standard deviation");
  const double s = static_cast<double>(y_true.size());
  return (y_true - y_pred).cwiseAbs().sum() / (s * std_dev);
}

double rmae(const Vector& y_true, const Vector& y_pred) {
  check_pair(y_true, y_pred);
  const double std_dev = sample_std(y_true);
  if (std_dev <= 0.0) throw std::runtime_error("rmae: zero standard deviation");
  return (y_true - y_pred).cwiseAbs().maxCoeff() / std_dev;
}

MetricReport compute_metrics(const Vector& y_true, const Vector& y_pred) {
  MetricReport report;
  report.r2 = r_squared(y_true, y_pred);
  report.raae = raae(y_true, y_pred);
  report.rmae = rmae(y_true, y_pred);
  report.n_validation = static_cast<int>(y_true.size());
  report.std_dev = sample_std(y_true);
  return report;
}

MetricReport evaluate_model(const RealFunction& predictor, const RealFunction& truth,
                            const DesignSpace& space, int n, RandomStream& stream) {
  if (n < 2) throw std::invalid_argument("evaluate_model: need at least two points");
  Vector y_true(n);
  Vector y_pred(n);
  const int p = space.dim();
  for (int k = 0; k < n; ++k) {
    Vector x(p);
    for (int i = 0; i < p; ++i) x(i) = stream.uniform(space.lower(i), space.upper(i));
    y_true(k) = truth(x);
    y_pred(k) = predictor(x);
  }
  return compute_metrics(y_true, y_pred);
}

MetricReport evaluate_model(const RealFunction& predictor, const RealFunction& truth,
                            const std::vector<Distribution>& inputs,
                            const DesignSpace& clip_box, int n, RandomStream& stream) {
  if (n < 2) throw std::invalid_argument("evaluate_model: need at least two points");
  if (static_cast<int>(inputs.size()) != clip_box.dim()) {
    throw std::invalid_argument("evaluate_model: one distribution per dimension required");
  }
  const int p = clip_box.dim();
  Vector y_true(n);
  Vector y_pred(n);
  for (int k = 0; k < n; ++k) {
    Vector x(p);
    for (int i = 0; i < p; ++i) x(i) = inputs[static_cast<std::size_t>(i)].sample(stream);
    x = clip_box.clip(std::move(x));
    y_true(k) = truth(x);
    y_pred(k) = predictor(x);
  }
  return compute_metrics(y_true, y_pred);
}

}  // namespace pckhdmr
