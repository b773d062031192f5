#include "pckhdmr/sensitivity.hpp"

#include <algorithm>
#include <stdexcept>

namespace pckhdmr {

namespace {

double sample_variance(const Vector& v) {
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

}  // namespace

SensitivityReport analyze_sensitivity(const HdmrModel& model,
                                      const std::vector<Distribution>& dists, int n,
                                      RandomStream& stream) {
  const int p = model.dim();
  if (static_cast<int>(dists.size()) != p) {
    throw std::invalid_argument("analyze_sensitivity: one distribution per dimension");
  }
  if (n < 1000) {
    throw std::invalid_argument("analyze_sensitivity: need at least 1000 draws");
  }

  // One column per dimension from a fixed substream, clipped into the box.
  Matrix X(n, p);
  for (int i = 0; i < p; ++i) {
    RandomStream column = stream.substream(static_cast<std::uint64_t>(i));
    const Distribution& d = dists[static_cast<std::size_t>(i)];
    const double lo = model.space().lower(i);
    const double hi = model.space().upper(i);
    for (int k = 0; k < n; ++k) {
      X(k, i) = std::clamp(d.sample(column), lo, hi);
    }
  }

  // Evaluate every component term over the shared rows; the full prediction
  // is f0 plus the row sums, so totals and components stay consistent.
  SensitivityReport report;
  report.mc_samples = n;
  Vector total = Vector::Constant(n, model.f0());

  std::map<ComponentKey, Vector> term_values;
  for (const auto& [key, term] : model.terms()) {
    Vector values(n);
    if (key.is_second_order()) {
      for (int k = 0; k < n; ++k) values(k) = term.value2(X(k, key.i), X(k, key.j));
    } else {
      for (int k = 0; k < n; ++k) values(k) = term.value1(X(k, key.i), model.center()[key.i]);
    }
    total += values;
    term_values.emplace(key, std::move(values));
  }

  report.total_variance = sample_variance(total);
  const bool degenerate = !(report.total_variance > 0.0);

  for (int i = 0; i < p; ++i) report.first_order[i] = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) report.pairwise[{i, j}] = 0.0;
  }
  if (degenerate) {
    report.total_variance = 0.0;
    return report;
  }

  for (const auto& [key, values] : term_values) {
    const double index = sample_variance(values) / report.total_variance;
    if (key.is_second_order()) {
      report.pairwise[{key.i, key.j}] = index;
    } else {
      report.first_order[key.i] = index;
    }
  }
  return report;
}

std::map<int, double> first_order_indices(const HdmrModel& model,
                                          const std::vector<Distribution>& dists,
                                          int n, RandomStream& stream) {
  return analyze_sensitivity(model, dists, n, stream).first_order;
}

std::map<std::pair<int, int>, double> pairwise_indices(
    const HdmrModel& model, const std::vector<Distribution>& dists, int n,
    RandomStream& stream) {
  return analyze_sensitivity(model, dists, n, stream).pairwise;
}

}  // namespace pckhdmr
