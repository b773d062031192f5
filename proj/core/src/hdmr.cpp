#include "pckhdmr/hdmr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>

#include "pckhdmr/random.hpp"
#include "pckhdmr/sampling.hpp"

namespace pckhdmr {

ComponentKey ComponentKey::second_order(int a, int b) {
  if (a == b) throw std::invalid_argument("ComponentKey: pair axes must differ");
  if (a > b) std::swap(a, b);
  if (a < 0) throw std::invalid_argument("ComponentKey: negative axis index");
  return {a, b};
}

std::string to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Zero:
      return "zero";
    case TermKind::Linear:
      return "linear";
    case TermKind::Surrogate:
      return "surrogate";
  }
  throw std::logic_error("to_string: unknown term kind");
}

TermKind term_kind_from_string(const std::string& name) {
  if (name == "zero") return TermKind::Zero;
  if (name == "linear") return TermKind::Linear;
  if (name == "surrogate") return TermKind::Surrogate;
  throw std::invalid_argument("unknown term kind: " + name);
}

double ComponentTerm::value1(double v, double c_i) const {
  switch (kind) {
    case TermKind::Zero:
      return 0.0;
    case TermKind::Linear:
      return slope * (v - c_i);
    case TermKind::Surrogate: {
      Vector x(1);
      x << v;
      return model->mean(x) - center_offset;
    }
  }
  throw std::logic_error("ComponentTerm::value1: unknown kind");
}

double ComponentTerm::value2(double vi, double vj) const {
  if (kind != TermKind::Surrogate || !model) return 0.0;
  Vector x(2);
  x << vi, vj;
  return model->mean(x) - center_offset;
}

HdmrModel::HdmrModel(DesignSpace space, CutCenter center, double f0,
                     SurrogateBackend backend, std::map<ComponentKey, ComponentTerm> terms,
                     long long probe_evals, long long total_evals)
    : space_(std::move(space)),
      center_(std::move(center)),
      f0_(f0),
      backend_(backend),
      terms_(std::move(terms)),
      probe_evals_(probe_evals),
      total_evals_(total_evals) {
  if (center_.dim() != space_.dim()) {
    throw std::invalid_argument("HdmrModel: center/space dimension mismatch");
  }
  for (const auto& [key, term] : terms_) {
    const bool first_ok = key.i >= 0 && key.i < dim();
    const bool second_ok = !key.is_second_order() || (key.j > key.i && key.j < dim());
    if (!first_ok || !second_ok) {
      throw std::invalid_argument("HdmrModel: term key out of range");
    }
    if ((term.kind == TermKind::Surrogate) != term.model.has_value()) {
      throw std::invalid_argument("HdmrModel: surrogate terms must carry a model");
    }
  }
}

const ComponentTerm* HdmrModel::find_term(const ComponentKey& key) const {
  ComponentKey normalized =
      key.is_second_order() ? ComponentKey::second_order(key.i, key.j) : key;
  auto it = terms_.find(normalized);
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<std::vector<bool>> HdmrModel::coupling_matrix() const {
  const int p = dim();
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(p),
                                   std::vector<bool>(static_cast<std::size_t>(p), false));
  for (int i = 0; i < p; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  for (const auto& [key, term] : terms_) {
    if (!key.is_second_order()) continue;
    m[static_cast<std::size_t>(key.i)][static_cast<std::size_t>(key.j)] = true;
    m[static_cast<std::size_t>(key.j)][static_cast<std::size_t>(key.i)] = true;
  }
  return m;
}

std::vector<std::pair<int, int>> HdmrModel::coupled_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& [key, term] : terms_) {
    if (key.is_second_order()) out.emplace_back(key.i, key.j);
  }
  return out;
}

double HdmrModel::predict(const Vector& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("HdmrModel::predict: dimension mismatch");
  }
  double acc = f0_;
  for (const auto& [key, term] : terms_) {
    if (key.is_second_order()) {
      acc += term.value2(x(key.i), x(key.j));
    } else {
      acc += term.value1(x(key.i), center_[key.i]);
    }
  }
  return acc;
}

Vector HdmrModel::predict_batch(const Matrix& X) const {
  if (X.cols() != dim()) {
    throw std::invalid_argument("HdmrModel::predict_batch: dimension mismatch");
  }
  Vector out(X.rows());
  for (Eigen::Index r = 0; r < X.rows(); ++r) out(r) = predict(X.row(r).transpose());
  return out;
}

double HdmrModel::term_value(const ComponentKey& key, const Vector& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("HdmrModel::term_value: dimension mismatch");
  }
  const ComponentTerm* term = find_term(key);
  if (term == nullptr) return 0.0;
  if (term->key.is_second_order()) return term->value2(x(term->key.i), x(term->key.j));
  return term->value1(x(term->key.i), center_[term->key.i]);
}

bool linearity_test(double a, double response_a, double b, double response_b,
                    double center, double tol) {
  if (!(b > a)) throw std::invalid_argument("linearity_test: requires a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("linearity_test: tol must be positive");
  const double line_at_center = response_a + (response_b - response_a) * (center - a) / (b - a);
  const double scale = 1.0 + std::max(std::abs(response_a), std::abs(response_b));
  return std::abs(line_at_center) <= tol * scale;
}

namespace {

Vector one_coord(double v) {
  Vector x(1);
  x << v;
  return x;
}

void validate_config(const BuildConfig& cfg) {
  if (!(cfg.C > 0.0) || !(cfg.C < 1.0)) {
    throw std::invalid_argument("BuildConfig: C must lie in (0,1)");
  }
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("BuildConfig: epsilon must be positive");
  if (!(cfg.linearity_tol > 0.0)) {
    throw std::invalid_argument("BuildConfig: linearity_tol must be positive");
  }
  if (cfg.stage1_max < 3) throw std::invalid_argument("BuildConfig: stage1_max must be >= 3");
  if (cfg.stage2_max < 1) throw std::invalid_argument("BuildConfig: stage2_max must be >= 1");
  if (cfg.probe_count < 1) throw std::invalid_argument("BuildConfig: probe_count must be >= 1");
}

struct CouplingOutcome {
  std::vector<std::pair<int, int>> pairs;
  // Per detected pair: plane coordinates of its probe and the residual
  // target, recycled as free training data for the second stage.
  std::map<std::pair<int, int>, std::pair<Vector, double>> probes;
  long long evals = 0;
  bool exhausted = false;
};

double farthest_from(const std::vector<double>& pool, double center) {
  double best = pool.front();
  double best_dist = std::abs(pool.front() - center);
  for (double v : pool) {
    double dist = std::abs(v - center);
    if (dist > best_dist) {
      best_dist = dist;
      best = v;
    }
  }
  return best;
}

// Shared detection core: phase (a) additive probes at randomly drawn used
// axis coordinates, then phase (b) one deterministic plane probe per pair at
// the used coordinates farthest from the center.
CouplingOutcome detect_coupling_impl(BudgetedFunction& f, const CutCenter& center,
                                     double f0,
                                     const std::vector<std::vector<double>>& pools,
                                     const std::function<double(int, double)>& term1,
                                     const BuildConfig& cfg) {
  CouplingOutcome out;
  const int p = center.dim();
  RandomStream rng = RandomStream(cfg.seed).substream(0x70726f6265ULL);

  auto try_eval = [&](const Vector& x) -> std::optional<double> {
    try {
      return f(x);
    } catch (const BudgetExhausted&) {
      out.exhausted = true;
      return std::nullopt;
    }
  };

  bool coupled = false;
  for (int t = 0; t < cfg.probe_count && !coupled; ++t) {
    Vector xe = center.coords();
    for (int i = 0; i < p; ++i) {
      const std::vector<double>& pool = pools[static_cast<std::size_t>(i)];
      if (pool.empty()) continue;
      auto idx = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(pool.size()));
      idx = std::min(idx, pool.size() - 1);
      xe(i) = pool[idx];
    }
    std::optional<double> ft = try_eval(xe);
    if (!ft) return out;
    ++out.evals;
    double fhat = f0;
    for (int i = 0; i < p; ++i) fhat += term1(i, xe(i));
    if (!converged(*ft, fhat, cfg.epsilon)) coupled = true;
  }
  if (!coupled) return out;

  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const std::vector<double>& pool_i = pools[static_cast<std::size_t>(i)];
      const std::vector<double>& pool_j = pools[static_cast<std::size_t>(j)];
      if (pool_i.empty() || pool_j.empty()) continue;
      const double vi = farthest_from(pool_i, center[i]);
      const double vj = farthest_from(pool_j, center[j]);
      std::optional<double> ft = try_eval(plane_point(center, i, j, vi, vj));
      if (!ft) return out;
      ++out.evals;
      const double resid = *ft - f0 - term1(i, vi) - term1(j, vj);
      if (std::abs(resid) > cfg.epsilon * (1.0 + std::abs(*ft))) {
        out.pairs.emplace_back(i, j);
        Vector coords(2);
        coords << vi, vj;
        out.probes[{i, j}] = {coords, resid};
      }
    }
  }
  return out;
}

struct AxisState {
  int index = 0;
  TermKind kind = TermKind::Surrogate;
  double slope = 0.0;
  SortedAxisSamples samples;  // coordinate -> f(axis point) - f0
  bool done = false;
  int evals = 0;
  std::optional<ComponentModel> model;
  double center_offset = 0.0;
  bool needs_fit = true;
};

struct PairState {
  int i = 0;
  int j = 0;
  DesignSpace plane{Vector::Constant(2, 0.0), Vector::Constant(2, 1.0)};
  Vector center2{Vector::Constant(2, 0.0)};
  SampleSet data{2};
  std::vector<Vector> candidates;
  bool done = false;
  int evals = 0;
  std::optional<ComponentModel> model;
  double center_offset = 0.0;
  bool needs_fit = true;
};

class Builder {
 public:
  Builder(BudgetedFunction& f, const DesignSpace& space, const CutCenter& center,
          const BuildConfig& cfg)
      : f_(f), space_(space), center_(center), cfg_(cfg) {}

  HdmrModel run() {
    validate_config(cfg_);
    if (f_.arity() != space_.dim()) {
      throw std::invalid_argument("build_hdmr: function arity != space dimension");
    }
    if (center_.dim() != space_.dim()) {
      throw std::invalid_argument("build_hdmr: center dimension mismatch");
    }
    start_count_ = f_.eval_count();

    std::optional<double> f0 = eval(center_.coords());
    if (!f0) {
      throw HdmrBuildError("evaluation budget exhausted before the center evaluation",
                           nullptr);
    }
    f0_ = *f0;

    seed_axes();
    if (!exhausted_) stage1();
    finalize_axes();
    if (!exhausted_ && space_.dim() >= 2) detect_and_seed_pairs();
    if (!exhausted_) stage2();
    finalize_pairs();

    HdmrModel model = assemble();
    if (exhausted_) {
      throw HdmrBuildError("evaluation budget exhausted during build",
                           std::make_shared<HdmrModel>(std::move(model)));
    }
    return model;
  }

 private:
  BudgetedFunction& f_;
  const DesignSpace& space_;
  const CutCenter& center_;
  const BuildConfig& cfg_;

  long long start_count_ = 0;
  bool exhausted_ = false;
  double f0_ = 0.0;
  std::vector<AxisState> axes_;
  std::vector<PairState> pairs_;
  long long probe_evals_ = 0;

  std::optional<double> eval(const Vector& x) {
    if (exhausted_) return std::nullopt;
    try {
      return f_(x);
    } catch (const BudgetExhausted&) {
      exhausted_ = true;
      return std::nullopt;
    }
  }

  DesignSpace axis_space(int i) const { return space_.subspace({i}); }

  void seed_axes() {
    const int p = space_.dim();
    axes_.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
      AxisState& s = axes_[static_cast<std::size_t>(i)];
      s.index = i;
      const double lo = space_.lower(i);
      const double hi = space_.upper(i);

      std::optional<double> fa = eval(axis_point(center_, i, lo));
      if (!fa) {
        s.kind = TermKind::Zero;
        s.done = true;
        return;
      }
      ++s.evals;
      std::optional<double> fb = eval(axis_point(center_, i, hi));
      if (!fb) {
        s.kind = TermKind::Zero;
        s.done = true;
        return;
      }
      ++s.evals;

      const double ra = *fa - f0_;
      const double rb = *fb - f0_;
      s.samples.insert(lo, ra);
      s.samples.insert(hi, rb);
      if (!s.samples.contains(center_[i])) s.samples.insert(center_[i], 0.0);

      const double zero_scale = cfg_.linearity_tol * (1.0 + std::abs(f0_));
      if (std::abs(ra) <= zero_scale && std::abs(rb) <= zero_scale) {
        s.kind = TermKind::Zero;
        s.done = true;
      } else if (linearity_test(lo, ra, hi, rb, center_[i], cfg_.linearity_tol)) {
        s.kind = TermKind::Linear;
        s.slope = (rb - ra) / (hi - lo);
        s.done = true;
      } else {
        s.kind = TermKind::Surrogate;
      }
    }
  }

  void fit_axis(AxisState& s) {
    SampleSet data(1);
    for (int k = 0; k < s.samples.size(); ++k) {
      data.add(one_coord(s.samples.value(k)), s.samples.response(k));
    }
    try {
      s.model = ComponentModel::fit(data, axis_space(s.index), cfg_.surrogate);
    } catch (const std::exception& e) {
      throw std::runtime_error("first-order term " + std::to_string(s.index) +
                               " failed to fit: " + e.what());
    }
    s.needs_fit = false;
  }

  void step_axis(AxisState& s) {
    if (s.needs_fit || !s.model) fit_axis(s);
    const double x_new = proportional_insert(s.samples, cfg_.C);
    if (s.samples.contains(x_new)) {
      // Interval resolution exhausted; nothing new to learn here.
      s.done = true;
      return;
    }
    std::optional<double> ft = eval(axis_point(center_, s.index, x_new));
    if (!ft) return;
    ++s.evals;
    const double c_i = center_[s.index];
    const double f_hat =
        f0_ + (s.model->mean(one_coord(x_new)) - s.model->mean(one_coord(c_i)));
    const bool conv = converged(*ft, f_hat, cfg_.epsilon);
    s.samples.insert(x_new, *ft - f0_);
    s.needs_fit = true;
    if (conv) s.done = true;
  }

  void stage1() {
    while (!exhausted_) {
      bool stepped = false;
      for (AxisState& s : axes_) {
        if (exhausted_) break;
        if (s.kind != TermKind::Surrogate || s.done) continue;
        if (s.samples.size() >= cfg_.stage1_max) {
          s.done = true;
          continue;
        }
        step_axis(s);
        stepped = true;
      }
      if (!stepped) break;
    }
  }

  void finalize_axes() {
    for (AxisState& s : axes_) {
      if (s.kind != TermKind::Surrogate) continue;
      if (s.samples.size() < 2) {
        s.kind = TermKind::Zero;  // not enough data survived the budget
        continue;
      }
      if (s.needs_fit || !s.model) fit_axis(s);
      s.center_offset = s.model->mean(one_coord(center_[s.index]));
    }
  }

  double axis_term(int i, double v) const {
    const AxisState& s = axes_[static_cast<std::size_t>(i)];
    switch (s.kind) {
      case TermKind::Zero:
        return 0.0;
      case TermKind::Linear:
        return s.slope * (v - center_[i]);
      case TermKind::Surrogate:
        return s.model->mean(one_coord(v)) - s.center_offset;
    }
    throw std::logic_error("axis_term: unknown kind");
  }

  std::vector<std::vector<double>> axis_pools() const {
    std::vector<std::vector<double>> pools(axes_.size());
    for (std::size_t i = 0; i < axes_.size(); ++i) {
      for (double v : axes_[i].samples.values()) {
        if (std::abs(v - center_[static_cast<int>(i)]) > 1e-12) pools[i].push_back(v);
      }
    }
    return pools;
  }

  void detect_and_seed_pairs() {
    CouplingOutcome outcome = detect_coupling_impl(
        f_, center_, f0_, axis_pools(),
        [this](int i, double v) { return axis_term(i, v); }, cfg_);
    probe_evals_ = outcome.evals;
    if (outcome.exhausted) exhausted_ = true;

    for (const auto& [ij, probe] : outcome.probes) {
      const auto [i, j] = ij;
      PairState P;
      P.i = i;
      P.j = j;
      P.plane = space_.subspace({i, j});
      P.center2 = Vector(2);
      P.center2 << center_[i], center_[j];

      // Free training data: the plane center (exact zero residual), the
      // first-stage axis samples dropped into the plane, and the detection
      // probe itself.  None of these consume budget.
      P.data.add(P.center2, 0.0);
      const AxisState& si = axes_[static_cast<std::size_t>(i)];
      for (int k = 0; k < si.samples.size(); ++k) {
        const double v = si.samples.value(k);
        if (std::abs(v - center_[i]) <= 1e-12) continue;
        Vector x2(2);
        x2 << v, center_[j];
        P.data.add(x2, si.samples.response(k) - axis_term(i, v));
      }
      const AxisState& sj = axes_[static_cast<std::size_t>(j)];
      for (int k = 0; k < sj.samples.size(); ++k) {
        const double w = sj.samples.value(k);
        if (std::abs(w - center_[j]) <= 1e-12) continue;
        Vector x2(2);
        x2 << center_[i], w;
        P.data.add(x2, sj.samples.response(k) - axis_term(j, w));
      }
      if (!P.data.contains(probe.first)) P.data.add(probe.first, probe.second);

      P.candidates =
          build_candidate_grid(si.samples.values(), sj.samples.values()).candidates();
      pairs_.push_back(std::move(P));
    }
  }

  void fit_pair(PairState& P) {
    try {
      P.model = ComponentModel::fit(P.data, P.plane, cfg_.surrogate);
    } catch (const std::exception& e) {
      throw std::runtime_error("second-order term (" + std::to_string(P.i) + "," +
                               std::to_string(P.j) + ") failed to fit: " + e.what());
    }
    P.needs_fit = false;
  }

  void prune_candidates(PairState& P) const {
    std::vector<Vector> kept;
    kept.reserve(P.candidates.size());
    for (const Vector& cand : P.candidates) {
      if (!P.data.contains(cand)) kept.push_back(cand);
    }
    P.candidates = std::move(kept);
  }

  void step_pair(PairState& P) {
    if (P.evals >= cfg_.stage2_max) {
      P.done = true;
      return;
    }
    prune_candidates(P);
    if (P.candidates.empty()) {
      P.done = true;
      return;
    }
    if (P.needs_fit || !P.model) fit_pair(P);

    Vector theta_unit = P.model->entropy_theta(2);
    Vector theta_raw(2);
    theta_raw(0) = theta_unit(0) / (P.plane.range(0) * P.plane.range(0));
    theta_raw(1) = theta_unit(1) / (P.plane.range(1) * P.plane.range(1));
    const std::size_t idx =
        max_entropy_select(P.data, P.candidates, theta_raw, P.model->entropy_sigma2());
    const Vector x2 = P.candidates[idx];
    P.candidates.erase(P.candidates.begin() + static_cast<long>(idx));

    std::optional<double> ft = eval(plane_point(center_, P.i, P.j, x2(0), x2(1)));
    if (!ft) return;
    ++P.evals;
    const double ti = axis_term(P.i, x2(0));
    const double tj = axis_term(P.j, x2(1));
    const double f_hat =
        f0_ + ti + tj + (P.model->mean(x2) - P.model->mean(P.center2));
    const bool conv = converged(*ft, f_hat, cfg_.epsilon);
    if (std::getenv("PCKHDMR_TRACE_PAIRS") != nullptr) {
      std::fprintf(stderr,
                   "pair(%d,%d) step %d x2=(%.6g,%.6g) f=%.17g fhat=%.17g "
                   "ti=%.17g tj=%.17g pd=%.17g rel=%.6e conv=%d\n",
                   P.i, P.j, P.evals, x2(0), x2(1), *ft, f_hat, ti, tj,
                   P.model->mean(x2) - P.model->mean(P.center2),
                   std::abs(f_hat - *ft) / std::max(std::abs(*ft), 1e-8),
                   conv ? 1 : 0);
    }
    P.data.add(x2, *ft - f0_ - ti - tj);
    P.needs_fit = true;
    if (conv) P.done = true;
  }

  void stage2() {
    while (!exhausted_) {
      bool stepped = false;
      for (PairState& P : pairs_) {
        if (exhausted_) break;
        if (P.done) continue;
        step_pair(P);
        stepped = true;
      }
      if (!stepped) break;
    }
  }

  void finalize_pairs() {
    for (PairState& P : pairs_) {
      if (P.needs_fit || !P.model) fit_pair(P);
      P.center_offset = P.model->mean(P.center2);
    }
  }

  HdmrModel assemble() {
    std::map<ComponentKey, ComponentTerm> terms;
    for (AxisState& s : axes_) {
      ComponentTerm t;
      t.key = ComponentKey::first_order(s.index);
      t.kind = s.kind;
      t.sample_count = s.evals;
      t.slope = s.kind == TermKind::Linear ? s.slope : 0.0;
      if (s.kind == TermKind::Surrogate) {
        t.model = s.model;
        t.center_offset = s.center_offset;
      }
      t.axis_values = s.samples.values();
      terms.emplace(t.key, std::move(t));
    }
    for (PairState& P : pairs_) {
      ComponentTerm t;
      t.key = ComponentKey::second_order(P.i, P.j);
      t.kind = TermKind::Surrogate;
      t.sample_count = P.evals;
      t.model = P.model;
      t.center_offset = P.center_offset;
      terms.emplace(t.key, std::move(t));
    }

    const long long total = f_.eval_count() - start_count_;
    long long accounted = 1 + probe_evals_;
    for (const AxisState& s : axes_) accounted += s.evals;
    for (const PairState& P : pairs_) accounted += P.evals;
    if (accounted != total) {
      throw std::logic_error("build_hdmr: evaluation accounting mismatch");
    }
    return HdmrModel(space_, center_, f0_, cfg_.surrogate.backend, std::move(terms),
                     probe_evals_, total);
  }
};

}  // namespace

std::vector<std::pair<int, int>> coupling_existence_test(BudgetedFunction& f,
                                                         const HdmrModel& first_order,
                                                         const BuildConfig& cfg) {
  const int p = first_order.dim();
  std::vector<std::vector<double>> pools(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    const ComponentTerm* term = first_order.find_term(ComponentKey::first_order(i));
    if (term == nullptr) continue;
    for (double v : term->axis_values) {
      if (std::abs(v - first_order.center()[i]) > 1e-12) {
        pools[static_cast<std::size_t>(i)].push_back(v);
      }
    }
  }
  auto term1 = [&](int i, double v) {
    const ComponentTerm* term = first_order.find_term(ComponentKey::first_order(i));
    return term == nullptr ? 0.0 : term->value1(v, first_order.center()[i]);
  };
  CouplingOutcome outcome =
      detect_coupling_impl(f, first_order.center(), first_order.f0(), pools, term1, cfg);
  if (outcome.exhausted) {
    throw HdmrBuildError("evaluation budget exhausted during coupling test",
                         std::make_shared<HdmrModel>(first_order));
  }
  return outcome.pairs;
}

HdmrModel build_hdmr(BudgetedFunction& f, const DesignSpace& space,
                     const CutCenter& center, const BuildConfig& cfg) {
  Builder builder(f, space, center, cfg);
  return builder.run();
}

HdmrModel build_hdmr(BudgetedFunction& f, const DesignSpace& space,
                     const BuildConfig& cfg) {
  return build_hdmr(f, space, CutCenter(space.midpoint(), space), cfg);
}

}  // namespace pckhdmr
