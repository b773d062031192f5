#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "pckhdmr/hdmr.hpp"
#include "pckhdmr/metrics.hpp"
#include "pckhdmr/random.hpp"
#include "pckhdmr/serialization.hpp"

using namespace pckhdmr;

namespace {

DesignSpace cube(int dim, double lo = -1.0, double hi = 1.0) {
  return DesignSpace(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

Vector random_point(const DesignSpace& space, RandomStream& rng) {
  Vector x(space.dim());
  for (int k = 0; k < space.dim(); ++k) x(k) = rng.uniform(space.lower(k), space.upper(k));
  return x;
}

}  // namespace

TEST_CASE("component keys canonicalize and order pairs") {
  ComponentKey k = ComponentKey::second_order(3, 1);
  CHECK(k.i == 1);
  CHECK(k.j == 3);
  CHECK(k.is_second_order());
  CHECK_FALSE(ComponentKey::first_order(2).is_second_order());
  CHECK(ComponentKey::first_order(1) < ComponentKey::second_order(1, 2));
  CHECK_THROWS_AS(ComponentKey::second_order(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(ComponentKey::second_order(-1, 2), std::invalid_argument);
}

TEST_CASE("term kind names round-trip") {
  for (auto kind : {TermKind::Zero, TermKind::Linear, TermKind::Surrogate}) {
    CHECK(term_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(term_kind_from_string("quadratic"), std::exception);
}

TEST_CASE("two-point line test flags straight axis responses") {
  // Centered responses of a linear cross-section vanish at the center.
  CHECK(linearity_test(-1.0, -2.0, 1.0, 2.0, 0.0, 1e-6));
  // A symmetric bump does not.
  CHECK_FALSE(linearity_test(-1.0, 1.0, 1.0, 1.0, 0.0, 1e-6));
  // Off-center anchor: the line through (0,-1),(1,1) crosses zero at 0.5.
  CHECK(linearity_test(0.0, -1.0, 1.0, 1.0, 0.5, 1e-6));
}

TEST_CASE("malformed build configurations are rejected up front") {
  DesignSpace space = cube(2);
  BudgetedFunction f(2, [](const Vector& x) { return x.sum(); });
  BuildConfig cfg;
  cfg.C = 0.0;
  CHECK_THROWS_AS(build_hdmr(f, space, cfg), std::invalid_argument);
  cfg = {};
  cfg.epsilon = -1.0;
  CHECK_THROWS_AS(build_hdmr(f, space, cfg), std::invalid_argument);
  cfg = {};
  cfg.stage1_max = 2;
  CHECK_THROWS_AS(build_hdmr(f, space, cfg), std::invalid_argument);
  cfg = {};
  BudgetedFunction wrong(3, [](const Vector& x) { return x.sum(); });
  CHECK_THROWS_AS(build_hdmr(wrong, space, cfg), std::invalid_argument);
}

TEST_CASE("exactly linear and inert axes are classified, not modeled") {
  DesignSpace space = cube(3);
  BudgetedFunction f(3, [](const Vector& x) { return 3.0 * x(0) - 2.0 * x(2) + 7.0; });
  HdmrModel model = build_hdmr(f, space);

  CHECK(model.f0() == doctest::Approx(7.0));
  CHECK(model.coupled_pairs().empty());
  CHECK(model.total_evals() == f.eval_count());

  const ComponentTerm* t0 = model.find_term(ComponentKey::first_order(0));
  REQUIRE(t0 != nullptr);
  CHECK(t0->kind == TermKind::Linear);
  CHECK(t0->slope == doctest::Approx(3.0).epsilon(1e-9));

  const ComponentTerm* t1 = model.find_term(ComponentKey::first_order(1));
  REQUIRE(t1 != nullptr);
  CHECK(t1->kind == TermKind::Zero);

  const ComponentTerm* t2 = model.find_term(ComponentKey::first_order(2));
  REQUIRE(t2 != nullptr);
  CHECK(t2->kind == TermKind::Linear);
  CHECK(t2->slope == doctest::Approx(-2.0).epsilon(1e-9));

  RandomStream rng(1);
  for (int k = 0; k < 50; ++k) {
    Vector x = random_point(space, rng);
    double truth = 3.0 * x(0) - 2.0 * x(2) + 7.0;
    CHECK(model.predict(x) == doctest::Approx(truth).epsilon(1e-9));
  }
}

TEST_CASE("the anchor value and recorded axis samples are reproduced exactly") {
  DesignSpace space = cube(3, 0.0, 2.0);
  auto truth = [](const Vector& x) {
    return std::pow(x(0), 4) + x(0) + 2.0 * x(1) * x(1) + std::sin(x(2));
  };
  BudgetedFunction f(3, truth);
  HdmrModel model = build_hdmr(f, space);

  Vector center = model.center().coords();
  CHECK(model.predict(center) == doctest::Approx(truth(center)).epsilon(1e-12));
  CHECK(model.f0() == doctest::Approx(truth(center)).epsilon(1e-12));

  for (const auto& [key, term] : model.terms()) {
    if (key.is_second_order() || term.kind != TermKind::Surrogate) continue;
    for (double v : term.axis_values) {
      Vector x = axis_point(model.center(), key.i, v);
      const double want = truth(x);
      CHECK(std::abs(model.predict(x) - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("additive functions produce no second-order terms") {
  RandomStream rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 3 + trial % 2;
    DesignSpace space = cube(dim);
    std::vector<double> a(dim), b(dim);
    for (int k = 0; k < dim; ++k) {
      a[k] = rng.uniform(-3.0, 3.0);
      b[k] = rng.uniform(-3.0, 3.0);
    }
    BudgetedFunction f(dim, [&](const Vector& x) {
      double y = 1.0;
      for (int k = 0; k < dim; ++k) y += a[k] * x(k) + b[k] * x(k) * x(k);
      return y;
    });
    BuildConfig cfg;
    cfg.surrogate.backend =
        trial % 2 == 0 ? SurrogateBackend::Pce : SurrogateBackend::PcKriging;
    cfg.seed = static_cast<std::uint64_t>(trial);
    HdmrModel model = build_hdmr(f, space, cfg);
    CHECK(model.coupled_pairs().empty());

    const auto matrix = model.coupling_matrix();
    for (int i = 0; i < dim; ++i) {
      CHECK(matrix[i][i]);
      for (int j = 0; j < dim; ++j) {
        if (i != j) CHECK_FALSE(matrix[i][j]);
        CHECK(matrix[i][j] == matrix[j][i]);
      }
    }
  }
}

TEST_CASE("a single product interaction is found and reconstructed") {
  DesignSpace space = cube(3);
  auto truth = [](const Vector& x) { return x(0) * x(1) + 3.0 * x(2); };
  BudgetedFunction f(3, truth);
  HdmrModel model = build_hdmr(f, space);

  auto pairs = model.coupled_pairs();
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first == 0);
  CHECK(pairs[0].second == 1);

  // On the axes through the origin the product vanishes identically.
  CHECK(model.find_term(ComponentKey::first_order(0))->kind == TermKind::Zero);
  CHECK(model.find_term(ComponentKey::first_order(1))->kind == TermKind::Zero);
  CHECK(model.find_term(ComponentKey::first_order(2))->kind == TermKind::Linear);
  const ComponentTerm* pair = model.find_term(ComponentKey::second_order(0, 1));
  REQUIRE(pair != nullptr);
  CHECK(pair->kind == TermKind::Surrogate);

  RandomStream rng(2);
  for (int k = 0; k < 100; ++k) {
    Vector x = random_point(space, rng);
    const double want = truth(x);
    CHECK(std::abs(model.predict(x) - want) <= 1e-4 * std::max(1.0, std::abs(want)));
  }

  // The matrix marks exactly that one off-diagonal pair.
  const auto matrix = model.coupling_matrix();
  CHECK(matrix[0][1]);
  CHECK(matrix[1][0]);
  CHECK_FALSE(matrix[0][2]);
  CHECK_FALSE(matrix[1][2]);
}

TEST_CASE("prediction decomposes into the anchor plus term values") {
  DesignSpace space = cube(3);
  BudgetedFunction f(3, [](const Vector& x) {
    return x(0) * x(1) + x(2) * x(2) + 0.5 * x(0);
  });
  HdmrModel model = build_hdmr(f, space);

  RandomStream rng(3);
  for (int k = 0; k < 50; ++k) {
    Vector x = random_point(space, rng);
    double acc = model.f0();
    for (const auto& [key, term] : model.terms()) acc += model.term_value(key, x);
    CHECK(model.predict(x) == doctest::Approx(acc).epsilon(1e-9));
  }

  // Absent keys contribute zero and find_term returns null.
  CHECK(model.term_value(ComponentKey::second_order(1, 2), random_point(space, rng)) ==
        0.0);
  CHECK(model.find_term(ComponentKey::second_order(1, 2)) == nullptr);

  Matrix batch(4, 3);
  RandomStream rng2(4);
  for (int r = 0; r < 4; ++r) batch.row(r) = random_point(space, rng2).transpose();
  Vector preds = model.predict_batch(batch);
  for (int r = 0; r < 4; ++r) {
    CHECK(preds(r) == doctest::Approx(model.predict(batch.row(r).transpose())));
  }
}

TEST_CASE("every surrogate family can drive the decomposition") {
  DesignSpace space = cube(2);
  auto truth = [](const Vector& x) { return x(0) * x(0) + x(0) * x(1); };
  for (auto backend : {SurrogateBackend::PcKriging, SurrogateBackend::Kriging,
                       SurrogateBackend::Pce}) {
    BudgetedFunction f(2, truth);
    BuildConfig cfg;
    cfg.surrogate.backend = backend;
    HdmrModel model = build_hdmr(f, space, cfg);
    CHECK(model.backend() == backend);
    REQUIRE(model.coupled_pairs().size() == 1);

    RandomStream vs(99);
    MetricReport report = evaluate_model(
        [&model](const Vector& x) { return model.predict(x); }, truth, space, 500, vs);
    CHECK(report.r2 >= 0.99);
  }
}

TEST_CASE("an anchor away from the midpoint is honored") {
  DesignSpace space = cube(2, 0.0, 1.0);
  Vector c(2);
  c << 0.25, 0.75;
  CutCenter center(c, space);
  auto truth = [](const Vector& x) { return (x(0) - 0.25) * (x(0) - 0.25) + x(1); };
  BudgetedFunction f(2, truth);
  HdmrModel model = build_hdmr(f, space, center);
  CHECK(model.center().coords() == c);
  CHECK(model.f0() == doctest::Approx(truth(c)).epsilon(1e-12));
  CHECK(model.predict(c) == doctest::Approx(truth(c)).epsilon(1e-9));
}

TEST_CASE("running out of budget raises an error carrying the partial model") {
  DesignSpace space = cube(9, -2.0, 2.0);
  BudgetedFunction f(
      9,
      [](const Vector& x) {
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
          acc += 100.0 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(x(i) - 1.0, 2);
        }
        return acc;
      },
      10);
  try {
    build_hdmr(f, space);
    FAIL("expected the build to exhaust its budget");
  } catch (const HdmrBuildError& err) {
    REQUIRE(err.partial_model() != nullptr);
    CHECK(err.partial_model()->total_evals() <= 10);
    CHECK(f.eval_count() <= 10);
  }

  // A zero budget refuses even the anchor evaluation.
  BudgetedFunction none(2, [](const Vector& x) { return x.sum(); }, 0);
  try {
    build_hdmr(none, cube(2));
    FAIL("expected the build to exhaust its budget");
  } catch (const HdmrBuildError& err) {
    CHECK(err.partial_model() == nullptr);
  }
}

TEST_CASE("a decomposition document reloads bit-for-bit") {
  DesignSpace space = cube(3);
  auto truth = [](const Vector& x) { return x(0) * x(1) + 3.0 * x(2) + x(0); };
  BudgetedFunction f(3, truth);
  HdmrModel model = build_hdmr(f, space);

  const std::string path = "hdmr_roundtrip_tmp.json";
  save_hdmr(model, path);
  HdmrModel back = load_hdmr(path);
  std::remove(path.c_str());

  CHECK(back.f0() == model.f0());
  CHECK(back.backend() == model.backend());
  CHECK(back.dim() == model.dim());
  CHECK(back.probe_evals() == model.probe_evals());
  CHECK(back.total_evals() == model.total_evals());
  CHECK(back.coupling_matrix() == model.coupling_matrix());
  REQUIRE(back.terms().size() == model.terms().size());
  for (const auto& [key, term] : model.terms()) {
    const ComponentTerm* other = back.find_term(key);
    REQUIRE(other != nullptr);
    CHECK(other->kind == term.kind);
    CHECK(other->sample_count == term.sample_count);
    CHECK(other->axis_values == term.axis_values);
  }

  RandomStream rng(12);
  for (int k = 0; k < 100; ++k) {
    Vector x = random_point(space, rng);
    const double a = model.predict(x);
    const double b = back.predict(x);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}
