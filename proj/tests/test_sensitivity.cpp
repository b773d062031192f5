#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pckhdmr/hdmr.hpp"
#include "pckhdmr/sensitivity.hpp"

using namespace pckhdmr;

namespace {

DesignSpace cube(int dim) {
  return DesignSpace(Vector::Constant(dim, -1.0), Vector::Constant(dim, 1.0));
}

std::vector<Distribution> uniform_dists(int dim) {
  std::vector<Distribution> out;
  for (int k = 0; k < dim; ++k) out.push_back(Distribution::uniform(-1.0, 1.0));
  return out;
}

}  // namespace

TEST_CASE("two equal additive inputs split the variance evenly") {
  BudgetedFunction f(2, [](const Vector& x) { return x(0) + x(1); });
  HdmrModel model = build_hdmr(f, cube(2));
  RandomStream rng(100);
  SensitivityReport report =
      analyze_sensitivity(model, uniform_dists(2), 50000, rng);

  REQUIRE(report.first_order.size() == 2);
  REQUIRE(report.pairwise.size() == 1);
  CHECK(report.mc_samples == 50000);
  CHECK(std::abs(report.first_order.at(0) - 0.5) < 0.02);
  CHECK(std::abs(report.first_order.at(1) - 0.5) < 0.02);
  CHECK(report.pairwise.at({0, 1}) == 0.0);
  // Var(x0 + x1) with independent uniform inputs on [-1,1] is 2/3.
  CHECK(report.total_variance == doctest::Approx(2.0 / 3.0).epsilon(0.05));
}

TEST_CASE("a pure interaction loads the pairwise index") {
  BudgetedFunction f(2, [](const Vector& x) { return x(0) * x(1); });
  HdmrModel model = build_hdmr(f, cube(2));
  REQUIRE(model.coupled_pairs().size() == 1);

  RandomStream rng(200);
  SensitivityReport report =
      analyze_sensitivity(model, uniform_dists(2), 50000, rng);
  CHECK(std::abs(report.pairwise.at({0, 1}) - 1.0) < 0.05);
  CHECK(report.first_order.at(0) < 0.02);
  CHECK(report.first_order.at(1) < 0.02);
}

TEST_CASE("a flat model has zero variance and all-zero indices") {
  BudgetedFunction f(3, [](const Vector&) { return 4.0; });
  HdmrModel model = build_hdmr(f, cube(3));
  RandomStream rng(300);
  SensitivityReport report =
      analyze_sensitivity(model, uniform_dists(3), 2000, rng);
  CHECK(report.total_variance == 0.0);
  for (const auto& [i, s] : report.first_order) CHECK(s == 0.0);
  for (const auto& [ij, s] : report.pairwise) CHECK(s == 0.0);
  REQUIRE(report.first_order.size() == 3);
  REQUIRE(report.pairwise.size() == 3);
}

TEST_CASE("the analysis is deterministic for a fixed stream seed") {
  BudgetedFunction f(2, [](const Vector& x) { return x(0) + 0.25 * x(0) * x(1); });
  HdmrModel model = build_hdmr(f, cube(2));

  RandomStream r1(42), r2(42);
  SensitivityReport a = analyze_sensitivity(model, uniform_dists(2), 5000, r1);
  SensitivityReport b = analyze_sensitivity(model, uniform_dists(2), 5000, r2);
  CHECK(a.total_variance == b.total_variance);
  CHECK(a.first_order == b.first_order);
  CHECK(a.pairwise == b.pairwise);

  RandomStream r3(42), r4(42);
  CHECK(first_order_indices(model, uniform_dists(2), 5000, r3) == a.first_order);
  CHECK(pairwise_indices(model, uniform_dists(2), 5000, r4) == a.pairwise);
}

TEST_CASE("undersized draws and mismatched distributions are rejected") {
  BudgetedFunction f(2, [](const Vector& x) { return x(0); });
  HdmrModel model = build_hdmr(f, cube(2));
  RandomStream rng(7);
  CHECK_THROWS_AS(analyze_sensitivity(model, uniform_dists(2), 999, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(analyze_sensitivity(model, uniform_dists(3), 5000, rng),
                  std::invalid_argument);
}
