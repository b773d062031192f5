#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pckhdmr/design_space.hpp"
#include "pckhdmr/random.hpp"

namespace pckhdmr {

/// Named test function together with its design space.
struct BenchmarkFunction {
  std::string name;
  int arity = 0;
  DesignSpace space{Vector::Constant(1, 0.0), Vector::Constant(1, 1.0)};
  RealFunction evaluator;
  std::optional<double> known_minimum;
};

/// Banana-valley sum over 9 inputs on [-2,2]^9:
/// sum_{i=1}^{8} [100 (x_{i+1} - x_i^2)^2 + (x_i - 1)^2].
double rosenbrock9(const Vector& x);
BenchmarkFunction rosenbrock9_function();

/// The six high-dimensional nonlinear test functions, exactly as printed in
/// their source table (No.3 squares the leading coordinate inside the
/// residual and carries no factor 100; No.2 has no trailing constant).
BenchmarkFunction table3_function(int no);

/// Coupled power sum on [0,1]^p used for the cost study:
/// sum_{i=1}^{p-1} [(x_i^2)^(x_{i+1}^2+1) + (x_{i+1}^2)^(x_i^2+1)].
BenchmarkFunction cost_function(int p);

/// Training-point count of a full second-order expansion with s samples per
/// sub-item: 1 + p(s-1) + p(p-1)/2 * (s-1)^2.
long long sample_count_formula(int p, int s);

/// Cantilever tube inputs.  Units: lengths mm, forces kN, torque N*m,
/// angles rad, strength MPa.
struct CantileverInputs {
  double t;       // wall thickness [mm]
  double d;       // outer diameter [mm]
  double L1;      // arm of force F1 [mm]
  double L2;      // arm of force F2 [mm]
  double F1;      // inclined force 1 [kN]
  double F2;      // inclined force 2 [kN]
  double P;       // axial force [kN]
  double T;       // torque [N*m]
  double theta1;  // inclination of F1 [rad]
  double theta2;  // inclination of F2 [rad]
  double Sy;      // yield strength [MPa]
};

/// Limit state G = Sy - sqrt(sigma_x^2 + 3 tau_zx^2) in MPa, with
///   sigma_x = (P + F1 sin t1 + F2 sin t2)/A + M d/(2I),
///   tau_zx  = T d / (2J),
///   M = F1 L1 cos t1 + F2 L2 cos t2,  A = (pi/4)[d^2-(d-2t)^2],
///   I = (pi/64)[d^4-(d-2t)^4],        J = 2I.
/// Unit conversions are centralized: kN -> N (*1e3) and N*m -> N*mm (*1e3),
/// so stresses come out in N/mm^2 = MPa directly.
/// Throws when d <= 2t (the tube wall would self-intersect).
double cantilever_G(const CantileverInputs& in);
/// Same, from a length-11 vector ordered (t, d, L1, L2, F1, F2, P, T,
/// theta1, theta2, Sy).
double cantilever_G(const Vector& x);

/// Input distributions of the 11 cantilever variables, in vector order.
std::vector<Distribution> cantilever_distributions();

/// Modeling box for the cantilever: mean +- 3 std for unbounded inputs
/// (Normal, Gumbel), exact bounds for Uniform ones.
DesignSpace cantilever_box();

BenchmarkFunction cantilever_function();

/// Look up a registry entry by name: "rosenbrock9", "table3/<1..6>",
/// "cost/<p>", "cantilever".  Throws on unknown names.
BenchmarkFunction find_function(const std::string& name);

/// Canonical registry names ("cost/<p>" stands for the parameterized family).
std::vector<std::string> registry_names();

}  // namespace pckhdmr
