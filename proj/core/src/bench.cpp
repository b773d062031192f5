#include "pckhdmr/bench.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pckhdmr {

namespace {

void check_arity(const Vector& x, int p, const char* name) {
  if (x.size() != p) {
    throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(p) +
                                " coordinates, got " + std::to_string(x.size()));
  }
}

DesignSpace uniform_box(double lo, double hi, int p) {
  return DesignSpace(Vector::Constant(p, lo), Vector::Constant(p, hi));
}

// kN -> N and N*m -> N*mm; with lengths in mm all stresses land in MPa.
constexpr double kKiloNewtonToNewton = 1e3;
constexpr double kNewtonMeterToNewtonMilli = 1e3;

}  // namespace

double rosenbrock9(const Vector& x) {
  check_arity(x, 9, "rosenbrock9");
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double a = x(i + 1) - x(i) * x(i);
    const double b = x(i) - 1.0;
    acc += 100.0 * a * a + b * b;
  }
  return acc;
}

BenchmarkFunction rosenbrock9_function() {
  BenchmarkFunction f;
  f.name = "rosenbrock9";
  f.arity = 9;
  f.space = uniform_box(-2.0, 2.0, 9);
  f.evaluator = [](const Vector& x) { return rosenbrock9(x); };
  f.known_minimum = 0.0;
  return f;
}

BenchmarkFunction table3_function(int no) {
  BenchmarkFunction f;
  switch (no) {
    case 1: {
      f.name = "table3/1";
      f.arity = 2;
      f.space = uniform_box(-3.0, 3.0, 2);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 2, "table3/1");
        const double d = x(0) - x(1);
        return std::sin(x(0) + x(1)) + d * d - 1.5 * x(0) + 2.5 * x(1) + 1.0;
      };
      break;
    }
    case 2: {
      f.name = "table3/2";
      f.arity = 2;
      Vector lo(2), hi(2);
      lo << -5.0, 0.0;
      hi << 10.0, 15.0;
      f.space = DesignSpace(lo, hi);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 2, "table3/2");
        const double u = x(0) / std::numbers::pi;
        const double inner = x(1) - 1.275 * u * u - 5.0 * u - 6.0;
        return inner * inner +
               10.0 * (1.0 - 0.125 / std::numbers::pi) * std::cos(x(0));
      };
      break;
    }
    case 3: {
      f.name = "table3/3";
      f.arity = 8;
      f.space = uniform_box(-3.0, 3.0, 8);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 8, "table3/3");
        double acc = 0.0;
        for (int i = 0; i < 7; ++i) {
          const double a = x(i + 1) * x(i + 1) - x(i);
          const double b = x(i) - 1.0;
          acc += a * a + b * b;
        }
        return acc;
      };
      break;
    }
    case 4: {
      f.name = "table3/4";
      f.arity = 10;
      f.space = uniform_box(-10.0, 11.0, 10);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 10, "table3/4");
        auto sq = [](double v) { return v * v; };
        return sq(x(0)) + sq(x(1)) + x(0) * x(1) - 14.0 * x(0) - 16.0 * x(1) +
               sq(x(2) - 10.0) + 4.0 * sq(x(3) - 5.0) + sq(x(4) - 3.0) +
               2.0 * sq(x(5) - 1.0) + 5.0 * sq(x(6)) + 7.0 * sq(x(7) - 11.0) +
               2.0 * sq(x(8) - 10.0) + sq(x(9) - 7.0) + 45.0;
      };
      break;
    }
    case 5: {
      f.name = "table3/5";
      f.arity = 10;
      f.space = uniform_box(2.1, 9.9, 10);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 10, "table3/5");
        static constexpr double c[10] = {-6.089,  -17.164, -34.054, -5.914, -24.721,
                                         -14.986, -24.100, -10.708, -26.662, -22.179};
        const double total = x.sum();
        double acc = 0.0;
        for (int i = 0; i < 10; ++i) acc += x(i) * (c[i] + std::log(x(i) / total));
        return acc;
      };
      break;
    }
    case 6: {
      f.name = "table3/6";
      f.arity = 16;
      f.space = uniform_box(-5.0, 5.0, 16);
      f.evaluator = [](const Vector& x) {
        check_arity(x, 16, "table3/6");
        double acc = (x(0) - 1.0) * (x(0) - 1.0);
        for (int i = 2; i <= 16; ++i) {
          const double a = 2.0 * x(i - 1) * x(i - 1) - x(i - 2);
          acc += static_cast<double>(i) * a * a;
        }
        return acc;
      };
      break;
    }
    default:
      throw std::out_of_range("table3_function: no must be in 1..6, got " +
                              std::to_string(no));
  }
  return f;
}

BenchmarkFunction cost_function(int p) {
  if (p < 2) throw std::invalid_argument("cost_function: p must be >= 2");
  BenchmarkFunction f;
  f.name = "cost/" + std::to_string(p);
  f.arity = p;
  f.space = uniform_box(0.0, 1.0, p);
  f.evaluator = [p, name = f.name](const Vector& x) {
    check_arity(x, p, name.c_str());
    double acc = 0.0;
    for (int i = 0; i < p - 1; ++i) {
      const double a = x(i) * x(i);
      const double b = x(i + 1) * x(i + 1);
      // std::pow(0, e) with e > 0 is exactly 0, matching the convention
      // 0^e = 0 that makes the sum total on the closed box.
      acc += std::pow(a, b + 1.0) + std::pow(b, a + 1.0);
    }
    return acc;
  };
  f.known_minimum = 0.0;
  return f;
}

long long sample_count_formula(int p, int s) {
  if (p < 1) throw std::invalid_argument("sample_count_formula: p must be >= 1");
  if (s < 2) throw std::invalid_argument("sample_count_formula: s must be >= 2");
  const long long pd = p;
  const long long sm1 = s - 1;
  return 1 + pd * sm1 + pd * (pd - 1) / 2 * sm1 * sm1;
}

double cantilever_G(const CantileverInputs& in) {
  if (!(in.d > 2.0 * in.t)) {
    throw std::invalid_argument("cantilever_G: requires d > 2t (positive annulus)");
  }
  const double pi = std::numbers::pi;
  const double inner = in.d - 2.0 * in.t;
  const double A = (pi / 4.0) * (in.d * in.d - inner * inner);
  const double I =
      (pi / 64.0) * (in.d * in.d * in.d * in.d - inner * inner * inner * inner);
  const double J = 2.0 * I;

  const double axial_N = (in.P + in.F1 * std::sin(in.theta1) +
                          in.F2 * std::sin(in.theta2)) * kKiloNewtonToNewton;
  const double M_Nmm = (in.F1 * kKiloNewtonToNewton) * in.L1 * std::cos(in.theta1) +
                       (in.F2 * kKiloNewtonToNewton) * in.L2 * std::cos(in.theta2);
  const double T_Nmm = in.T * kNewtonMeterToNewtonMilli;

  const double sigma_x = axial_N / A + M_Nmm * in.d / (2.0 * I);
  const double tau_zx = T_Nmm * in.d / (2.0 * J);
  return in.Sy - std::sqrt(sigma_x * sigma_x + 3.0 * tau_zx * tau_zx);
}

double cantilever_G(const Vector& x) {
  check_arity(x, 11, "cantilever");
  CantileverInputs in{x(0), x(1), x(2), x(3), x(4), x(5),
                      x(6), x(7), x(8), x(9), x(10)};
  return cantilever_G(in);
}

std::vector<Distribution> cantilever_distributions() {
  const double pi = std::numbers::pi;
  return {Distribution::normal(5.0, 0.1),          // t
          Distribution::normal(42.0, 0.5),         // d
          Distribution::uniform(119.75, 120.25),   // L1
          Distribution::uniform(59.75, 60.25),     // L2
          Distribution::normal(3.0, 0.3),          // F1
          Distribution::normal(3.0, 0.3),          // F2
          Distribution::gumbel(12.0, 1.2),         // P
          Distribution::normal(90.0, 9.0),         // T
          Distribution::uniform(-pi / 3.0, pi / 3.0),        // theta1
          Distribution::uniform(-4.0 * pi / 5.0, 2.0 * pi / 5.0),  // theta2
          Distribution::normal(220.0, 22.0)};      // Sy
}

DesignSpace cantilever_box() {
  const std::vector<Distribution> dists = cantilever_distributions();
  const int p = static_cast<int>(dists.size());
  Vector lo(p), hi(p);
  for (int i = 0; i < p; ++i) {
    const Distribution& d = dists[static_cast<std::size_t>(i)];
    if (d.kind() == DistKind::Uniform) {
      lo(i) = d.lower();
      hi(i) = d.upper();
    } else {
      lo(i) = d.mean() - 3.0 * d.stddev();
      hi(i) = d.mean() + 3.0 * d.stddev();
    }
  }
  return DesignSpace(lo, hi);
}

BenchmarkFunction cantilever_function() {
  BenchmarkFunction f;
  f.name = "cantilever";
  f.arity = 11;
  f.space = cantilever_box();
  f.evaluator = [](const Vector& x) { return cantilever_G(x); };
  return f;
}

BenchmarkFunction find_function(const std::string& name) {
  if (name == "rosenbrock9") return rosenbrock9_function();
  if (name == "cantilever") return cantilever_function();
  const auto parse_suffix = [&](const std::string& prefix) -> int {
    const std::string digits = name.substr(prefix.size());
    try {
      std::size_t used = 0;
      const int value = std::stoi(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
      return value;
    } catch (const std::exception&) {
      throw std::invalid_argument("find_function: malformed name '" + name + "'");
    }
  };
  if (name.rfind("table3/", 0) == 0) return table3_function(parse_suffix("table3/"));
  if (name.rfind("cost/", 0) == 0) return cost_function(parse_suffix("cost/"));
  throw std::invalid_argument("find_function: unknown name '" + name + "'");
}

std::vector<std::string> registry_names() {
  return {"rosenbrock9", "table3/1", "table3/2", "table3/3", "table3/4",
          "table3/5",    "table3/6", "cost/<p>", "cantilever"};
}

}  // namespace pckhdmr
