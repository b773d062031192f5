#pragma once

#include <atomic>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "pckhdmr/design_space.hpp"

namespace pckhdmr {

/// Thrown when an evaluation would exceed the configured budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(long long budget)
      : std::runtime_error("evaluation budget of " + std::to_string(budget) +
                           " calls exhausted"),
        budget_(budget) {}
  long long budget() const { return budget_; }

 private:
  long long budget_;
};

/// Wraps a black-box objective with an arity check, a thread-safe call
/// counter, and an optional hard cap on the number of evaluations.
class BudgetedFunction {
 public:
  using Evaluator = std::function<double(const Vector&)>;

  BudgetedFunction(int arity, Evaluator f,
                   std::optional<long long> budget = std::nullopt)
      : arity_(arity), f_(std::move(f)), budget_(budget), count_(0) {
    if (arity_ <= 0) throw std::invalid_argument("BudgetedFunction: arity must be positive");
    if (!f_) throw std::invalid_argument("BudgetedFunction: evaluator must be callable");
    if (budget_ && *budget_ < 0) {
      throw std::invalid_argument("BudgetedFunction: budget must be non-negative");
    }
  }

  int arity() const { return arity_; }

  double operator()(const Vector& x) {
    if (x.size() != arity_) {
      throw std::invalid_argument("BudgetedFunction: expected " + std::to_string(arity_) +
                                  " coordinates, got " + std::to_string(x.size()));
    }
    // Reserve a slot before calling so concurrent callers cannot overshoot
    // the cap; a refused call leaves the counter unchanged.
    long long slot = count_.fetch_add(1, std::memory_order_relaxed);
    if (budget_ && slot >= *budget_) {
      count_.fetch_sub(1, std::memory_order_relaxed);
      throw BudgetExhausted(*budget_);
    }
    return f_(x);
  }

  long long eval_count() const { return count_.load(std::memory_order_relaxed); }
  std::optional<long long> budget() const { return budget_; }
  long long remaining() const {
    if (!budget_) return std::numeric_limits<long long>::max();
    long long r = *budget_ - eval_count();
    return r > 0 ? r : 0;
  }

 private:
  int arity_;
  Evaluator f_;
  std::optional<long long> budget_;
  std::atomic<long long> count_;
};

}  // namespace pckhdmr
