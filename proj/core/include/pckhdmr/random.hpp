#pragma once

#include <cstdint>
#include <random>

#include "pckhdmr/design_space.hpp"

namespace pckhdmr {

/// Deterministic random source.  All variate transforms are fixed here (not
/// delegated to std:: distribution objects) so a seed reproduces the exact
/// same sequence on every platform and standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Raw 64-bit draw from the underlying engine.
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0,1) with 53 significant bits.
  double uniform01();

  /// Uniform on [a,b).
  double uniform(double a, double b);

  /// Standard normal via Box-Muller; always consumes two uniforms per call
  /// (the second branch is recomputed, never cached).
  double normal();

  /// Independent stream derived from this stream's seed and a tag.  Does not
  /// advance this stream.
  RandomStream substream(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Bit-mixing finalizer used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

enum class DistKind { Normal, Uniform, Gumbel };

/// Scalar sampling distribution.  Gumbel is parameterized by mean and
/// standard deviation and converted to location/scale by moment matching.
class Distribution {
 public:
  static Distribution normal(double mean, double stddev);
  static Distribution uniform(double lower, double upper);
  static Distribution gumbel(double mean, double stddev);

  DistKind kind() const { return kind_; }
  double mean() const { return mean_; }
  double stddev() const { return stddev_; }

  /// Gumbel location parameter (only meaningful for Gumbel).
  double location() const { return a_; }
  /// Gumbel scale parameter (only meaningful for Gumbel).
  double scale() const { return b_; }
  /// Uniform bounds (only meaningful for Uniform).
  double lower() const { return a_; }
  double upper() const { return b_; }

  double sample(RandomStream& stream) const;
  Vector sample(RandomStream& stream, int n) const;

 private:
  Distribution(DistKind kind, double mean, double stddev, double a, double b)
      : kind_(kind), mean_(mean), stddev_(stddev), a_(a), b_(b) {}

  DistKind kind_;
  double mean_;
  double stddev_;
  double a_;  // Normal: mean, Uniform: lower, Gumbel: location
  double b_;  // Normal: stddev, Uniform: upper, Gumbel: scale
};

}  // namespace pckhdmr
