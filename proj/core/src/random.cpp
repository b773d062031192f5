#include "pckhdmr/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pckhdmr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("RandomStream::uniform: requires a < b");
  return a + (b - a) * uniform01();
}

double RandomStream::normal() {
  // Box-Muller, cosine branch only; u1 is kept away from 0 so log is finite.
  double u1 = uniform01();
  double u2 = uniform01();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream RandomStream::substream(std::uint64_t tag) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(tag + 0x632be59bd9b4e019ULL)));
}

Distribution Distribution::normal(double mean, double stddev) {
  if (!(stddev > 0)) throw std::invalid_argument("Distribution::normal: stddev must be positive");
  return Distribution(DistKind::Normal, mean, stddev, mean, stddev);
}

Distribution Distribution::uniform(double lower, double upper) {
  if (!(lower < upper)) {
    throw std::invalid_argument("Distribution::uniform: requires lower < upper");
  }
  double mean = 0.5 * (lower + upper);
  double stddev = (upper - lower) / std::sqrt(12.0);
  return Distribution(DistKind::Uniform, mean, stddev, lower, upper);
}

Distribution Distribution::gumbel(double mean, double stddev) {
  if (!(stddev > 0)) throw std::invalid_argument("Distribution::gumbel: stddev must be positive");
  // Moment matching: stddev = scale*pi/sqrt(6), mean = location + gamma*scale.
  const double scale = stddev * std::sqrt(6.0) / std::numbers::pi;
  const double location = mean - std::numbers::egamma * scale;
  return Distribution(DistKind::Gumbel, mean, stddev, location, scale);
}

double Distribution::sample(RandomStream& stream) const {
  switch (kind_) {
    case DistKind::Normal:
      return a_ + b_ * stream.normal();
    case DistKind::Uniform:
      return stream.uniform(a_, b_);
    case DistKind::Gumbel: {
      // Inverse CDF; u is kept strictly inside (0,1) so both logs are finite.
      double u = stream.uniform01();
      if (u <= 0.0) u = 0x1.0p-53;
      return a_ - b_ * std::log(-std::log(u));
    }
  }
  throw std::logic_error("Distribution::sample: unknown kind");
}

Vector Distribution::sample(RandomStream& stream, int n) const {
  if (n < 0) throw std::invalid_argument("Distribution::sample: n must be non-negative");
  Vector v(n);
  for (int k = 0; k < n; ++k) v(k) = sample(stream);
  return v;
}

}  // namespace pckhdmr
