#pragma once

#include <cmath>
#include <cstdint>

namespace germlab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0,1) from the top 53 bits.
inline double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// Additive recurrence (Kronecker) sequence in d <= 3 dimensions with a
/// seed-derived starting offset. Coordinates use the generalized golden
/// ratio for the given dimension, so low-order projections stay
/// well-distributed.
class Kronecker {
 public:
  Kronecker(int dims, std::uint64_t seed) : dims_(dims) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dims + 1));
    double a = 1.0;
    std::uint64_t s = seed;
    for (int d = 0; d < dims_ && d < 3; ++d) {
      a /= phi;
      alpha_[d] = a;
      s = splitmix64(s);
      offset_[d] = unit_from_bits(s);
    }
  }

  double at(std::uint64_t index, int coord) const {
    const double v = offset_[coord] + static_cast<double>(index) * alpha_[coord];
    return v - std::floor(v);
  }

 private:
  int dims_;
  double alpha_[3] = {0, 0, 0};
  double offset_[3] = {0, 0, 0};
};

/// Minimal deterministic generator used for randomized constructions;
/// avoids std distributions so that outputs match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64(state_);
  }
  double uniform() { return unit_from_bits(next()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace germlab
