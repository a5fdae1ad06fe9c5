#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace ifgi::rng {

/// splitmix64 finalizer; bijective 64-bit mixing.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless hash of a (seed, shot, pixel, salt) counter tuple. Draws keyed
/// on distinct tuples are independent and evaluation-order free, which is
/// what makes shot streams partitionable across threads.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t shot,
                                     std::uint64_t pixel, std::uint64_t salt) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ shot);
  h = mix(h ^ pixel);
  h = mix(h ^ salt);
  return h;
}

/// Uniform double in (0, 1]; never returns 0 so it is log-safe.
inline double uniform_pos(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

/// Uniform double in [0, 1).
inline double uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Box-Muller pair of independent standard normals.
inline std::complex<double> standard_normal_pair(std::uint64_t bits_a,
                                                 std::uint64_t bits_b) {
  const double radius = std::sqrt(-2.0 * std::log(uniform_pos(bits_a)));
  const double angle = 2.0 * std::numbers::pi * uniform(bits_b);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Minimal bit generator over the hashed counter space, for feeding the
/// standard-library distributions (Poisson detector sampling). Each instance
/// is an independent stream identified by its construction key.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  explicit CounterEngine(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return mix(state_++); }

 private:
  std::uint64_t state_;
};

}  // namespace ifgi::rng
