#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded sampling utilities shared by the Monte Carlo paths. The generator is
// std::mt19937_64 (fully specified by the standard); uniforms take the top 53
// bits, Bernoulli draws compare a uniform against p, and Gaussians use the
// Box-Muller transform. Per-trial streams are derived from (base seed, trial
// index) with splitmix64 so results do not depend on execution order.

namespace secrecy::rng {

inline constexpr const char* kAlgorithmId = "mt19937_64/box-muller";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based derivation of independent stream seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  return splitmix64(splitmix64(base) ^ splitmix64(~counter));
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // One random bit.
  int bit() { return static_cast<int>(gen_() >> 63); }

  // Standard normal via Box-Muller; generates pairs and caches the spare.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace secrecy::rng
