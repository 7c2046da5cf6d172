#pragma once

// Deterministic random number generation. The engine is std::mt19937_64 with
// fixed transformations (inverse-CDF normals, Marsaglia-Tsang gammas) so that
// a seed reproduces the same stream on every platform.

#include <cstdint>
#include <random>

#include "bigpast/special_fn.hpp"

namespace bigpast {

// Derives an independent stream seed from a master seed and a counter
// (splitmix64 finalizer). Used to give replications decoupled streams.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + counter * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_quantile(uniform()); }

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bigpast
