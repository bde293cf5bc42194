#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace liftmech {

/**
 * Deterministic random source. The engine (mt19937_64) is fully specified by
 * the standard and the uniform mapping below is explicit, so a given seed
 * produces the same stream everywhere; std::*_distribution is avoided because
 * its output is implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /** Uniform double in [0, 1) with 53 random bits. */
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /** Standard exponential via inversion. */
  double exponential() { return -std::log(1.0 - uniform()); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/** splitmix64 mix; used to derive independent per-instance seeds. */
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/** Flat Dirichlet sample: normalized i.i.d. exponentials. */
inline std::vector<double> sample_dirichlet_flat(int n, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& v : x) {
    v = rng.exponential();
    sum += v;
  }
  for (auto& v : x) v /= sum;
  return x;
}

}  // namespace liftmech
