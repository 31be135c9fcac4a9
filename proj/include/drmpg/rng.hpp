#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace drmpg::rng {

// splitmix64 finalizer; used to turn structured (seed, stream, index)
// tuples into well-spread engine seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t z = base;
  z += 0x9E3779B97F4A7C15ull * (stream + 1);
  z = mix(z);
  z += 0xD1B54A32D192ED03ull * (a + 1);
  z = mix(z);
  z += 0x8CB92BA72F3D8DD7ull * (b + 1);
  return mix(z);
}

// mt19937_64 is bit-exact across implementations; the helpers below avoid
// std::*_distribution, whose output is not pinned by the standard.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Index into a probability vector by inverse-CDF walk. Probabilities are
  // assumed non-negative and summing to ~1; the final index absorbs rounding.
  int categorical(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("categorical: empty support");
    const double u = uniform01();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size() - 1);
  }

  // Uniform in {0, ..., n-1}. Modulo bias is < n / 2^64, irrelevant here.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below: n must be positive");
    return gen_() % n;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace drmpg::rng
