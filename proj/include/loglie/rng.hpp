#ifndef LOGLIE_RNG_HPP
#define LOGLIE_RNG_HPP

#include <cmath>
#include <cstdint>

#include "loglie/symlin.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

// Counter-based randomness so that any implementation of the documented
// recipe (SplitMix64 + the sampling orders below) reproduces trial inputs
// bit-for-bit. See README for the wire-level description.

inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform in [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

 private:
  uint64_t state_;
};

/// Derives an independent stream seed; fold repeatedly to key a stream by
/// (suite, dimension, trial, ...).
inline uint64_t fold_seed(uint64_t seed, uint64_t v) {
  return mix64(seed + 0x9E3779B97F4A7C15ULL + v);
}

/// Entries scale*U[-1,1), filled for i <= j with i ascending then j ascending.
inline SymMat random_symmetric(SplitMix64& rng, int n, double scale) {
  SymMat s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, scale * rng.next_symmetric());
  return s;
}

/// Same order as random_symmetric but skipping the diagonal.
inline SymMat random_hollow(SplitMix64& rng, int n, double scale) {
  SymMat s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.set(i, j, scale * rng.next_symmetric());
  return s;
}

inline SymMat random_diagonal(SplitMix64& rng, int n, double scale) {
  SymMat s(n);
  for (int i = 0; i < n; ++i) s.set(i, i, scale * rng.next_symmetric());
  return s;
}

inline SymMat random_positive_diagonal(SplitMix64& rng, int n, double scale) {
  SymMat s(n);
  for (int i = 0; i < n; ++i) s.set(i, i, std::exp(scale * rng.next_symmetric()));
  return s;
}

/// exp of a random symmetric matrix; `scale` defaults keep the spectrum tame
/// enough for the tight round-trip tolerances at n up to 12.
inline SymMat random_spd(SplitMix64& rng, int n, double scale) {
  return mat_exp(random_symmetric(rng, n, scale));
}

/// Default entry scale used by the randomized suites: 1/sqrt(n).
inline double suite_scale(int n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

}  // namespace loglie

#endif
