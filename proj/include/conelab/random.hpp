#pragma once

#include <cstdint>

#include "conelab/rational.hpp"

namespace conelab {

/// Small deterministic generator (SplitMix64). Unlike the standard
/// distributions, every draw here is specified bit-for-bit, so reports are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform integer in [0, bound) with rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  bool coin() { return (next() >> 63) != 0; }

  /// Rational k/den with k uniform in [lo*den, hi*den].
  Rational rational(std::int64_t lo, std::int64_t hi, std::int64_t den);

 private:
  std::uint64_t state_;
};

}  // namespace conelab
