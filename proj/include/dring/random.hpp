#pragma once

#include <cstdint>
#include <random>

#include "dring/field.hpp"
#include "dring/matrix.hpp"

namespace dring {

/// Derives an independent stream seed from (seed, index). Used for per-trial
/// streams so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with platform-independent bounded draws. The standard
/// distributions are implementation-defined, so sampling goes through
/// `uniform` instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  std::uint64_t next() { return engine_(); }

  /// Rational with numerator in [-height, height] and denominator in [1, height].
  Rational rational(std::int64_t height);
  /// A field element of bounded height (uniform residue for prime fields).
  FieldElement element(Field field, std::int64_t height);
  FieldElement nonzero_rational_element(Field field, std::int64_t height);
  Matrix matrix(Field field, std::size_t rows, std::size_t cols, std::int64_t height);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dring
