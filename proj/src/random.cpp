#include "dring/random.hpp"

#include <limits>

#include "dring/error.hpp"

namespace dring {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over a mix of the two words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(ErrorCode::BadParams, "empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Rational Rng::rational(std::int64_t height) {
  const std::int64_t num = uniform(-height, height);
  const std::int64_t den = uniform(1, height);
  Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

FieldElement Rng::element(Field field, std::int64_t height) {
  switch (field.kind()) {
    case FieldKind::rationals: return field.from_rational(rational(height));
    case FieldKind::prime_field: {
      const std::uint64_t p = field.descriptor().prime();
      const std::uint64_t r = static_cast<std::uint64_t>(uniform(0, static_cast<std::int64_t>(p - 1)));
      return field.from_rational(Rational(static_cast<unsigned long>(r)));
    }
    case FieldKind::number_field: {
      std::vector<Rational> coeffs;
      for (std::size_t i = 0; i < field.descriptor().degree(); ++i) coeffs.push_back(rational(height));
      return field.from_coefficients(std::move(coeffs));
    }
  }
  fail(ErrorCode::BadField, "unreachable");
}

FieldElement Rng::nonzero_rational_element(Field field, std::int64_t height) {
  for (;;) {
    FieldElement x = element(field, height);
    if (!x.is_zero()) return x;
  }
}

Matrix Rng::matrix(Field field, std::size_t rows, std::size_t cols, std::int64_t height) {
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = element(field, height);
  return m;
}

}  // namespace dring
