#pragma once

#include <cstdint>
#include <vector>

#include "dring/matrix.hpp"
#include "dring/random.hpp"

namespace dring {

enum class TKind { unipotent, nilpotent };

/// Ones on the first superdiagonal, plus ones on the diagonal for the
/// unipotent kind. Minimal polynomial (x-1)^m resp. x^m.
Matrix special_matrix_T(std::size_t m, TKind kind);

/// P invertible with P^-1 C P having zero diagonal. Needs trace(C) = 0 and
/// characteristic 0 or greater than the size (BadTrace, CharTooSmall).
Matrix zero_diagonal_similarity(const Matrix& c);

struct CommutatorPair {
  Matrix a;
  Matrix b;
};

/// C = AB - BA with trace(A) = trace(B) = 0. Same preconditions as
/// zero_diagonal_similarity.
CommutatorPair additive_commutator_decomp(const Matrix& c);

inline constexpr std::size_t kEigenvalueRetries = 32;

/// C = A B A^-1 B^-1 with A, B non-scalar and det A = det B = 1.
/// Needs det C = 1, C non-scalar, and an infinite base field.
/// Eigenvalue tuples after the first are drawn from a stream derived from
/// `seed`; throws DegenerateChoiceExhausted after kEigenvalueRetries tuples.
CommutatorPair multiplicative_commutator_decomp(const Matrix& c, std::uint64_t seed = 0);

/// Factors whose depth-n u-word replays to the target. Only `certify` builds
/// one, and it sets `verified()` from an exact replay.
class MultDecomposition {
 public:
  static MultDecomposition certify(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed);

  const Matrix& target() const noexcept { return target_; }
  std::size_t depth() const noexcept { return depth_; }
  const std::vector<Matrix>& factors() const noexcept { return factors_; }
  bool verified() const noexcept { return verified_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::vector<FieldElement> factor_determinants() const;

 private:
  MultDecomposition(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed, bool verified)
      : target_(std::move(target)), depth_(depth), factors_(std::move(factors)), seed_(seed), verified_(verified) {}

  Matrix target_;
  std::size_t depth_;
  std::vector<Matrix> factors_;
  std::uint64_t seed_;
  bool verified_;
};

/// Factors whose depth-n v-word replays to the target, all of trace zero.
class AddDecomposition {
 public:
  static AddDecomposition certify(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed);

  const Matrix& target() const noexcept { return target_; }
  std::size_t depth() const noexcept { return depth_; }
  const std::vector<Matrix>& factors() const noexcept { return factors_; }
  bool verified() const noexcept { return verified_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::vector<FieldElement> factor_traces() const;

 private:
  AddDecomposition(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed, bool verified)
      : target_(std::move(target)), depth_(depth), factors_(std::move(factors)), seed_(seed), verified_(verified) {}

  Matrix target_;
  std::size_t depth_;
  std::vector<Matrix> factors_;
  std::uint64_t seed_;
  bool verified_;
};

/// Throws VerificationFailed if the replay does not reproduce C.
MultDecomposition iterated_mult_decomp(const Matrix& c, std::size_t n, std::uint64_t seed = 0);
AddDecomposition iterated_add_decomp(const Matrix& c, std::size_t n, std::uint64_t seed = 0);

/// Non-scalar determinant-one sample: a product of elementary matrices
/// I + t E_ij with bounded-height t.
Matrix random_sl_nonscalar(Rng& rng, Field field, std::size_t m, std::int64_t height = 5);
/// Random matrix shifted by -(trace/m) I.
Matrix random_trace_zero(Rng& rng, Field field, std::size_t m, std::int64_t height = 10);

}  // namespace dring
