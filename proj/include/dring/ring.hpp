#pragma once

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dring/algebra.hpp"
#include "dring/matrix.hpp"
#include "dring/matrix_io.hpp"
#include "dring/random.hpp"

namespace dring {

/// What the word evaluators, the expression evaluator and the identity tester
/// need from a ring of evaluation.
template <class R>
concept RingContextLike = requires(const R& ring, const typename R::Element& x, Rng& rng, const Rational& q) {
  { ring.one() } -> std::same_as<typename R::Element>;
  { ring.zero() } -> std::same_as<typename R::Element>;
  { ring.scalar(q) } -> std::same_as<typename R::Element>;
  { ring.add(x, x) } -> std::same_as<typename R::Element>;
  { ring.sub(x, x) } -> std::same_as<typename R::Element>;
  { ring.mul(x, x) } -> std::same_as<typename R::Element>;
  { ring.neg(x) } -> std::same_as<typename R::Element>;
  { ring.try_inverse(x) } -> std::same_as<std::optional<typename R::Element>>;
  { ring.is_zero(x) } -> std::same_as<bool>;
  { ring.belongs(x) } -> std::same_as<bool>;
  { ring.sample(rng, std::int64_t{}) } -> std::same_as<typename R::Element>;
  { ring.min_poly(x) } -> std::same_as<Polynomial>;
  { ring.to_json(x) } -> std::same_as<json>;
  { ring.describe() } -> std::same_as<std::string>;
};

/// Square matrices of one size over one field.
class MatrixRing {
 public:
  using Element = Matrix;

  MatrixRing(Field field, std::size_t size);

  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return size_; }

  Matrix one() const { return Matrix::identity(field_, size_); }
  Matrix zero() const { return Matrix(field_, size_, size_); }
  Matrix scalar(const Rational& q) const { return Matrix::scalar(field_.from_rational(q), size_); }
  Matrix add(const Matrix& a, const Matrix& b) const { return a + b; }
  Matrix sub(const Matrix& a, const Matrix& b) const { return a - b; }
  Matrix mul(const Matrix& a, const Matrix& b) const { return a * b; }
  Matrix neg(const Matrix& a) const { return -a; }
  std::optional<Matrix> try_inverse(const Matrix& a) const;
  bool is_zero(const Matrix& a) const { return a.is_zero(); }
  bool belongs(const Matrix& a) const { return a.field() == field_ && a.rows() == size_ && a.cols() == size_; }
  /// Entries with numerator in [-height, height], denominator in [1, height].
  Matrix sample(Rng& rng, std::int64_t height) const { return rng.matrix(field_, size_, size_, height); }
  Polynomial min_poly(const Matrix& a) const { return dring::min_poly(a); }
  json to_json(const Matrix& a) const { return matrix_to_json(a); }
  Matrix from_json(const json& j) const;
  /// "matrix:<m>" over Q, "matrix:<m>@<field key>" otherwise.
  std::string describe() const;

 private:
  Field field_;
  std::size_t size_;
};

/// Elements of a structure-constant algebra.
class AlgebraRing {
 public:
  using Element = AlgebraElement;

  explicit AlgebraRing(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }

  AlgebraElement one() const { return AlgebraElement::one(algebra_); }
  AlgebraElement zero() const { return AlgebraElement::zero(algebra_); }
  AlgebraElement scalar(const Rational& q) const { return AlgebraElement::scalar(algebra_, algebra_->field().from_rational(q)); }
  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const { return a + b; }
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const { return a - b; }
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const { return a * b; }
  AlgebraElement neg(const AlgebraElement& a) const { return -a; }
  std::optional<AlgebraElement> try_inverse(const AlgebraElement& a) const { return dring::try_inverse(a); }
  bool is_zero(const AlgebraElement& a) const { return a.is_zero(); }
  bool belongs(const AlgebraElement& a) const { return a.algebra() == algebra_; }
  /// Coordinates with numerator in [-height, height], denominator in [1, height].
  AlgebraElement sample(Rng& rng, std::int64_t height) const;
  Polynomial min_poly(const AlgebraElement& a) const { return min_poly_elt(a); }
  json to_json(const AlgebraElement& a) const { return element_to_json(a); }
  AlgebraElement from_json(const json& j) const;
  std::string describe() const { return algebra_->name().empty() ? "algebra" : algebra_->name(); }

 private:
  AlgebraPtr algebra_;
};

static_assert(RingContextLike<MatrixRing>);
static_assert(RingContextLike<AlgebraRing>);

using RingContext = std::variant<MatrixRing, AlgebraRing>;

/// "matrix:<m>" (matrices over Q), "matrix:<m>@<field key>", or any algebra
/// preset name ("quaternion:a,b", "cyclic3"). Throws BadParams.
RingContext parse_context(std::string_view spec);
std::string describe(const RingContext& ctx);

}  // namespace dring
