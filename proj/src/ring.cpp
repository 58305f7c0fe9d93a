#include "dring/ring.hpp"

#include "dring/error.hpp"

namespace dring {

MatrixRing::MatrixRing(Field field, std::size_t size) : field_(field), size_(size) {
  if (size == 0) fail(ErrorCode::BadParams, "matrix ring of size zero");
}

std::optional<Matrix> MatrixRing::try_inverse(const Matrix& a) const {
  try {
    return inverse(a);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) return std::nullopt;
    throw;
  }
}

Matrix MatrixRing::from_json(const json& j) const {
  Matrix m = matrix_from_json(j);
  if (!belongs(m)) fail(ErrorCode::ContextMismatch, "matrix does not belong to " + describe());
  return m;
}

std::string MatrixRing::describe() const {
  const std::string base = "matrix:" + std::to_string(size_);
  return field_ == Field::rationals() ? base : base + "@" + field_.key();
}

AlgebraRing::AlgebraRing(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) fail(ErrorCode::BadParams, "null algebra");
}

AlgebraElement AlgebraRing::sample(Rng& rng, std::int64_t height) const {
  Vector v;
  for (std::size_t i = 0; i < algebra_->dim(); ++i) v.push_back(rng.element(algebra_->field(), height));
  return AlgebraElement(algebra_, std::move(v));
}

AlgebraElement AlgebraRing::from_json(const json& j) const {
  return AlgebraElement(algebra_, vector_from_json(algebra_->field(), j));
}

RingContext parse_context(std::string_view spec) {
  if (spec.rfind("matrix:", 0) == 0) {
    const std::string rest(spec.substr(7));
    const auto at = rest.find('@');
    const std::string size_text = rest.substr(0, at);
    if (size_text.empty() || size_text.find_first_not_of("0123456789") != std::string::npos) {
      fail(ErrorCode::BadParams, "matrix context needs a positive size: '" + std::string(spec) + "'");
    }
    const std::size_t m = std::stoul(size_text);
    if (m == 0) fail(ErrorCode::BadParams, "matrix context needs a positive size");
    const Field field = at == std::string::npos ? Field::rationals() : Field::parse(rest.substr(at + 1));
    return MatrixRing(field, m);
  }
  return AlgebraRing(preset(spec));
}

std::string describe(const RingContext& ctx) {
  return std::visit([](const auto& r) { return r.describe(); }, ctx);
}

}  // namespace dring
