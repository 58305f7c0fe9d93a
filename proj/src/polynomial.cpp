#include "dring/polynomial.hpp"

#include "dring/error.hpp"

namespace dring {

Polynomial::Polynomial(Field field, std::vector<FieldElement> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.field() != field_) fail(ErrorCode::FieldMismatch, "polynomial coefficient over " + c.field().key());
  }
  trim();
}

Polynomial Polynomial::from_roots(Field field, const std::vector<FieldElement>& roots) {
  Polynomial p(field, {field.one()});
  for (const auto& r : roots) p = p * Polynomial(field, {-r, field.one()});
  return p;
}

FieldElement Polynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : field_.zero();
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (field_ != o.field_) fail(ErrorCode::FieldMismatch, "polynomial product");
  if (is_zero() || o.is_zero()) return Polynomial(field_);
  std::vector<FieldElement> out(coeffs_.size() + o.coeffs_.size() - 1, field_.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(field_, std::move(out));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  const bool signed_field = field_.kind() == FieldKind::rationals;
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const FieldElement& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string mag;
    bool negative = false;
    if (signed_field) {
      negative = c.rational() < 0;
      mag = rational_to_string(negative ? Rational(-c.rational()) : c.rational());
    } else {
      mag = "(" + c.to_string() + ")";
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (mono.empty()) {
      term = mag;
    } else if (signed_field && mag == "1") {
      term = mono;
    } else {
      term = mag + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace dring
