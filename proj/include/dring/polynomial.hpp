#pragma once

#include <string>
#include <vector>

#include "dring/field.hpp"

namespace dring {

/// Univariate polynomial over a Field, coefficients low degree first with no
/// trailing zeros. The zero polynomial has degree -1.
class Polynomial {
 public:
  explicit Polynomial(Field field) : field_(field) {}
  Polynomial(Field field, std::vector<FieldElement> coeffs);

  /// Product of (x - r) over the given roots.
  static Polynomial from_roots(Field field, const std::vector<FieldElement>& roots);

  Field field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }
  const std::vector<FieldElement>& coefficients() const noexcept { return coeffs_; }
  FieldElement coefficient(std::size_t i) const;

  Polynomial operator*(const Polynomial& o) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  /// Human form, e.g. "x^2 - 3*x + 2". Only rational fields print signs
  /// natively; other fields print "+ (c)*x^k" terms.
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();

  Field field_;
  std::vector<FieldElement> coeffs_;
};

}  // namespace dring
