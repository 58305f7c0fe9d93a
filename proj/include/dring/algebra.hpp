#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dring/matrix.hpp"
#include "dring/matrix_io.hpp"
#include "dring/polynomial.hpp"

namespace dring {

/// A finite-dimensional unital algebra over `field()` given by structure
/// constants: e_i * e_j = sum_k c[i][j][k] e_k. The constructor checks the
/// unit and associativity on every basis triple.
class AlgebraDescriptor {
 public:
  struct Options {
    std::optional<std::size_t> degree;
    bool division = false;
    std::vector<std::string> basis_names;
    std::string name;
  };

  /// `table[i][j]` holds the coordinates of e_i * e_j.
  AlgebraDescriptor(Field field, std::vector<std::vector<Vector>> table, Vector unit, Options options);

  Field field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const Vector& unit() const noexcept { return unit_; }
  const Vector& product(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::optional<std::size_t> degree() const noexcept { return options_.degree; }
  bool division() const noexcept { return options_.division; }
  const std::vector<std::string>& basis_names() const noexcept { return options_.basis_names; }
  const std::string& name() const noexcept { return options_.name; }

  /// Coordinates of x*y.
  Vector multiply(const Vector& x, const Vector& y) const;

 private:
  struct Term {
    std::size_t k;
    FieldElement c;
  };

  Field field_;
  std::size_t dim_;
  std::vector<std::vector<Vector>> table_;
  std::vector<std::vector<std::vector<Term>>> sparse_;
  Vector unit_;
  Options options_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraDescriptor>;

class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, Vector coords);

  static AlgebraElement zero(const AlgebraPtr& algebra);
  static AlgebraElement one(const AlgebraPtr& algebra);
  static AlgebraElement basis(const AlgebraPtr& algebra, std::size_t i);
  static AlgebraElement scalar(const AlgebraPtr& algebra, const FieldElement& s);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coords() const noexcept { return coords_; }
  bool is_zero() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator*(const FieldElement& s) const;
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.algebra_ == b.algebra_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  /// Linear combination over the basis names, e.g. "1 + 2/3*i - j".
  std::string to_string() const;

 private:
  void require_same(const AlgebraElement& o) const;

  AlgebraPtr algebra_;
  Vector coords_;
};

// Presets over Q.

/// Full m x m matrix algebra with basis E_ij (index i*m + j), named "e<i><j>"
/// with one-based indices.
AlgebraPtr matrix_algebra(std::size_t m);
/// Basis 1, i, j, k with i^2 = a, j^2 = b, ij = -ji = k. Declared a division
/// algebra when a < 0 and b < 0 (definite norm form).
AlgebraPtr quaternion_algebra(const Rational& a, const Rational& b);
/// Cyclic algebra (K/Q, sigma, 2) with K = Q[t]/(t^3 + t^2 - 2t - 1) and
/// sigma(t) = t^2 - 2. Basis t^i u^j at index i + 3j named 1, a, a2, u, au,
/// a2u, u2, au2, a2u2.
AlgebraPtr cyclic3_algebra();
/// "matrix:<m>", "quaternion:<a>,<b>" or "cyclic3". Throws BadParams.
AlgebraPtr preset(std::string_view spec);

/// Field and automorphism data behind cyclic3.
struct Cyclic3Data {
  Field k;
  FieldElement sigma_of_generator;
  Rational gamma;
};
Cyclic3Data cyclic3_data();
/// Applies sigma^power to an element of the cyclic3 base field K.
FieldElement cyclic3_sigma(const FieldElement& x, unsigned power = 1);

AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y);
/// Matrix of left multiplication by x in the algebra basis.
Matrix regular_representation(const AlgebraElement& x);
/// Matrix of right multiplication by x.
Matrix right_representation(const AlgebraElement& x);
std::optional<AlgebraElement> try_inverse(const AlgebraElement& x);
/// Throws NotInvertible when the regular representation is singular.
AlgebraElement alg_inverse(const AlgebraElement& x);
Polynomial min_poly_elt(const AlgebraElement& x);
bool is_central(const AlgebraElement& x);
std::size_t subfield_degree(const AlgebraElement& x);
/// Dimension of {z : xz = zx}.
std::size_t centralizer_dimension(const AlgebraElement& x);

struct MaximalSubfieldReport {
  bool maximal;
  std::size_t degree;
  std::size_t algebra_degree;
  Polynomial min_poly;
  std::size_t centralizer_dim;
  /// Degree m implies centralizer dimension m; false flags a violated
  /// division assumption.
  bool centralizer_consistent;
};
/// Requires a declared degree and declared division; throws NotADivisionPreset.
MaximalSubfieldReport maximal_subfield_check(const AlgebraElement& x);

json algebra_to_json(const AlgebraDescriptor& a);
AlgebraPtr algebra_from_json(const json& j);
json element_to_json(const AlgebraElement& x);

}  // namespace dring
