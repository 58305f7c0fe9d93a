#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dring {

using Rational = mpq_class;
using Integer = mpz_class;

enum class FieldKind { rationals, prime_field, number_field };

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws BadFormat.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

bool is_prime_u64(std::uint64_t n);

/// Interned description of a scalar field. Instances are created only through
/// the `Field` factories and live for the whole program, so two fields are
/// equal exactly when their descriptors are the same object.
class FieldDescriptor {
 public:
  FieldKind kind() const noexcept { return kind_; }
  /// Modulus for prime fields; 0 otherwise.
  std::uint64_t prime() const noexcept { return prime_; }
  /// Defining polynomial of a number field, low degree first, monic.
  const std::vector<Rational>& modulus() const noexcept { return modulus_; }
  /// Degree over the prime field: deg f for number fields, 1 otherwise.
  std::size_t degree() const noexcept;
  std::uint64_t characteristic() const noexcept { return kind_ == FieldKind::prime_field ? prime_ : 0; }
  const std::string& key() const noexcept { return key_; }

 private:
  friend class Field;
  FieldDescriptor(FieldKind kind, std::uint64_t prime, std::vector<Rational> modulus, std::string key);

  FieldKind kind_;
  std::uint64_t prime_;
  std::vector<Rational> modulus_;
  std::string key_;
};

class FieldElement;

/// A cheap handle to an interned FieldDescriptor.
class Field {
 public:
  static Field rationals();
  /// Throws BadField unless p is prime and below 2^63.
  static Field prime(std::uint64_t p);
  /// `monic` lists the coefficients of f low degree first, leading one last.
  /// Irreducibility of f is assumed, not verified.
  static Field number_field(std::vector<Rational> monic);
  /// Accepts "Q", "Fp:<p>" or "NF:<c0,c1,...,1>".
  static Field parse(std::string_view key);

  const FieldDescriptor& descriptor() const noexcept { return *desc_; }
  FieldKind kind() const noexcept { return desc_->kind(); }
  std::uint64_t characteristic() const noexcept { return desc_->characteristic(); }
  bool is_infinite() const noexcept { return desc_->kind() != FieldKind::prime_field; }
  const std::string& key() const noexcept { return desc_->key(); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long value) const;
  /// Maps a rational into the field; in F_p the denominator must be a unit.
  FieldElement from_rational(const Rational& q) const;
  /// The class of x in Q[x]/(f). Number fields only.
  FieldElement generator() const;
  FieldElement from_coefficients(std::vector<Rational> coeffs) const;
  /// Inverse of FieldElement::to_string.
  FieldElement parse_element(std::string_view text) const;

  /// Checks the defining polynomial of a number field for a rational root.
  /// Returns nullopt when the coefficients are too large to enumerate
  /// candidates, or when the field is not a number field.
  std::optional<bool> has_rational_root() const;

  friend bool operator==(Field a, Field b) noexcept { return a.desc_ == b.desc_; }
  friend bool operator!=(Field a, Field b) noexcept { return a.desc_ != b.desc_; }

 private:
  explicit Field(const FieldDescriptor* desc) : desc_(desc) {}
  const FieldDescriptor* desc_;
};

/// An exact scalar. Payloads are kept canonical, so equality is payload
/// comparison: reduced fractions, residues in [0, p), or a coefficient
/// vector of length exactly deg f.
class FieldElement {
 public:
  /// Rational zero.
  FieldElement();

  Field field() const noexcept { return field_; }

  bool is_zero() const;
  bool is_one() const;

  const Rational& rational() const;
  std::uint64_t residue() const;
  const std::vector<Rational>& coefficients() const;

  /// Throws ZeroInverse for zero.
  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// "p/q" for rationals, the residue for F_p, "[c0,c1,...]" for number fields.
  std::string to_string() const;

 private:
  friend class Field;
  using Payload = std::variant<Rational, std::uint64_t, std::vector<Rational>>;
  FieldElement(Field field, Payload payload) : field_(field), payload_(std::move(payload)) {}
  void require_same(const FieldElement& o) const;

  Field field_;
  Payload payload_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

}  // namespace dring
