#include "dring/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "dring/error.hpp"

namespace dring {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

// Long division a = q*b + r with b nonzero.
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    trim(r);
  }
  trim(q);
}

// Reduces p modulo the monic modulus and pads to length deg f.
QPoly reduce_mod(QPoly p, const QPoly& modulus) {
  const std::size_t deg = modulus.size() - 1;
  trim(p);
  for (std::size_t top = p.size(); top > deg; --top) {
    const Rational c = p[top - 1];
    if (c == 0) continue;
    const std::size_t shift = top - 1 - deg;
    for (std::size_t i = 0; i <= deg; ++i) p[shift + i] -= c * modulus[i];
  }
  p.resize(deg, Rational(0));
  return p;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t residue_of(const Integer& z, std::uint64_t p) {
  Integer r = z % Integer(std::to_string(p));
  if (r < 0) r += Integer(std::to_string(p));
  return std::stoull(r.get_str());
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim_copy(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view raw) {
  const std::string text = trim_copy(raw);
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  const std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) fail(ErrorCode::BadFormat, "not a rational: '" + text + "'");
  if (i < text.size()) {
    if (text[i] != '/') fail(ErrorCode::BadFormat, "not a rational: '" + text + "'");
    ++i;
    const std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) fail(ErrorCode::BadFormat, "not a rational: '" + text + "'");
  }
  std::string normalized = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(normalized, 10) != 0) fail(ErrorCode::BadFormat, "not a rational: '" + text + "'");
  if (q.get_den() == 0) fail(ErrorCode::BadFormat, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(10); }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for every 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FieldDescriptor / Field

FieldDescriptor::FieldDescriptor(FieldKind kind, std::uint64_t prime, std::vector<Rational> modulus, std::string key)
    : kind_(kind), prime_(prime), modulus_(std::move(modulus)), key_(std::move(key)) {}

std::size_t FieldDescriptor::degree() const noexcept {
  return kind_ == FieldKind::number_field ? modulus_.size() - 1 : 1;
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<FieldDescriptor>> by_key;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

Field Field::rationals() {
  static const Field q = [] {
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto& slot = reg.by_key["Q"];
    if (!slot) slot.reset(new FieldDescriptor(FieldKind::rationals, 0, {}, "Q"));
    return Field(slot.get());
  }();
  return q;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 63) || !is_prime_u64(p)) fail(ErrorCode::BadField, "not a supported prime: " + std::to_string(p));
  const std::string key = "Fp:" + std::to_string(p);
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto& slot = reg.by_key[key];
  if (!slot) slot.reset(new FieldDescriptor(FieldKind::prime_field, p, {}, key));
  return Field(slot.get());
}

Field Field::number_field(std::vector<Rational> monic) {
  for (auto& c : monic) c.canonicalize();
  trim(monic);
  if (monic.size() < 2) fail(ErrorCode::BadField, "number field polynomial must have degree >= 1");
  if (monic.back() != 1) fail(ErrorCode::BadField, "number field polynomial must be monic");
  std::string key = "NF:";
  for (std::size_t i = 0; i < monic.size(); ++i) {
    if (i) key += ',';
    key += rational_to_string(monic[i]);
  }
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  auto& slot = reg.by_key[key];
  if (!slot) slot.reset(new FieldDescriptor(FieldKind::number_field, 0, std::move(monic), key));
  return Field(slot.get());
}

Field Field::parse(std::string_view raw) {
  const std::string key = trim_copy(raw);
  if (key == "Q") return rationals();
  if (key.rfind("Fp:", 0) == 0) {
    const std::string digits = key.substr(3);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        digits.size() > 19) {
      fail(ErrorCode::BadField, "bad prime field key '" + key + "'");
    }
    return prime(std::stoull(digits));
  }
  if (key.rfind("NF:", 0) == 0) {
    std::vector<Rational> coeffs;
    for (const auto& part : split(std::string_view(key).substr(3), ',')) coeffs.push_back(parse_rational(part));
    return number_field(std::move(coeffs));
  }
  fail(ErrorCode::BadField, "unknown field key '" + key + "'");
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long value) const { return from_rational(Rational(value)); }

FieldElement Field::from_rational(const Rational& q) const {
  switch (kind()) {
    case FieldKind::rationals: return FieldElement(*this, q);
    case FieldKind::prime_field: {
      const std::uint64_t p = desc_->prime();
      const std::uint64_t den = residue_of(q.get_den(), p);
      if (den == 0) fail(ErrorCode::ZeroInverse, "denominator of " + rational_to_string(q) + " vanishes mod " + std::to_string(p));
      const std::uint64_t num = residue_of(q.get_num(), p);
      return FieldElement(*this, mul_mod(num, pow_mod(den, p - 2, p), p));
    }
    case FieldKind::number_field: {
      std::vector<Rational> coeffs(desc_->degree(), Rational(0));
      coeffs[0] = q;
      return FieldElement(*this, std::move(coeffs));
    }
  }
  fail(ErrorCode::BadField, "unreachable");
}

FieldElement Field::generator() const {
  if (kind() != FieldKind::number_field) fail(ErrorCode::BadField, "generator() needs a number field");
  QPoly x{Rational(0), Rational(1)};
  return FieldElement(*this, reduce_mod(std::move(x), desc_->modulus()));
}

FieldElement Field::from_coefficients(std::vector<Rational> coeffs) const {
  if (kind() != FieldKind::number_field) {
    if (coeffs.size() != 1) fail(ErrorCode::BadFormat, "expected a single coefficient");
    return from_rational(coeffs[0]);
  }
  for (auto& c : coeffs) c.canonicalize();
  return FieldElement(*this, reduce_mod(std::move(coeffs), desc_->modulus()));
}

FieldElement Field::parse_element(std::string_view raw) const {
  const std::string text = trim_copy(raw);
  switch (kind()) {
    case FieldKind::rationals: return FieldElement(*this, parse_rational(text));
    case FieldKind::prime_field: return from_rational(parse_rational(text));
    case FieldKind::number_field: {
      if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        fail(ErrorCode::BadFormat, "number field element must look like [c0,c1,...]: '" + text + "'");
      }
      std::vector<Rational> coeffs;
      for (const auto& part : split(std::string_view(text).substr(1, text.size() - 2), ',')) coeffs.push_back(parse_rational(part));
      if (coeffs.size() != desc_->degree()) fail(ErrorCode::BadFormat, "number field element has wrong length: '" + text + "'");
      return FieldElement(*this, std::move(coeffs));
    }
  }
  fail(ErrorCode::BadField, "unreachable");
}

std::optional<bool> Field::has_rational_root() const {
  if (kind() != FieldKind::number_field) return std::nullopt;
  const auto& f = desc_->modulus();
  Integer lcm_den = 1;
  for (const auto& c : f) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : f) ints.push_back(Integer(c * lcm_den));
  // Zero is a root iff the constant term is zero.
  if (ints.front() == 0) return true;
  const Integer limit = 1000000;
  if (abs(ints.front()) > limit || abs(ints.back()) > limit) return std::nullopt;
  for (const auto& num : divisors(ints.front())) {
    for (const auto& den : divisors(ints.back())) {
      for (int sign : {1, -1}) {
        const Rational root(Integer(num * sign), den);
        Rational acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = acc * root + f[i];
        if (acc == 0) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement() : field_(Field::rationals()), payload_(Rational(0)) {}

void FieldElement::require_same(const FieldElement& o) const {
  if (field_ != o.field_) fail(ErrorCode::FieldMismatch, field_.key() + " vs " + o.field_.key());
}

bool FieldElement::is_zero() const {
  switch (field_.kind()) {
    case FieldKind::rationals: return std::get<Rational>(payload_) == 0;
    case FieldKind::prime_field: return std::get<std::uint64_t>(payload_) == 0;
    case FieldKind::number_field: {
      const auto& c = std::get<std::vector<Rational>>(payload_);
      return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; });
    }
  }
  return false;
}

bool FieldElement::is_one() const { return *this == field_.one(); }

const Rational& FieldElement::rational() const {
  if (field_.kind() != FieldKind::rationals) fail(ErrorCode::FieldMismatch, "rational() on " + field_.key());
  return std::get<Rational>(payload_);
}

std::uint64_t FieldElement::residue() const {
  if (field_.kind() != FieldKind::prime_field) fail(ErrorCode::FieldMismatch, "residue() on " + field_.key());
  return std::get<std::uint64_t>(payload_);
}

const std::vector<Rational>& FieldElement::coefficients() const {
  if (field_.kind() != FieldKind::number_field) fail(ErrorCode::FieldMismatch, "coefficients() on " + field_.key());
  return std::get<std::vector<Rational>>(payload_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::ZeroInverse, "inverse of zero");
  switch (field_.kind()) {
    case FieldKind::rationals: return FieldElement(field_, Rational(1) / std::get<Rational>(payload_));
    case FieldKind::prime_field: {
      const std::uint64_t p = field_.descriptor().prime();
      return FieldElement(field_, pow_mod(std::get<std::uint64_t>(payload_), p - 2, p));
    }
    case FieldKind::number_field: {
      // Extended Euclid: s*a + t*f = g; a is a unit iff g is a nonzero constant.
      const QPoly& f = field_.descriptor().modulus();
      QPoly r0 = f, r1 = std::get<std::vector<Rational>>(payload_);
      trim(r1);
      QPoly s0{}, s1{Rational(1)};
      while (!r1.empty()) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      if (r0.size() != 1) fail(ErrorCode::ZeroInverse, "element shares a factor with the defining polynomial");
      const Rational g = r0[0];
      for (auto& c : s0) c /= g;
      return FieldElement(field_, reduce_mod(std::move(s0), f));
    }
  }
  fail(ErrorCode::BadField, "unreachable");
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same(o);
  switch (field_.kind()) {
    case FieldKind::rationals: std::get<Rational>(payload_) += std::get<Rational>(o.payload_); break;
    case FieldKind::prime_field: {
      const std::uint64_t p = field_.descriptor().prime();
      auto& r = std::get<std::uint64_t>(payload_);
      const std::uint64_t s = std::get<std::uint64_t>(o.payload_);
      r = r >= p - s ? r - (p - s) : r + s;
      break;
    }
    case FieldKind::number_field: {
      auto& c = std::get<std::vector<Rational>>(payload_);
      const auto& d = std::get<std::vector<Rational>>(o.payload_);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += d[i];
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same(o);
  switch (field_.kind()) {
    case FieldKind::rationals: std::get<Rational>(payload_) *= std::get<Rational>(o.payload_); break;
    case FieldKind::prime_field: {
      auto& r = std::get<std::uint64_t>(payload_);
      r = mul_mod(r, std::get<std::uint64_t>(o.payload_), field_.descriptor().prime());
      break;
    }
    case FieldKind::number_field: {
      auto& c = std::get<std::vector<Rational>>(payload_);
      c = reduce_mod(poly_mul(c, std::get<std::vector<Rational>>(o.payload_)), field_.descriptor().modulus());
      break;
    }
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::operator-() const {
  switch (field_.kind()) {
    case FieldKind::rationals: return FieldElement(field_, Rational(-std::get<Rational>(payload_)));
    case FieldKind::prime_field: {
      const std::uint64_t r = std::get<std::uint64_t>(payload_);
      return FieldElement(field_, r == 0 ? 0 : field_.descriptor().prime() - r);
    }
    case FieldKind::number_field: {
      auto c = std::get<std::vector<Rational>>(payload_);
      for (auto& q : c) q = -q;
      return FieldElement(field_, std::move(c));
    }
  }
  fail(ErrorCode::BadField, "unreachable");
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.payload_ == b.payload_;
}

std::string FieldElement::to_string() const {
  switch (field_.kind()) {
    case FieldKind::rationals: return rational_to_string(std::get<Rational>(payload_));
    case FieldKind::prime_field: return std::to_string(std::get<std::uint64_t>(payload_));
    case FieldKind::number_field: {
      std::string s = "[";
      const auto& c = std::get<std::vector<Rational>>(payload_);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += rational_to_string(c[i]);
      }
      return s + "]";
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

}  // namespace dring
