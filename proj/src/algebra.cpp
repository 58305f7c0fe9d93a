#include "dring/algebra.hpp"

#include "dring/error.hpp"

namespace dring {

AlgebraDescriptor::AlgebraDescriptor(Field field, std::vector<std::vector<Vector>> table, Vector unit, Options options)
    : field_(field), dim_(table.size()), table_(std::move(table)), unit_(std::move(unit)), options_(std::move(options)) {
  if (dim_ == 0) fail(ErrorCode::BadStructure, "algebra of dimension zero");
  if (unit_.size() != dim_) fail(ErrorCode::BadStructure, "unit has wrong length");
  for (const auto& row : table_) {
    if (row.size() != dim_) fail(ErrorCode::BadStructure, "structure table is not d x d");
    for (const auto& v : row) {
      if (v.size() != dim_) fail(ErrorCode::BadStructure, "structure constant vector has wrong length");
      for (const auto& c : v)
        if (c.field() != field_) fail(ErrorCode::FieldMismatch, "structure constant over " + c.field().key());
    }
  }
  for (const auto& c : unit_)
    if (c.field() != field_) fail(ErrorCode::FieldMismatch, "unit coordinate over " + c.field().key());
  if (options_.degree && *options_.degree * *options_.degree != dim_) {
    fail(ErrorCode::BadStructure, "declared degree squared does not equal the dimension");
  }
  if (!options_.basis_names.empty() && options_.basis_names.size() != dim_) {
    fail(ErrorCode::BadStructure, "basis name count does not match the dimension");
  }
  if (options_.basis_names.empty()) {
    for (std::size_t i = 0; i < dim_; ++i) options_.basis_names.push_back("e" + std::to_string(i));
  }

  sparse_.assign(dim_, std::vector<std::vector<Term>>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (!table_[i][j][k].is_zero()) sparse_[i][j].push_back({k, table_[i][j][k]});

  auto basis = [&](std::size_t i) {
    Vector e(dim_, field_.zero());
    e[i] = field_.one();
    return e;
  };
  for (std::size_t i = 0; i < dim_; ++i) {
    const Vector e = basis(i);
    if (multiply(unit_, e) != e || multiply(e, unit_) != e) {
      fail(ErrorCode::BadStructure, "unit does not act as identity on basis element " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        if (multiply(table_[i][j], basis(k)) != multiply(basis(i), table_[j][k])) {
          fail(ErrorCode::BadStructure, "associativity fails on basis triple (" + std::to_string(i) + "," +
                                            std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
}

Vector AlgebraDescriptor::multiply(const Vector& x, const Vector& y) const {
  Vector out(dim_, field_.zero());
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const FieldElement xy = x[i] * y[j];
      for (const auto& t : sparse_[i][j]) out[t.k] += xy * t.c;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Vector coords) : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) fail(ErrorCode::DescriptorMismatch, "null algebra");
  if (coords_.size() != algebra_->dim()) fail(ErrorCode::DimensionMismatch, "coordinate length does not match algebra dimension");
  for (const auto& c : coords_)
    if (c.field() != algebra_->field()) fail(ErrorCode::FieldMismatch, "coordinate over " + c.field().key());
}

AlgebraElement AlgebraElement::zero(const AlgebraPtr& algebra) {
  return AlgebraElement(algebra, Vector(algebra->dim(), algebra->field().zero()));
}

AlgebraElement AlgebraElement::one(const AlgebraPtr& algebra) { return AlgebraElement(algebra, algebra->unit()); }

AlgebraElement AlgebraElement::basis(const AlgebraPtr& algebra, std::size_t i) {
  Vector v(algebra->dim(), algebra->field().zero());
  v.at(i) = algebra->field().one();
  return AlgebraElement(algebra, std::move(v));
}

AlgebraElement AlgebraElement::scalar(const AlgebraPtr& algebra, const FieldElement& s) { return one(algebra) * s; }

bool AlgebraElement::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

void AlgebraElement::require_same(const AlgebraElement& o) const {
  if (algebra_ != o.algebra_) fail(ErrorCode::DescriptorMismatch, "elements of different algebras");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same(o);
  Vector v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
  return AlgebraElement(algebra_, std::move(v));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  require_same(o);
  Vector v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.coords_[i];
  return AlgebraElement(algebra_, std::move(v));
}

AlgebraElement AlgebraElement::operator-() const {
  Vector v = coords_;
  for (auto& c : v) c = -c;
  return AlgebraElement(algebra_, std::move(v));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require_same(o);
  return AlgebraElement(algebra_, algebra_->multiply(coords_, o.coords_));
}

AlgebraElement AlgebraElement::operator*(const FieldElement& s) const {
  Vector v = coords_;
  for (auto& c : v) c *= s;
  return AlgebraElement(algebra_, std::move(v));
}

std::string AlgebraElement::to_string() const {
  const bool signed_field = algebra_->field().kind() == FieldKind::rationals;
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const FieldElement& c = coords_[i];
    if (c.is_zero()) continue;
    const std::string& name = algebra_->basis_names()[i];
    bool negative = false;
    std::string mag;
    if (signed_field) {
      negative = c.rational() < 0;
      mag = rational_to_string(negative ? Rational(-c.rational()) : c.rational());
    } else {
      mag = "(" + c.to_string() + ")";
    }
    std::string term;
    if (name == "1") {
      term = mag;
    } else if (signed_field && mag == "1") {
      term = name;
    } else {
      term = mag + "*" + name;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Presets

AlgebraPtr matrix_algebra(std::size_t m) {
  if (m < 1) fail(ErrorCode::BadParams, "matrix:m needs m >= 1");
  const Field q = Field::rationals();
  const std::size_t d = m * m;
  std::vector<std::vector<Vector>> table(d, std::vector<Vector>(d, Vector(d, q.zero())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) table[i * m + j][j * m + l][i * m + l] = q.one();
  Vector unit(d, q.zero());
  for (std::size_t i = 0; i < m; ++i) unit[i * m + i] = q.one();
  AlgebraDescriptor::Options opt;
  opt.degree = m;
  opt.division = m == 1;
  opt.name = "matrix:" + std::to_string(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      opt.basis_names.push_back(m < 10 ? "e" + std::to_string(i + 1) + std::to_string(j + 1)
                                       : "e" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  return std::make_shared<const AlgebraDescriptor>(q, std::move(table), std::move(unit), std::move(opt));
}

AlgebraPtr quaternion_algebra(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) fail(ErrorCode::BadParams, "quaternion:a,b needs nonzero a and b");
  const Field q = Field::rationals();
  auto val = [&](const Rational& r) { return q.from_rational(r); };
  const FieldElement zero = q.zero(), one = q.one();
  // Index 0 = 1, 1 = i, 2 = j, 3 = k.
  auto vec = [&](std::size_t k, const FieldElement& c) {
    Vector v(4, zero);
    v[k] = c;
    return v;
  };
  std::vector<std::vector<Vector>> t(4, std::vector<Vector>(4));
  for (std::size_t x = 0; x < 4; ++x) {
    t[0][x] = vec(x, one);
    t[x][0] = vec(x, one);
  }
  t[1][1] = vec(0, val(a));
  t[2][2] = vec(0, val(b));
  t[3][3] = vec(0, val(-a * b));
  t[1][2] = vec(3, one);
  t[2][1] = vec(3, -one);
  t[1][3] = vec(2, val(a));
  t[3][1] = vec(2, val(-a));
  t[2][3] = vec(1, val(-b));
  t[3][2] = vec(1, val(b));
  AlgebraDescriptor::Options opt;
  opt.degree = 2;
  opt.division = a < 0 && b < 0;
  opt.basis_names = {"1", "i", "j", "k"};
  opt.name = "quaternion:" + rational_to_string(a) + "," + rational_to_string(b);
  return std::make_shared<const AlgebraDescriptor>(q, std::move(t), vec(0, one), std::move(opt));
}

Cyclic3Data cyclic3_data() {
  // t^3 + t^2 - 2t - 1, the minimal polynomial of 2cos(2pi/7).
  const Field k = Field::number_field({Rational(-1), Rational(-2), Rational(1), Rational(1)});
  const FieldElement t = k.generator();
  return {k, t * t - k.from_int(2), Rational(2)};
}

FieldElement cyclic3_sigma(const FieldElement& x, unsigned power) {
  const Cyclic3Data data = cyclic3_data();
  if (x.field() != data.k) fail(ErrorCode::FieldMismatch, "cyclic3_sigma expects an element of K");
  FieldElement cur = x;
  for (unsigned p = 0; p < power % 3; ++p) {
    const auto& c = cur.coefficients();
    FieldElement acc = data.k.zero();
    FieldElement s_pow = data.k.one();
    for (const auto& coeff : c) {
      acc += s_pow * data.k.from_rational(coeff);
      s_pow *= data.sigma_of_generator;
    }
    cur = acc;
  }
  return cur;
}

AlgebraPtr cyclic3_algebra() {
  static const AlgebraPtr cached = [] {
    const Cyclic3Data data = cyclic3_data();
    const Field q = Field::rationals();
    const FieldElement t = data.k.generator();
    auto t_pow = [&](std::size_t e) {
      FieldElement r = data.k.one();
      for (std::size_t i = 0; i < e; ++i) r *= t;
      return r;
    };
    std::vector<std::vector<Vector>> table(9, std::vector<Vector>(9, Vector(9, q.zero())));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
          for (std::size_t l = 0; l < 3; ++l) {
            // (t^i u^j)(t^k u^l) = t^i sigma^j(t^k) u^(j+l), with u^3 = gamma.
            FieldElement c = t_pow(i) * cyclic3_sigma(t_pow(k), static_cast<unsigned>(j));
            if (j + l >= 3) c *= data.k.from_rational(data.gamma);
            const std::size_t upow = (j + l) % 3;
            const auto& coeffs = c.coefficients();
            for (std::size_t s = 0; s < 3; ++s) table[i + 3 * j][k + 3 * l][s + 3 * upow] = q.from_rational(coeffs[s]);
          }
    Vector unit(9, q.zero());
    unit[0] = q.one();
    AlgebraDescriptor::Options opt;
    opt.degree = 3;
    opt.division = true;
    opt.basis_names = {"1", "a", "a2", "u", "au", "a2u", "u2", "au2", "a2u2"};
    opt.name = "cyclic3";
    return std::make_shared<const AlgebraDescriptor>(q, std::move(table), std::move(unit), std::move(opt));
  }();
  return cached;
}

AlgebraPtr preset(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string params = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  try {
    if (head == "cyclic3" && colon == std::string_view::npos) return cyclic3_algebra();
    if (head == "matrix" && !params.empty()) {
      for (char c : params)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorCode::BadParams, "matrix:m needs a positive integer");
      return matrix_algebra(std::stoul(params));
    }
    if (head == "quaternion") {
      const auto comma = params.find(',');
      if (comma == std::string::npos) fail(ErrorCode::BadParams, "quaternion needs 'quaternion:a,b'");
      return quaternion_algebra(parse_rational(params.substr(0, comma)), parse_rational(params.substr(comma + 1)));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadParams) throw;
    fail(ErrorCode::BadParams, std::string("bad preset '") + std::string(spec) + "': " + e.what());
  }
  fail(ErrorCode::BadParams, "unknown preset '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------

AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y) { return x * y; }

Matrix regular_representation(const AlgebraElement& x) {
  const auto& alg = *x.algebra();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < alg.dim(); ++j) cols.push_back((x * AlgebraElement::basis(x.algebra(), j)).coords());
  return from_columns(alg.field(), cols);
}

Matrix right_representation(const AlgebraElement& x) {
  const auto& alg = *x.algebra();
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < alg.dim(); ++j) cols.push_back((AlgebraElement::basis(x.algebra(), j) * x).coords());
  return from_columns(alg.field(), cols);
}

std::optional<AlgebraElement> try_inverse(const AlgebraElement& x) {
  try {
    AlgebraElement y(x.algebra(), solve(regular_representation(x), x.algebra()->unit()));
    if (y * x != AlgebraElement::one(x.algebra())) fail(ErrorCode::BadStructure, "left inverse is not a right inverse");
    return y;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) return std::nullopt;
    throw;
  }
}

AlgebraElement alg_inverse(const AlgebraElement& x) {
  auto y = try_inverse(x);
  if (!y) fail(ErrorCode::NotInvertible, "element " + x.to_string() + " is not invertible");
  return *y;
}

Polynomial min_poly_elt(const AlgebraElement& x) { return min_poly(regular_representation(x)); }

bool is_central(const AlgebraElement& x) {
  for (std::size_t i = 0; i < x.algebra()->dim(); ++i) {
    const AlgebraElement e = AlgebraElement::basis(x.algebra(), i);
    if (x * e != e * x) return false;
  }
  return true;
}

std::size_t subfield_degree(const AlgebraElement& x) { return static_cast<std::size_t>(min_poly_elt(x).degree()); }

std::size_t centralizer_dimension(const AlgebraElement& x) {
  return kernel_basis(regular_representation(x) - right_representation(x)).size();
}

MaximalSubfieldReport maximal_subfield_check(const AlgebraElement& x) {
  const auto& alg = *x.algebra();
  if (!alg.degree() || !alg.division()) {
    fail(ErrorCode::NotADivisionPreset, "maximal subfield check needs a declared division algebra of known degree");
  }
  Polynomial mp = min_poly_elt(x);
  const auto degree = static_cast<std::size_t>(mp.degree());
  const std::size_t cdim = centralizer_dimension(x);
  const bool maximal = degree == *alg.degree();
  return {maximal, degree, *alg.degree(), std::move(mp), cdim, !maximal || cdim == *alg.degree()};
}

// ---------------------------------------------------------------------------

json algebra_to_json(const AlgebraDescriptor& a) {
  json table = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(vector_to_json(a.product(i, j)));
    table.push_back(std::move(row));
  }
  json j{{"field", a.field().key()}, {"dim", a.dim()}, {"unit", vector_to_json(a.unit())},
         {"table", std::move(table)}, {"division", a.division()}, {"names", a.basis_names()}};
  if (a.degree()) j["degree"] = *a.degree();
  if (!a.name().empty()) j["name"] = a.name();
  return j;
}

AlgebraPtr algebra_from_json(const json& j) {
  try {
    const Field field = Field::parse(j.at("field").get<std::string>());
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const json& tj = j.at("table");
    if (!tj.is_array() || tj.size() != dim) fail(ErrorCode::BadFormat, "table must have dim rows");
    std::vector<std::vector<Vector>> table;
    for (const auto& row : tj) {
      if (!row.is_array() || row.size() != dim) fail(ErrorCode::BadFormat, "table rows must have dim entries");
      std::vector<Vector> r;
      for (const auto& v : row) r.push_back(vector_from_json(field, v));
      table.push_back(std::move(r));
    }
    AlgebraDescriptor::Options opt;
    if (j.contains("degree") && !j["degree"].is_null()) opt.degree = j["degree"].get<std::size_t>();
    opt.division = j.value("division", false);
    if (j.contains("names")) opt.basis_names = j["names"].get<std::vector<std::string>>();
    opt.name = j.value("name", std::string());
    return std::make_shared<const AlgebraDescriptor>(field, std::move(table), vector_from_json(field, j.at("unit")), std::move(opt));
  } catch (const json::exception& e) {
    fail(ErrorCode::BadFormat, std::string("malformed algebra JSON: ") + e.what());
  }
}

json element_to_json(const AlgebraElement& x) { return vector_to_json(x.coords()); }

}  // namespace dring
