#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dring/error.hpp"
#include "dring/field.hpp"
#include "dring/matrix.hpp"
#include "dring/matrix_io.hpp"
#include "dring/random.hpp"

using namespace dring;

namespace {

Field q() { return Field::rationals(); }
FieldElement r(long n, long d = 1) { return q().from_rational(Rational(n, d)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadFormat;
}

// Leibniz expansion; independent of the elimination path.
FieldElement leibniz_det(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  FieldElement total = m.field().zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    FieldElement term = m.field().one();
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<Field> sample_fields() {
  return {Field::rationals(), Field::prime(101), Field::number_field({Rational(-1), Rational(-2), Rational(1), Rational(1)})};
}

}  // namespace

TEST_CASE("field_inverse examples") {
  CHECK(r(1).inverse() == r(1));
  CHECK(r(2, 3).inverse() == r(3, 2));
  CHECK(code_of([] { (void)r(0).inverse(); }) == ErrorCode::ZeroInverse);
  CHECK(code_of([] { (void)Field::prime(7).zero().inverse(); }) == ErrorCode::ZeroInverse);
}

TEST_CASE("canonical payloads") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-6/4").get_str() == "-3/2");
  CHECK(parse_rational("0/5").get_str() == "0");
  CHECK(code_of([] { (void)q().parse_element("4/-2"); }) == ErrorCode::BadFormat);
  CHECK(Field::prime(7).parse_element("-1").to_string() == "6");
  CHECK(Field::prime(7).parse_element("1/2").to_string() == "4");
}

TEST_CASE("rational parsing rejects junk") {
  for (const char* bad : {"", "1/0", "x", "1//2", "1.5", "--1"}) {
    CHECK(code_of([&] { (void)parse_rational(bad); }) == ErrorCode::BadFormat);
  }
}

TEST_CASE("field descriptors are interned and validated") {
  CHECK(Field::prime(7) == Field::parse("Fp:7"));
  CHECK(Field::parse("NF:-1,-2,1,1") == Field::number_field({Rational(-1), Rational(-2), Rational(1), Rational(1)}));
  CHECK(code_of([] { (void)Field::prime(9); }) == ErrorCode::BadField);
  CHECK(code_of([] { (void)Field::number_field({Rational(1), Rational(2)}); }) == ErrorCode::BadField);
  CHECK(code_of([] { (void)Field::parse("R"); }) == ErrorCode::BadField);
  CHECK(Field::prime(7).characteristic() == 7);
  CHECK(is_prime_u64(2305843009213693951ULL));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("number field rational-root probe") {
  const Field k = Field::parse("NF:-1,-2,1,1");
  CHECK(k.has_rational_root() == std::optional<bool>(false));
  CHECK(Field::parse("NF:-2,0,1").has_rational_root() == std::optional<bool>(false));
  CHECK(Field::parse("NF:-4,0,1").has_rational_root() == std::optional<bool>(true));
  CHECK_FALSE(q().has_rational_root().has_value());
}

TEST_CASE("number field arithmetic") {
  // Q(sqrt 2): (1 + t)(1 - t) = -1.
  const Field k = Field::parse("NF:-2,0,1");
  const FieldElement t = k.generator();
  CHECK((k.one() + t) * (k.one() - t) == k.from_int(-1));
  CHECK((k.one() + t).inverse() == t - k.one());
  CHECK(t.to_string() == "[0,1]");
  CHECK(k.parse_element("[0,1]") == t);
}

TEST_CASE("field axioms on random triples") {
  for (const Field f : sample_fields()) {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const FieldElement a = rng.element(f, 10), b = rng.element(f, 10), c = rng.element(f, 10);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == f.zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
    }
  }
}

TEST_CASE("det examples") {
  CHECK(det(Matrix::identity(q(), 3)) == r(1));
  CHECK(det(Matrix::from_ints({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})) == r(1));
  CHECK(det(Matrix::from_ints({{2, 0}, {0, 3}})) == r(6));
  CHECK(code_of([] { (void)det(Matrix(Field::rationals(), 2, 3)); }) == ErrorCode::NonSquare);
}

TEST_CASE("trace examples") {
  CHECK(trace(Matrix::identity(q(), 3)) == r(3));
  CHECK(trace(Matrix::from_ints({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == r(0));
  CHECK(trace(Matrix::from_ints({{1, 0}, {0, -1}})) == r(0));
  CHECK(code_of([] { (void)trace(Matrix(Field::rationals(), 3, 1)); }) == ErrorCode::NonSquare);
}

TEST_CASE("mat_inverse examples") {
  CHECK(inverse(Matrix::identity(q(), 2)) == Matrix::identity(q(), 2));
  CHECK(inverse(Matrix::from_ints({{1, 1}, {0, 1}})) == Matrix::from_ints({{1, -1}, {0, 1}}));
  CHECK(code_of([] { (void)inverse(Matrix::from_ints({{1, 1}, {1, 1}})); }) == ErrorCode::Singular);
  CHECK(code_of([] { (void)inverse(Matrix(Field::rationals(), 1, 2)); }) == ErrorCode::NonSquare);
}

TEST_CASE("min_poly examples") {
  CHECK(min_poly(Matrix::from_ints({{1, 0}, {0, 2}})).to_string() == "x^2 - 3*x + 2");
  CHECK(min_poly(Matrix::identity(q(), 3)).to_string() == "x - 1");
  CHECK(min_poly(Matrix::from_ints({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})).to_string() == "x^3");
  CHECK(code_of([] { (void)min_poly(Matrix(Field::rationals(), 2, 1)); }) == ErrorCode::NonSquare);
}

TEST_CASE("is_scalar examples") {
  CHECK(is_scalar(Matrix::scalar(r(2), 3)));
  CHECK_FALSE(is_scalar(Matrix::unit(q(), 2, 0, 1)));
  CHECK(is_scalar(Matrix::from_ints({{7}})));
}

TEST_CASE("kernel_basis examples") {
  CHECK(kernel_basis(Matrix::identity(q(), 2)).empty());
  CHECK(kernel_basis(Matrix(q(), 2, 2)).size() == 2);
  const auto k = kernel_basis(Matrix::from_ints({{1, 1}, {1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK_FALSE(k[0][0].is_zero());
}

TEST_CASE("zero-sized matrices are rejected") {
  CHECK(code_of([] { (void)Matrix(Field::rationals(), 0, 0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("mixed-field products are rejected") {
  const Matrix a = Matrix::identity(q(), 2);
  const Matrix b = Matrix::identity(Field::prime(5), 2);
  CHECK(code_of([&] { (void)(a * b); }) == ErrorCode::FieldMismatch);
}

TEST_CASE("determinant agrees with Leibniz expansion and is multiplicative") {
  for (const Field f : sample_fields()) {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
      const Matrix a = rng.matrix(f, n, n, 6), b = rng.matrix(f, n, n, 6);
      CHECK(det(a) == leibniz_det(a));
      CHECK(det(a * b) == det(a) * det(b));
      CHECK(trace(a * b) == trace(b * a));
    }
  }
}

TEST_CASE("inverse round trip and min_poly invariants") {
  for (const Field f : sample_fields()) {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      const Matrix a = rng.matrix(f, n, n, 5);
      Matrix p = rng.matrix(f, n, n, 5);
      if (det(p).is_zero()) continue;
      const Matrix p_inv = inverse(p);
      CHECK(p * p_inv == Matrix::identity(f, n));
      CHECK(p_inv * p == Matrix::identity(f, n));
      const Polynomial mp = min_poly(a);
      CHECK(mp.is_monic());
      CHECK(mp.degree() <= static_cast<int>(n));
      CHECK(evaluate(mp, a).is_zero());
      CHECK(min_poly(p_inv * a * p) == mp);
    }
  }
}

TEST_CASE("min_poly divides an annihilating polynomial") {
  // (x-1)^2 (x-2) annihilates diag(1,1,2); the minimal polynomial is (x-1)(x-2).
  const Matrix a = Matrix::diagonal({r(1), r(1), r(2)});
  CHECK(min_poly(a) == Polynomial::from_roots(q(), {r(1), r(2)}));
}

TEST_CASE("matrix JSON round trip") {
  for (const Field f : sample_fields()) {
    Rng rng(3);
    const Matrix a = rng.matrix(f, 2, 3, 9);
    const json j = matrix_to_json(a);
    CHECK(matrix_from_json(j) == a);
    CHECK(matrix_to_json(matrix_from_json(json::parse(j.dump()))).dump() == j.dump());
  }
  const json bad = json::parse(R"({"field":"Q","rows":[[1,2]]})");
  CHECK(code_of([&] { (void)matrix_from_json(bad); }) == ErrorCode::BadFormat);
  const json ragged = json::parse(R"({"field":"Q","rows":[["1","2"],["3"]]})");
  CHECK(code_of([&] { (void)matrix_from_json(ragged); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("bounded sampling is reproducible") {
  Rng a(99), b(99);
  for (int i = 0; i < 50; ++i) CHECK(a.rational(10) == b.rational(10));
  Rng c(1);
  for (int i = 0; i < 200; ++i) {
    const Rational x = c.rational(10);
    CHECK(abs(x.get_num()) <= 10);
    CHECK(x.get_den() <= 10);
  }
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}
