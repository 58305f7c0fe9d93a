#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dring/words.hpp"

using namespace dring;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadFormat;
}

Field q() { return Field::rationals(); }
FieldElement r(long n, long d = 1) { return q().from_rational(Rational(n, d)); }

AlgebraElement named(const AlgebraPtr& alg, const std::string& name) {
  const auto& names = alg->basis_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return AlgebraElement::basis(alg, i);
  FAIL("no basis element " << name);
  return AlgebraElement::zero(alg);
}

int inversion_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// g_n by the definition: fresh powers per term, parity by inversion count.
Matrix naive_gn(const Matrix& a, const std::vector<Matrix>& rs) {
  std::vector<std::size_t> perm(rs.size() + 1);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix sum(a.field(), a.rows(), a.cols());
  do {
    Matrix term = power(a, perm[0]);
    for (std::size_t i = 0; i < rs.size(); ++i) term = term * rs[i] * power(a, perm[i + 1]);
    sum = inversion_sign(perm) > 0 ? sum + term : sum - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Matrix random_upper(Rng& rng, std::size_t m, bool invertible) {
  Matrix x(q(), m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      x(i, j) = rng.element(q(), 6);
      if (i == j && invertible)
        while (x(i, i).is_zero()) x(i, i) = rng.element(q(), 6);
    }
  return x;
}

}  // namespace

TEST_CASE("incremental permutation sign matches inversion parity") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int sign = 1;
    std::size_t count = 1;
    do {
      CHECK(sign == inversion_sign(perm));
    } while (next_permutation_signed(perm, sign) && ++count);
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    CHECK(count == fact);
  }
}

TEST_CASE("g_1 examples") {
  const MatrixRing m2(q(), 2);
  const std::vector<Matrix> rs{Matrix::unit(q(), 2, 1, 0)};
  CHECK(gn_eval(m2, m2.one(), std::span<const Matrix>(rs)).is_zero());
  const Matrix e12 = Matrix::unit(q(), 2, 0, 1), e21 = Matrix::unit(q(), 2, 1, 0);
  // Sum of the two permutation terms: r a - a r.
  const Matrix expected = e21 * e12 - e12 * e21;
  CHECK(expected == Matrix::diagonal({r(-1), r(1)}));
  CHECK(gn_eval(m2, e12, std::span<const Matrix>(rs)) == expected);
}

TEST_CASE("g_2 vanishes on a matrix of degree two") {
  const MatrixRing m2(q(), 2);
  const Matrix a = Matrix::diagonal({r(1), r(2)});
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Matrix> rs{m2.sample(rng, 10), m2.sample(rng, 10)};
    CHECK(gn_eval(m2, a, std::span<const Matrix>(rs)).is_zero());
  }
}

TEST_CASE("g_n agrees with the definition") {
  Rng rng(2);
  for (std::size_t m = 2; m <= 3; ++m) {
    const MatrixRing ring(q(), m);
    for (std::size_t n = 1; n <= 3; ++n) {
      const Matrix a = ring.sample(rng, 4);
      std::vector<Matrix> rs;
      for (std::size_t i = 0; i < n; ++i) rs.push_back(ring.sample(rng, 4));
      CHECK(gn_eval(ring, a, std::span<const Matrix>(rs)) == naive_gn(a, rs));
    }
  }
}

TEST_CASE("g_n is additive in each slot") {
  Rng rng(3);
  const MatrixRing ring(q(), 3);
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix a = ring.sample(rng, 5);
    std::vector<Matrix> rs{ring.sample(rng, 5), ring.sample(rng, 5)};
    const Matrix extra = ring.sample(rng, 5);
    for (std::size_t slot = 0; slot < rs.size(); ++slot) {
      std::vector<Matrix> alt = rs, sum = rs;
      alt[slot] = extra;
      sum[slot] = rs[slot] + extra;
      CHECK(gn_eval(ring, a, std::span<const Matrix>(sum)) ==
            gn_eval(ring, a, std::span<const Matrix>(rs)) + gn_eval(ring, a, std::span<const Matrix>(alt)));
    }
  }
}

TEST_CASE("g_n vanishes whenever the minimal polynomial degree is at most n") {
  Rng rng(4);
  for (std::size_t m = 2; m <= 3; ++m) {
    const MatrixRing ring(q(), m);
    for (int trial = 0; trial < 6; ++trial) {
      // Low-degree elements: polynomials in a diagonalizable matrix with repeated eigenvalues.
      Matrix a = ring.sample(rng, 4);
      const std::size_t d = static_cast<std::size_t>(min_poly(a).degree());
      std::vector<Matrix> rs;
      for (std::size_t i = 0; i < d; ++i) rs.push_back(ring.sample(rng, 5));
      CHECK(gn_eval(ring, a, std::span<const Matrix>(rs)).is_zero());
    }
  }
  const AlgebraRing h(quaternion_algebra(Rational(-1), Rational(-1)));
  Rng rng2(5);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = h.sample(rng2, 5);
    const std::vector<AlgebraElement> rs{h.sample(rng2, 5), h.sample(rng2, 5)};
    CHECK(gn_eval(h, a, std::span<const AlgebraElement>(rs)).is_zero());
  }
}

TEST_CASE("g_n errors") {
  const MatrixRing m2(q(), 2);
  const std::vector<Matrix> eight(8, m2.one());
  CHECK(code_of([&] { (void)gn_eval(m2, m2.one(), std::span<const Matrix>(eight)); }) == ErrorCode::DepthCap);
  CHECK(code_of([&] { (void)gn_eval(m2, m2.one(), std::span<const Matrix>(eight.data(), 0)); }) == ErrorCode::BadParams);
  const std::vector<Matrix> wrong{Matrix::identity(q(), 3)};
  CHECK(code_of([&] { (void)gn_eval(m2, m2.one(), std::span<const Matrix>(wrong)); }) == ErrorCode::ContextMismatch);
}

TEST_CASE("u_1 examples") {
  const auto h = quaternion_algebra(Rational(-1), Rational(-1));
  const AlgebraRing ring(h);
  const auto one = ring.one(), i = named(h, "i"), j = named(h, "j");
  const std::vector<AlgebraElement> xs{i, one + j};
  // i (1+j) i^-1 (1+j)^-1 with i^-1 = -i and (1+j)^-1 = (1-j)/2.
  const auto oracle = i * (one + j) * (-i) * ((one - j) * FieldElement(r(1, 2)));
  CHECK(oracle == -j);
  CHECK(u_eval(ring, WordDepth(1), std::span<const AlgebraElement>(xs)) == -j);
  const std::vector<AlgebraElement> same{i + j, i + j};
  CHECK(u_eval(ring, WordDepth(1), std::span<const AlgebraElement>(same)) == one);
}

TEST_CASE("u_2 of four equal inputs is the unit") {
  const MatrixRing m3(q(), 3);
  const Matrix a = Matrix::from_ints({{2, 1, 0}, {0, 1, 3}, {1, 0, 1}});
  const std::vector<Matrix> xs(4, a);
  CHECK(u_eval(m3, WordDepth(2), std::span<const Matrix>(xs)) == m3.one());
}

TEST_CASE("u_n errors name the failing element") {
  const MatrixRing m2(q(), 2);
  const std::vector<Matrix> xs{m2.one(), Matrix::unit(q(), 2, 0, 1)};
  try {
    (void)u_eval(m2, WordDepth(1), std::span<const Matrix>(xs));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
    CHECK(std::string(e.what()).find("input a2") != std::string::npos);
  }
  const std::vector<Matrix> three(3, m2.one());
  CHECK(code_of([&] { (void)u_eval(m2, WordDepth(1), std::span<const Matrix>(three)); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([] { (void)WordDepth(0); }) == ErrorCode::BadParams);
  CHECK(code_of([] { (void)WordDepth(11); }) == ErrorCode::DepthCap);
  CHECK(WordDepth(11, 12).arity() == 2048);
}

TEST_CASE("v_n examples") {
  const auto h = quaternion_algebra(Rational(-1), Rational(-1));
  const AlgebraRing ring(h);
  const std::vector<AlgebraElement> ij{named(h, "i"), named(h, "j")};
  CHECK(v_eval(ring, WordDepth(1), std::span<const AlgebraElement>(ij)) == named(h, "k") * FieldElement(r(2)));
  const std::vector<AlgebraElement> same{named(h, "i"), named(h, "i")};
  CHECK(v_eval(ring, WordDepth(1), std::span<const AlgebraElement>(same)).is_zero());

  const MatrixRing m3(q(), 3);
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Matrix> xs;
    for (int k = 0; k < 4; ++k) xs.push_back(random_upper(rng, 3, false));
    const Matrix v = v_eval(m3, WordDepth(2), std::span<const Matrix>(xs));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (!(i == 0 && j == 2)) CHECK(v(i, j).is_zero());
  }
}

TEST_CASE("v_2 on upper-triangular 3x3 matches nested brackets") {
  Rng rng(7);
  const MatrixRing m3(q(), 3);
  std::vector<Matrix> xs;
  for (int k = 0; k < 4; ++k) xs.push_back(random_upper(rng, 3, false));
  auto br = [](const Matrix& x, const Matrix& y) { return x * y - y * x; };
  CHECK(v_eval(m3, WordDepth(2), std::span<const Matrix>(xs)) == br(br(xs[0], xs[1]), br(xs[2], xs[3])));
}

TEST_CASE("solvable vanishing for invertible upper-triangular inputs") {
  Rng rng(8);
  for (std::size_t m = 2; m <= 4; ++m) {
    const MatrixRing ring(q(), m);
    std::size_t n = 1;
    while ((std::size_t{1} << (n - 1)) < m) ++n;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Matrix> xs;
      for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) xs.push_back(random_upper(rng, m, true));
      const Matrix u = u_eval(ring, WordDepth(n), std::span<const Matrix>(xs));
      CHECK(u == ring.one());
    }
  }
}

TEST_CASE("nilpotent vanishing for upper-triangular inputs") {
  Rng rng(9);
  for (std::size_t m = 2; m <= 4; ++m) {
    const MatrixRing ring(q(), m);
    std::size_t n = 1;
    while ((std::size_t{1} << (n - 1)) < m) ++n;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Matrix> xs;
      for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) xs.push_back(random_upper(rng, m, false));
      CHECK(v_eval(ring, WordDepth(n), std::span<const Matrix>(xs)).is_zero());
    }
  }
}

TEST_CASE("u_n lands in determinant one") {
  Rng rng(10);
  for (std::size_t m = 2; m <= 3; ++m) {
    const MatrixRing ring(q(), m);
    for (std::size_t n = 1; n <= 2; ++n) {
      std::vector<Matrix> xs;
      while (xs.size() < (std::size_t{1} << n)) {
        Matrix x = ring.sample(rng, 5);
        if (!det(x).is_zero()) xs.push_back(x);
      }
      CHECK(det(u_eval(ring, WordDepth(n), std::span<const Matrix>(xs))) == r(1));
    }
  }
}

TEST_CASE("degree probe examples") {
  const MatrixRing m3(q(), 3);
  auto rep = algebraic_degree_probe(m3, m3.one(), 10, 1);
  CHECK(rep.probe_degree == std::optional<std::size_t>(1));
  CHECK(rep.exact_degree == 1);
  CHECK(rep.agree);
  rep = algebraic_degree_probe(m3, Matrix::diagonal({r(1), r(2), r(4)}), 10, 1);
  CHECK(rep.probe_degree == std::optional<std::size_t>(3));
  CHECK(rep.exact_degree == 3);
  const auto h = quaternion_algebra(Rational(-1), Rational(-1));
  const AlgebraRing hr(h);
  const auto qrep = algebraic_degree_probe(hr, named(h, "j"), 10, 1);
  CHECK(qrep.probe_degree == std::optional<std::size_t>(2));
  CHECK(qrep.exact_degree == 2);
  CHECK(qrep.retried_levels.empty());
}

TEST_CASE("degree probe agrees with the exact degree on random elements") {
  Rng rng(11);
  for (std::size_t m = 2; m <= 3; ++m) {
    const MatrixRing ring(q(), m);
    for (int trial = 0; trial < 4; ++trial) {
      const auto rep = algebraic_degree_probe(ring, ring.sample(rng, 5), 4, derive_seed(11, trial));
      CHECK(rep.agree);
    }
  }
}
