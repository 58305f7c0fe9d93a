#include "dring/decomp.hpp"

#include <algorithm>
#include <optional>
#include <span>

#include "dring/error.hpp"
#include "dring/ring.hpp"
#include "dring/words.hpp"

namespace dring {

namespace {

void require_square(const Matrix& c, const char* op) {
  if (!c.is_square()) fail(ErrorCode::NonSquare, std::string(op) + " needs a square matrix");
}

void require_char_exceeds(const Matrix& c, const char* op) {
  const std::uint64_t p = c.field().characteristic();
  if (p != 0 && p <= c.rows()) {
    fail(ErrorCode::CharTooSmall, std::string(op) + ": characteristic " + std::to_string(p) + " does not exceed size " +
                                      std::to_string(c.rows()));
  }
}

void require_trace_zero(const Matrix& c, const char* op) {
  require_square(c, op);
  if (!trace(c).is_zero()) fail(ErrorCode::BadTrace, std::string(op) + ": trace is " + trace(c).to_string() + ", not zero");
  require_char_exceeds(c, op);
}

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
  Vector v(n, f.zero());
  v[i] = f.one();
  return v;
}

/// e_i, then e_i + e_j, then e_i + 2 e_j, then e_i - e_j (i < j).
std::vector<Vector> candidate_vectors(Field f, std::size_t n) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(f, n, i));
  for (long scale : {1L, 2L, -1L}) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vector v = unit_vector(f, n, i);
        v[j] = f.from_int(scale);
        out.push_back(std::move(v));
      }
  }
  Vector all(n, f.one());
  out.push_back(std::move(all));
  return out;
}

bool independent(Field f, const std::vector<Vector>& vs) { return rank(from_columns(f, vs)) == vs.size(); }

/// Completes `start` (assumed independent) to a basis with standard vectors.
Matrix extend_to_basis(Field f, std::size_t n, std::vector<Vector> start) {
  for (std::size_t i = 0; i < n && start.size() < n; ++i) {
    start.push_back(unit_vector(f, n, i));
    if (!independent(f, start)) start.pop_back();
  }
  return from_columns(f, start);
}

Matrix block_diag_one(const Matrix& inner) {
  const std::size_t n = inner.rows() + 1;
  Matrix out(inner.field(), n, n);
  out(0, 0) = inner.field().one();
  for (std::size_t i = 0; i < inner.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) out(i + 1, j + 1) = inner(i, j);
  return out;
}

Matrix zero_diagonal_rec(const Matrix& m) {
  const Field f = m.field();
  const std::size_t k = m.rows();
  if (k == 1 || m.is_zero()) return Matrix::identity(f, k);
  // Nonzero trace-zero matrices are non-scalar here, so some candidate v has
  // v and Mv independent.
  for (const auto& v : candidate_vectors(f, k)) {
    const Vector mv = m * v;
    if (!independent(f, {v, mv})) continue;
    const Matrix q = extend_to_basis(f, k, {v, mv});
    const Matrix conj = inverse(q) * m * q;
    const Matrix inner = zero_diagonal_rec(conj.block(1, 1, k - 1, k - 1));
    return q * block_diag_one(inner);
  }
  fail(ErrorCode::BadStructure, "no cyclic vector pair found for a non-scalar matrix");
}

// ---------------------------------------------------------------------------
// Prescribed-eigenvalue factorization A = X Y with X block lower triangular
// carrying eigenvalues beta and Y block upper triangular carrying gamma, one
// eigenvalue pair peeled off per step.

struct Factorization {
  Matrix x;
  Matrix y;
};

std::optional<Factorization> prescribed_factor(const Matrix& a, std::span<const FieldElement> beta,
                                               std::span<const FieldElement> gamma) {
  const Field f = a.field();
  const std::size_t n = a.rows();
  if (n == 1) {
    if (a(0, 0) != beta[0] * gamma[0]) return std::nullopt;
    return Factorization{Matrix::scalar(beta[0], 1), Matrix::scalar(gamma[0], 1)};
  }
  if (is_scalar(a)) return std::nullopt;
  const FieldElement delta = beta[0] * gamma[0];
  for (const auto& v : candidate_vectors(f, n)) {
    const Vector av = a * v;
    if (!independent(f, {v, av})) continue;
    Vector w = av;
    for (std::size_t i = 0; i < n; ++i) w[i] -= delta * v[i];
    const Matrix q = extend_to_basis(f, n, {v, w});
    const Matrix q_inv = inverse(q);
    // In this basis the first column is (delta, 1, 0, ..., 0).
    const Matrix conj = q_inv * a * q;
    const Matrix top = conj.block(0, 1, 1, n - 1);
    const Matrix left = conj.block(1, 0, n - 1, 1);
    const Matrix x_col = left * gamma[0].inverse();
    const Matrix y_row = top * beta[0].inverse();
    const Matrix schur = conj.block(1, 1, n - 1, n - 1) - x_col * y_row;
    if (n - 1 >= 2 && is_scalar(schur)) continue;
    auto sub = prescribed_factor(schur, beta.subspan(1), gamma.subspan(1));
    if (!sub) continue;
    Matrix xp(f, n, n), yp(f, n, n);
    xp(0, 0) = beta[0];
    yp(0, 0) = gamma[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      xp(i + 1, 0) = x_col(i, 0);
      yp(0, i + 1) = y_row(0, i);
      for (std::size_t j = 0; j + 1 < n; ++j) {
        xp(i + 1, j + 1) = sub->x(i, j);
        yp(i + 1, j + 1) = sub->y(i, j);
      }
    }
    return Factorization{q * xp * q_inv, q * yp * q_inv};
  }
  return std::nullopt;
}

/// Over Q, rescales to a primitive integer vector; keeps heights down in the
/// recursion. Other fields are returned unchanged.
Vector primitive(Vector v) {
  if (v.empty() || v.front().field() != Field::rationals()) return v;
  Integer den = 1, num = 0;
  for (const auto& x : v) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.rational().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.rational().get_num_mpz_t());
  }
  if (num == 0) return v;
  Rational q(den, num);
  q.canonicalize();
  const FieldElement scale = Field::rationals().from_rational(q);
  for (auto& x : v) x *= scale;
  return v;
}

/// Columns are eigenvectors for the given distinct eigenvalues, in order.
std::optional<Matrix> eigenbasis(const Matrix& m, const std::vector<FieldElement>& eigenvalues) {
  std::vector<Vector> cols;
  for (const auto& lambda : eigenvalues) {
    const auto ker = kernel_basis(m - Matrix::scalar(lambda, m.rows()));
    if (ker.size() != 1) return std::nullopt;
    cols.push_back(primitive(ker.front()));
  }
  return from_columns(m.field(), cols);
}

/// b_i = i + 1 for i < m, and the last entry makes the product one.
std::vector<FieldElement> default_eigenvalues(Field f, std::size_t m) {
  std::vector<FieldElement> b;
  FieldElement prod = f.one();
  for (std::size_t i = 1; i < m; ++i) {
    b.push_back(f.from_int(static_cast<long>(i + 1)));
    prod *= b.back();
  }
  b.push_back(prod.inverse());
  return b;
}

bool all_distinct(const std::vector<FieldElement>& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (b[i] == b[j]) return false;
  return true;
}

std::optional<std::vector<FieldElement>> random_eigenvalues(Field f, std::size_t m, Rng& rng) {
  std::vector<FieldElement> b;
  FieldElement prod = f.one();
  for (std::size_t i = 1; i < m; ++i) {
    b.push_back(rng.nonzero_rational_element(f, 6));
    prod *= b.back();
  }
  b.push_back(prod.inverse());
  if (!all_distinct(b)) return std::nullopt;
  return b;
}

std::optional<CommutatorPair> commutator_from_eigenvalues(const Matrix& c, const std::vector<FieldElement>& b) {
  const std::size_t m = c.rows();
  std::vector<FieldElement> b_inv;
  for (const auto& x : b) b_inv.push_back(x.inverse());
  // Pair beta_i with gamma_{i+shift}; any pairing keeps the determinant
  // condition and the two eigenvalue sets.
  for (std::size_t shift = 0; shift < m; ++shift) {
    std::vector<FieldElement> gamma;
    for (std::size_t i = 0; i < m; ++i) gamma.push_back(b_inv[(i + shift) % m]);
    auto fac = prescribed_factor(c, b, gamma);
    if (!fac) continue;
    // X = S D S^-1 and Y = R D^-1 R^-1 give C = X Y = (X, R S^-1).
    auto s = eigenbasis(fac->x, b);
    auto r = eigenbasis(fac->y, b_inv);
    if (!s || !r) continue;
    const FieldElement det_s = det(*s), det_r = det(*r);
    if (det_s.is_zero() || det_r.is_zero()) continue;
    // Rescaling one eigenvector makes det(R S^-1) = 1.
    const FieldElement scale = det_s / det_r;
    for (std::size_t i = 0; i < m; ++i) (*r)(i, 0) *= scale;
    CommutatorPair pair{fac->x, *r * inverse(*s)};
    if (is_scalar(pair.a) || is_scalar(pair.b)) continue;
    // A B A^-1 B^-1 = C  iff  A B = C B A; the latter needs no inverses.
    if (pair.a * pair.b != c * pair.b * pair.a) continue;
    return pair;
  }
  return std::nullopt;
}

std::string entries_of(const std::vector<FieldElement>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s;
}

}  // namespace

Matrix special_matrix_T(std::size_t m, TKind kind) {
  if (m < 1) fail(ErrorCode::BadParams, "special_matrix_T needs m >= 1");
  const Field q = Field::rationals();
  Matrix t(q, m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (kind == TKind::unipotent) t(i, i) = q.one();
    if (i + 1 < m) t(i, i + 1) = q.one();
  }
  return t;
}

Matrix zero_diagonal_similarity(const Matrix& c) {
  require_trace_zero(c, "zero_diagonal_similarity");
  return zero_diagonal_rec(c);
}

CommutatorPair additive_commutator_decomp(const Matrix& c) {
  require_trace_zero(c, "additive_commutator_decomp");
  const Field f = c.field();
  const std::size_t m = c.rows();
  if (c.is_zero()) return {Matrix(f, m, m), Matrix(f, m, m)};
  const Matrix p = zero_diagonal_rec(c);
  const Matrix p_inv = inverse(p);
  const Matrix zd = p_inv * c * p;
  // zd = D B' - B' D with D = diag(1..m) and B'_ij = zd_ij / (i - j).
  std::vector<FieldElement> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(f.from_int(static_cast<long>(i + 1)));
  Matrix bp(f, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) bp(i, j) = zd(i, j) / (d[i] - d[j]);
  Matrix a = p * Matrix::diagonal(d) * p_inv;
  Matrix b = p * bp * p_inv;
  // Subtracting scalars leaves the commutator unchanged.
  const FieldElement inv_m = f.from_int(static_cast<long>(m)).inverse();
  a = a - Matrix::scalar(trace(a) * inv_m, m);
  b = b - Matrix::scalar(trace(b) * inv_m, m);
  if (a * b - b * a != c) fail(ErrorCode::VerificationFailed, "additive commutator replay mismatch");
  return {std::move(a), std::move(b)};
}

CommutatorPair multiplicative_commutator_decomp(const Matrix& c, std::uint64_t seed) {
  require_square(c, "multiplicative_commutator_decomp");
  if (!c.field().is_infinite()) fail(ErrorCode::SmallField, "multiplicative decomposition needs an infinite field");
  if (is_scalar(c)) fail(ErrorCode::ScalarInput, "a scalar matrix is not a non-scalar commutator target");
  const FieldElement d = det(c);
  if (!d.is_one()) fail(ErrorCode::BadDeterminant, "determinant is " + d.to_string() + ", not 1");
  const std::size_t m = c.rows();
  for (std::size_t attempt = 0; attempt < kEigenvalueRetries; ++attempt) {
    std::optional<std::vector<FieldElement>> b;
    if (attempt == 0) {
      b = default_eigenvalues(c.field(), m);
    } else {
      Rng rng(derive_seed(seed, attempt));
      b = random_eigenvalues(c.field(), m, rng);
    }
    if (!b) continue;
    if (auto pair = commutator_from_eigenvalues(c, *b)) return std::move(*pair);
  }
  fail(ErrorCode::DegenerateChoiceExhausted, "no eigenvalue tuple produced a commutator factorization; last default tuple " +
                                                 entries_of(default_eigenvalues(c.field(), m)));
}

// ---------------------------------------------------------------------------

MultDecomposition MultDecomposition::certify(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed) {
  bool ok = false;
  try {
    const MatrixRing ring(target.field(), target.rows());
    const bool factors_ok = std::all_of(factors.begin(), factors.end(), [&](const Matrix& a) {
      return ring.belongs(a) && !is_scalar(a) && !det(a).is_zero();
    });
    ok = factors_ok && u_eval(ring, WordDepth(depth), std::span<const Matrix>(factors)) == target;
  } catch (const Error&) {
    ok = false;
  }
  return MultDecomposition(std::move(target), depth, std::move(factors), seed, ok);
}

std::vector<FieldElement> MultDecomposition::factor_determinants() const {
  std::vector<FieldElement> out;
  for (const auto& a : factors_) out.push_back(det(a));
  return out;
}

AddDecomposition AddDecomposition::certify(Matrix target, std::size_t depth, std::vector<Matrix> factors, std::uint64_t seed) {
  bool ok = false;
  try {
    const MatrixRing ring(target.field(), target.rows());
    const bool factors_ok = std::all_of(factors.begin(), factors.end(),
                                        [&](const Matrix& a) { return ring.belongs(a) && trace(a).is_zero(); });
    ok = factors_ok && v_eval(ring, WordDepth(depth), std::span<const Matrix>(factors)) == target;
  } catch (const Error&) {
    ok = false;
  }
  return AddDecomposition(std::move(target), depth, std::move(factors), seed, ok);
}

std::vector<FieldElement> AddDecomposition::factor_traces() const {
  std::vector<FieldElement> out;
  for (const auto& a : factors_) out.push_back(trace(a));
  return out;
}

namespace {

void mult_rec(const Matrix& c, std::size_t n, std::uint64_t seed, std::vector<Matrix>& out) {
  CommutatorPair pair = multiplicative_commutator_decomp(c, seed);
  if (n == 1) {
    out.push_back(std::move(pair.a));
    out.push_back(std::move(pair.b));
    return;
  }
  mult_rec(pair.a, n - 1, derive_seed(seed, 1), out);
  mult_rec(pair.b, n - 1, derive_seed(seed, 2), out);
}

void add_rec(const Matrix& c, std::size_t n, std::vector<Matrix>& out) {
  CommutatorPair pair = additive_commutator_decomp(c);
  if (n == 1) {
    out.push_back(std::move(pair.a));
    out.push_back(std::move(pair.b));
    return;
  }
  add_rec(pair.a, n - 1, out);
  add_rec(pair.b, n - 1, out);
}

void require_depth(std::size_t n) {
  if (n < 1) fail(ErrorCode::BadParams, "decomposition depth must be at least 1");
  if (n > kDefaultWordCap) fail(ErrorCode::DepthArityCap, "decomposition depth " + std::to_string(n) + " exceeds cap");
}

}  // namespace

MultDecomposition iterated_mult_decomp(const Matrix& c, std::size_t n, std::uint64_t seed) {
  require_depth(n);
  std::vector<Matrix> factors;
  mult_rec(c, n, seed, factors);
  auto result = MultDecomposition::certify(c, n, std::move(factors), seed);
  if (!result.verified()) fail(ErrorCode::VerificationFailed, "u-word replay does not reproduce the target");
  return result;
}

AddDecomposition iterated_add_decomp(const Matrix& c, std::size_t n, std::uint64_t seed) {
  require_depth(n);
  require_trace_zero(c, "iterated_add_decomp");
  std::vector<Matrix> factors;
  add_rec(c, n, factors);
  auto result = AddDecomposition::certify(c, n, std::move(factors), seed);
  if (!result.verified()) fail(ErrorCode::VerificationFailed, "v-word replay does not reproduce the target");
  return result;
}

Matrix random_sl_nonscalar(Rng& rng, Field field, std::size_t m, std::int64_t height) {
  if (m < 2) fail(ErrorCode::BadParams, "non-scalar SL samples need m >= 2");
  for (;;) {
    Matrix acc = Matrix::identity(field, m);
    for (std::size_t step = 0; step < 2 * m; ++step) {
      const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m) - 1));
      auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(m) - 2));
      if (j >= i) ++j;
      Matrix e = Matrix::identity(field, m);
      e(i, j) = rng.nonzero_rational_element(field, height);
      acc = acc * e;
    }
    if (!is_scalar(acc)) return acc;
  }
}

Matrix random_trace_zero(Rng& rng, Field field, std::size_t m, std::int64_t height) {
  Matrix a = rng.matrix(field, m, m, height);
  return a - Matrix::scalar(trace(a) * field.from_int(static_cast<long>(m)).inverse(), m);
}

}  // namespace dring
