#include "dring/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "dring/error.hpp"

namespace dring {

namespace {

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square()) {
    fail(ErrorCode::NonSquare, std::string(op) + " on a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
  }
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {
  if (rows == 0 || cols == 0) fail(ErrorCode::DimensionMismatch, "zero-sized matrices are not allowed");
}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) fail(ErrorCode::DimensionMismatch, "zero-sized matrices are not allowed");
  if (entries_.size() != rows * cols) fail(ErrorCode::DimensionMismatch, "entry count does not match shape");
  for (const auto& e : entries_) {
    if (e.field() != field_) fail(ErrorCode::FieldMismatch, "matrix entry over " + e.field().key() + " in " + field_.key());
  }
}

Matrix Matrix::identity(Field field, std::size_t n) { return scalar(field.one(), n); }

Matrix Matrix::scalar(const FieldElement& value, std::size_t n) {
  Matrix m(value.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

Matrix Matrix::diagonal(const std::vector<FieldElement>& diag) {
  if (diag.empty()) fail(ErrorCode::DimensionMismatch, "empty diagonal");
  Matrix m(diag[0].field(), diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i].field() != m.field()) fail(ErrorCode::FieldMismatch, "diagonal entries over different fields");
    m(i, i) = diag[i];
  }
  return m;
}

Matrix Matrix::unit(Field field, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(field, n, n);
  m(i, j) = field.one();
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<std::vector<FieldElement>>& rows) {
  if (rows.empty() || rows[0].empty()) fail(ErrorCode::DimensionMismatch, "zero-sized matrices are not allowed");
  std::vector<FieldElement> entries;
  entries.reserve(rows.size() * rows[0].size());
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) fail(ErrorCode::DimensionMismatch, "ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(field, rows.size(), rows[0].size(), std::move(entries));
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows, Field field) {
  std::vector<std::vector<FieldElement>> conv;
  for (const auto& r : rows) {
    std::vector<FieldElement> row;
    for (long v : r) row.push_back(field.from_int(v));
    conv.push_back(std::move(row));
  }
  return from_rows(field, conv);
}

void Matrix::require_same_field(const Matrix& o) const {
  if (field_ != o.field_) fail(ErrorCode::FieldMismatch, field_.key() + " vs " + o.field_.key());
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix sum");
  Matrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += o.entries_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_field(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix difference");
  Matrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= o.entries_[i];
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(o);
  if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const FieldElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const FieldElement& b = o(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator*(const FieldElement& s) const {
  Matrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector out(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  Matrix out(field_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const FieldElement& e) { return e.is_zero(); });
}

Vector Matrix::vectorize() const {
  Vector v;
  v.reserve(entries_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix from_columns(Field field, const std::vector<Vector>& columns) {
  if (columns.empty() || columns[0].empty()) fail(ErrorCode::DimensionMismatch, "zero-sized matrices are not allowed");
  Matrix m(field, columns[0].size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) fail(ErrorCode::DimensionMismatch, "ragged columns");
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

// ---------------------------------------------------------------------------

Echelon rref(const Matrix& input) {
  Matrix m = input;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const FieldElement inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const FieldElement factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

FieldElement det(const Matrix& input) {
  require_square(input, "det");
  Matrix m = input;
  const std::size_t n = m.rows();
  FieldElement result = m.field().one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return m.field().zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      result = -result;
    }
    result *= m(col, col);
    const FieldElement inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const FieldElement factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return result;
}

FieldElement trace(const Matrix& m) {
  require_square(m, "trace");
  FieldElement t = m.field().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  Echelon e = rref(aug);
  if (e.pivot_columns.size() < n || e.pivot_columns[n - 1] != n - 1) fail(ErrorCode::Singular, "matrix is singular");
  return e.reduced.block(0, n, n, n);
}

bool is_scalar(const Matrix& m) {
  require_square(m, "is_scalar");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j ? m(i, j) != m(0, 0) : !m(i, j).is_zero()) return false;
    }
  return true;
}

bool is_upper_triangular(const Matrix& m) {
  require_square(m, "is_upper_triangular");
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

std::size_t rank(const Matrix& m) { return rref(m).pivot_columns.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), m.field().zero());
    v[free] = m.field().one();
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Vector solve(const Matrix& m, const Vector& b) {
  require_square(m, "solve");
  const std::size_t n = m.rows();
  if (b.size() != n) fail(ErrorCode::DimensionMismatch, "right-hand side length");
  Matrix aug(m.field(), n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  Echelon e = rref(aug);
  if (e.pivot_columns.size() < n || e.pivot_columns[n - 1] != n - 1) fail(ErrorCode::Singular, "matrix is singular");
  return e.reduced.column(n);
}

Polynomial min_poly(const Matrix& m) {
  require_square(m, "min_poly");
  const Field f = m.field();
  std::vector<Vector> powers{Matrix::identity(f, m.rows()).vectorize()};
  Matrix current = Matrix::identity(f, m.rows());
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    current = current * m;
    powers.push_back(current.vectorize());
    // The first k powers are independent, so a dependence is one-dimensional
    // and its last coordinate is nonzero.
    const auto kernel = kernel_basis(from_columns(f, powers));
    if (!kernel.empty()) {
      const Vector& v = kernel.front();
      const FieldElement lead_inv = v.back().inverse();
      std::vector<FieldElement> coeffs;
      for (const auto& c : v) coeffs.push_back(c * lead_inv);
      return Polynomial(f, std::move(coeffs));
    }
  }
  fail(ErrorCode::BadStructure, "no dependence among powers; Cayley-Hamilton violated");
}

Matrix power(const Matrix& m, unsigned k) {
  require_square(m, "power");
  Matrix result = Matrix::identity(m.field(), m.rows());
  Matrix base = m;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Matrix evaluate(const Polynomial& p, const Matrix& m) {
  require_square(m, "evaluate");
  Matrix acc(m.field(), m.rows(), m.cols());
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * m + Matrix::scalar(c[k], m.rows());
  return acc;
}

}  // namespace dring
