#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dring/field.hpp"
#include "dring/polynomial.hpp"

namespace dring {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix; every entry lives in `field()`. Zero-sized
/// matrices are rejected at construction.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElement> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix scalar(const FieldElement& value, std::size_t n);
  static Matrix diagonal(const std::vector<FieldElement>& diag);
  /// Elementary matrix unit E_ij (zero-based indices).
  static Matrix unit(Field field, std::size_t n, std::size_t i, std::size_t j);
  static Matrix from_rows(Field field, const std::vector<std::vector<FieldElement>>& rows);
  /// Rows of integers or rational strings, for tests and presets.
  static Matrix from_ints(const std::vector<std::vector<long>>& rows, Field field = Field::rationals());

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const FieldElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  FieldElement& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const std::vector<FieldElement>& entries() const noexcept { return entries_; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const FieldElement& s) const;
  Vector operator*(const Vector& v) const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const;
  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  /// Square sub-block [r0, r0+n) x [c0, c0+n) generalised to any shape.
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  bool is_zero() const;
  /// Column-stacked entries, the "vec" of the matrix.
  Vector vectorize() const;

  std::string to_string() const;

 private:
  void require_same_field(const Matrix& o) const;

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

Matrix from_columns(Field field, const std::vector<Vector>& columns);

// Exact linear algebra. Square-only operations throw NonSquare.

FieldElement det(const Matrix& m);
FieldElement trace(const Matrix& m);
/// Throws Singular when det(m) = 0.
Matrix inverse(const Matrix& m);
bool is_scalar(const Matrix& m);
bool is_upper_triangular(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Basis of the right null space, one vector per free column of the reduced
/// row echelon form, with that free coordinate equal to one.
std::vector<Vector> kernel_basis(const Matrix& m);
/// Solves m x = b for square invertible m. Throws Singular otherwise.
Vector solve(const Matrix& m, const Vector& b);
/// Monic annihilating polynomial of least degree, from the first linear
/// dependence among vec(I), vec(m), vec(m^2), ...
Polynomial min_poly(const Matrix& m);
Matrix evaluate(const Polynomial& p, const Matrix& m);
Matrix power(const Matrix& m, unsigned k);

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;
};
/// Reduced row echelon form; the pivot in each column is the first nonzero
/// entry at or below the current row.
Echelon rref(const Matrix& m);

}  // namespace dring
