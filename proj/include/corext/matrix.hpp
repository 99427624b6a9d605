#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "corext/scalar.hpp"

namespace corext {

using Vec = std::vector<Scalar>;

Vec zero_vec(size_t n, Field f);
Vec unit_vec(size_t n, size_t i, Field f);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& v);
// y += s * x
void axpy(Vec& y, const Scalar& s, const Vec& x);
Vec concat(const Vec& a, const Vec& b);
// Outer product flattened row-major: index i * b.size() + j.
Vec kron(const Vec& a, const Vec& b);
std::string to_string(const Vec& v);

// Dense row-major matrix carrying its field, so that zero-sized matrices
// still know where they live.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, Field f);

  static Matrix identity(size_t n, Field f);
  static Matrix from_columns(size_t rows, const std::vector<Vec>& cols, Field f);
  static Matrix from_rows(size_t cols, const std::vector<Vec>& rows, Field f);
  // Inverse of flatten().
  static Matrix unflatten(const Vec& v, size_t rows, size_t cols, Field f);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Field field() const { return field_; }

  Scalar& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  Vec column(size_t c) const;
  Vec row(size_t r) const;
  void set_column(size_t c, const Vec& v);
  Vec flatten() const { return data_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix& operator+=(const Matrix& o);

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  std::string to_string() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  Field field_;
  std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& ms, size_t rows, Field f);
Matrix vstack(const std::vector<Matrix>& ms, size_t cols, Field f);
// Block diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);
// Σ coeffs[i] * ms[i], each rows × cols.
Matrix linear_combination(const std::vector<Matrix>& ms, const Vec& coeffs, size_t rows, size_t cols, Field f);

}  // namespace corext
