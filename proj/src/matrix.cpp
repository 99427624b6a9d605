#include "corext/matrix.hpp"

#include "corext/errors.hpp"

namespace corext {

Vec zero_vec(size_t n, Field f) { return Vec(n, f.zero()); }

Vec unit_vec(size_t n, size_t i, Field f) {
  Vec v = zero_vec(n, f);
  v.at(i) = f.one();
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] += b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw UsageError("vector length mismatch");
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero()) r[i] -= b[i];
  return r;
}

Vec scale(const Scalar& s, const Vec& v) {
  Vec r(v);
  for (auto& x : r) x = s * x;
  return r;
}

void axpy(Vec& y, const Scalar& s, const Vec& x) {
  if (y.size() != x.size()) throw UsageError("vector length mismatch");
  if (s.is_zero()) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += s * x[i];
}

Vec concat(const Vec& a, const Vec& b) {
  Vec r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec r;
  r.reserve(a.size() * b.size());
  Scalar z = a.empty() ? Scalar() : a[0] * Scalar(0);
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(x.is_zero() || y.is_zero() ? z : x * y);
  return r;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

Matrix::Matrix(size_t rows, size_t cols, Field f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(size_t n, Field f) {
  Matrix m(n, n, f);
  for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_columns(size_t rows, const std::vector<Vec>& cols, Field f) {
  Matrix m(rows, cols.size(), f);
  for (size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Matrix Matrix::from_rows(size_t cols, const std::vector<Vec>& rows, Field f) {
  Matrix m(rows.size(), cols, f);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("row length mismatch");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::unflatten(const Vec& v, size_t rows, size_t cols, Field f) {
  if (v.size() != rows * cols) throw UsageError("unflatten: length mismatch");
  Matrix m(rows, cols, f);
  m.data_ = v;
  return m;
}

Vec Matrix::column(size_t c) const {
  Vec v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Matrix::row(size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_column(size_t c, const Vec& v) {
  if (v.size() != rows_) throw UsageError("column length mismatch");
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, field_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw UsageError("matrix product: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " times " +
                     std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Matrix p(rows_, o.cols_, field_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) p(i, j) += a * b;
      }
    }
  return p;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw UsageError("matrix-vector product: length mismatch");
  Vec r = zero_vec(rows_, field_);
  for (size_t k = 0; k < cols_; ++k) {
    if (v[k].is_zero()) continue;
    for (size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, k);
      if (!a.is_zero()) r[i] += a * v[k];
    }
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r(*this);
  r += o;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix sum: shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(*this);
  for (auto& x : r.data_)
    if (!x.is_zero()) x = s * x;
  return r;
}

bool Matrix::is_zero() const { return corext::is_zero(data_); }

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != Scalar(r == c ? 1 : 0)) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("block out of range");
  Matrix b(nr, nc, field_);
  for (size_t r = 0; r < nr; ++r)
    for (size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

std::string Matrix::to_string() const {
  std::string s = "[";
  for (size_t r = 0; r < rows_; ++r) {
    s += r ? "; " : "";
    for (size_t c = 0; c < cols_; ++c) s += (c ? " " : "") + (*this)(r, c).to_string();
  }
  return s + "]";
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (size_t p = 0; p < b.rows(); ++p)
        for (size_t q = 0; q < b.cols(); ++q)
          if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
    }
  return k;
}

Matrix hstack(const std::vector<Matrix>& ms, size_t rows, Field f) {
  size_t cols = 0;
  for (const auto& m : ms) {
    if (m.rows() != rows) throw UsageError("hstack: row count mismatch");
    cols += m.cols();
  }
  Matrix r(rows, cols, f);
  size_t off = 0;
  for (const auto& m : ms) {
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < m.cols(); ++j) r(i, off + j) = m(i, j);
    off += m.cols();
  }
  return r;
}

Matrix vstack(const std::vector<Matrix>& ms, size_t cols, Field f) {
  size_t rows = 0;
  for (const auto& m : ms) {
    if (m.cols() != cols) throw UsageError("vstack: column count mismatch");
    rows += m.rows();
  }
  Matrix r(rows, cols, f);
  size_t off = 0;
  for (const auto& m : ms) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < cols; ++j) r(off + i, j) = m(i, j);
    off += m.rows();
  }
  return r;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Matrix linear_combination(const std::vector<Matrix>& ms, const Vec& coeffs, size_t rows, size_t cols, Field f) {
  if (ms.size() != coeffs.size()) throw UsageError("linear_combination: length mismatch");
  Matrix r(rows, cols, f);
  for (size_t i = 0; i < ms.size(); ++i)
    if (!coeffs[i].is_zero()) r += ms[i].scaled(coeffs[i]);
  return r;
}

}  // namespace corext
