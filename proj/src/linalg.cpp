#include "corext/linalg.hpp"

#include "corext/errors.hpp"

namespace corext {

Echelon row_echelon(Matrix a) {
  const size_t m = a.rows(), n = a.cols();
  std::vector<size_t> pivots;
  std::vector<size_t> nz;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t p = r;
    while (p < m && a(p, c).is_zero()) ++p;
    if (p == m) continue;
    if (p != r)
      for (size_t j = c; j < n; ++j) std::swap(a(p, j), a(r, j));
    Scalar inv = a(r, c).inverse();
    nz.clear();
    for (size_t j = c; j < n; ++j)
      if (!a(r, j).is_zero()) {
        a(r, j) = a(r, j) * inv;
        nz.push_back(j);
      }
    for (size_t i = 0; i < m; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (size_t j : nz) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

size_t rank(const Matrix& a) { return row_echelon(a).rank(); }

Subspace::Subspace(size_t ambient, Field f) : ambient_(ambient), field_(f), rows_(0, ambient, f) {}

Subspace Subspace::span(size_t ambient, const std::vector<Vec>& gens, Field f) {
  Subspace s(ambient, f);
  if (gens.empty()) return s;
  Echelon e = row_echelon(Matrix::from_rows(ambient, gens, f));
  s.rows_ = e.rref.block(0, 0, e.rank(), ambient);
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::full(size_t ambient, Field f) {
  Subspace s(ambient, f);
  s.rows_ = Matrix::identity(ambient, f);
  for (size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
  return s;
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> b;
  for (size_t i = 0; i < dim(); ++i) b.push_back(rows_.row(i));
  return b;
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw UsageError("subspace: vector length mismatch");
  Vec w(v);
  for (size_t i = 0; i < pivots_.size(); ++i) {
    Scalar c = w[pivots_[i]];
    if (c.is_zero()) continue;
    for (size_t j = pivots_[i]; j < ambient_; ++j)
      if (!rows_(i, j).is_zero()) w[j] -= c * rows_(i, j);
  }
  return w;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) return std::nullopt;
  Vec c;
  for (size_t p : pivots_) c.push_back(v[p]);
  return c;
}

bool Subspace::contains(const Subspace& o) const {
  for (size_t i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_vector(i))) return false;
  return true;
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (ambient_ != o.ambient_) throw UsageError("subspace sum: ambient mismatch");
  auto g = basis();
  auto h = o.basis();
  g.insert(g.end(), h.begin(), h.end());
  return span(ambient_, g, field_);
}

Subspace kernel(const Matrix& a) {
  Echelon e = row_echelon(a);
  const size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> gens;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec x = unit_vec(n, f, a.field());
    for (size_t i = 0; i < e.pivots.size(); ++i)
      if (!e.rref(i, f).is_zero()) x[e.pivots[i]] = -e.rref(i, f);
    gens.push_back(std::move(x));
  }
  return Subspace::span(n, gens, a.field());
}

Subspace image(const Matrix& a) {
  std::vector<Vec> cols;
  for (size_t c = 0; c < a.cols(); ++c) cols.push_back(a.column(c));
  return Subspace::span(a.rows(), cols, a.field());
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw UsageError("solve_linear: A has " + std::to_string(a.rows()) +
                                             " rows but b has length " + std::to_string(b.size()));
  const size_t n = a.cols();
  Matrix aug(a.rows(), n + 1, a.field());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  Echelon e = row_echelon(std::move(aug));
  Vec x = zero_vec(n, a.field());
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == n) return std::nullopt;
    x[e.pivots[i]] = e.rref(i, n);
  }
  return x;
}

std::optional<Vec> span_coefficients(const std::vector<Vec>& gens, const Vec& target, size_t ambient, Field f) {
  return solve_linear(Matrix::from_columns(ambient, gens, f), target);
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const size_t n = a.rows();
  Matrix aug = hstack({a, Matrix::identity(n, a.field())}, n, a.field());
  Echelon e = row_echelon(std::move(aug));
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

Vec QuotientSpace::project(const Vec& v) const { return projection * v; }

QuotientSpace quotient(size_t ambient_dim, const Subspace& relations) {
  if (relations.ambient_dim() != ambient_dim) throw UsageError("quotient: ambient mismatch");
  Field f = relations.field();
  QuotientSpace q;
  q.ambient_dim = ambient_dim;
  q.relations = relations;
  std::vector<long> slot(ambient_dim, -1);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (size_t p : relations.pivots()) is_pivot[p] = true;
  for (size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) {
      slot[j] = static_cast<long>(q.representatives.size());
      q.representatives.push_back(j);
    }
  q.dim = q.representatives.size();
  q.projection = Matrix(q.dim, ambient_dim, f);
  q.section = Matrix(ambient_dim, q.dim, f);
  for (size_t t = 0; t < q.dim; ++t) {
    q.projection(t, q.representatives[t]) = f.one();
    q.section(q.representatives[t], t) = f.one();
  }
  const Matrix& rows = relations.basis_rows();
  for (size_t i = 0; i < relations.dim(); ++i) {
    size_t p = relations.pivots()[i];
    for (size_t j = p + 1; j < ambient_dim; ++j)
      if (slot[j] >= 0 && !rows(i, j).is_zero()) q.projection(static_cast<size_t>(slot[j]), p) = -rows(i, j);
  }
  return q;
}

Subspace product_span(const std::vector<Matrix>& u, const std::vector<Matrix>& v) {
  if (u.empty() || v.empty()) {
    size_t r = v.empty() ? 0 : v[0].rows();
    size_t c = u.empty() ? 0 : u[0].cols();
    Field f = !u.empty() ? u[0].field() : (!v.empty() ? v[0].field() : Field());
    return Subspace(r * c, f);
  }
  const size_t rows = v[0].rows(), cols = u[0].cols();
  std::vector<Vec> gens;
  for (const auto& g : v)
    for (const auto& f : u) {
      if (g.cols() != f.rows() || g.rows() != rows || f.cols() != cols)
        throw UsageError("product_span: factors are not composable");
      gens.push_back((g * f).flatten());
    }
  return Subspace::span(rows * cols, gens, u[0].field());
}

Matrix operator_matrix(size_t in_dim, size_t out_dim, Field f, const std::function<Vec(size_t)>& image_of_basis) {
  Matrix m(out_dim, in_dim, f);
  for (size_t j = 0; j < in_dim; ++j) {
    Vec v = image_of_basis(j);
    if (v.size() != out_dim) throw UsageError("operator_matrix: image has wrong length");
    m.set_column(j, v);
  }
  return m;
}

}  // namespace corext
