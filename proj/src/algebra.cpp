#include "corext/algebra.hpp"

#include "corext/errors.hpp"

namespace corext {

FiniteAlgebra::FiniteAlgebra(std::string name, Field f, size_t dim, std::vector<Vec> products, Vec unit)
    : name_(std::move(name)), field_(f), dim_(dim), products_(std::move(products)), unit_(std::move(unit)) {
  if (products_.size() != dim_ * dim_) throw UsageError("algebra " + name_ + ": need dim^2 products");
  for (auto& p : products_) {
    if (p.size() != dim_) throw UsageError("algebra " + name_ + ": product vector has wrong length");
    for (auto& x : p) x = x.in_field(f);
  }
  if (unit_.size() != dim_) throw UsageError("algebra " + name_ + ": unit has wrong length");
  for (auto& x : unit_) x = x.in_field(f);
  for (size_t i = 0; i < dim_; ++i) {
    Matrix l(dim_, dim_, f), r(dim_, dim_, f);
    for (size_t j = 0; j < dim_; ++j) {
      l.set_column(j, product(i, j));
      r.set_column(j, product(j, i));
    }
    left_mul_.push_back(std::move(l));
    right_mul_.push_back(std::move(r));
  }
}

AlgebraPtr FiniteAlgebra::ground(Field f) {
  return std::make_shared<FiniteAlgebra>("k", f, 1, std::vector<Vec>{Vec{f.one()}}, Vec{f.one()});
}

Vec FiniteAlgebra::multiply(const Vec& a, const Vec& b) const { return left_mul_by(a) * b; }

Matrix FiniteAlgebra::left_mul_by(const Vec& a) const {
  if (a.size() != dim_) throw UsageError("algebra " + name_ + ": element has wrong length");
  return linear_combination(left_mul_, a, dim_, dim_, field_);
}

Matrix FiniteAlgebra::right_mul_by(const Vec& a) const {
  if (a.size() != dim_) throw UsageError("algebra " + name_ + ": element has wrong length");
  return linear_combination(right_mul_, a, dim_, dim_, field_);
}

void FiniteAlgebra::validate() const {
  // L(e_i) L(e_j) = L(e_i e_j) is associativity on all basis triples.
  for (size_t i = 0; i < dim_; ++i)
    for (size_t j = 0; j < dim_; ++j)
      if (left_mul_[i] * left_mul_[j] != left_mul_by(product(i, j)))
        throw AxiomError("associativity", "algebra " + name_ + " at basis pair (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ")");
  if (!left_mul_by(unit_).is_identity()) throw AxiomError("unitality", "algebra " + name_ + ": 1·a != a");
  if (!right_mul_by(unit_).is_identity()) throw AxiomError("unitality", "algebra " + name_ + ": a·1 != a");
}

bool FiniteAlgebra::same_structure(const FiniteAlgebra& o) const {
  return field_ == o.field_ && dim_ == o.dim_ && unit_ == o.unit_ && products_ == o.products_;
}

bool FiniteAlgebra::is_ground() const { return dim_ == 1 && unit_[0].is_one() && products_[0][0].is_one(); }

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->same_structure(*b));
}

AlgebraPtr opposite_algebra(const AlgebraPtr& a) {
  std::vector<Vec> p;
  for (size_t i = 0; i < a->dim(); ++i)
    for (size_t j = 0; j < a->dim(); ++j) p.push_back(a->product(j, i));
  return std::make_shared<FiniteAlgebra>(a->name() + "^op", a->field(), a->dim(), p, a->unit());
}

AlgebraPtr diagonal_algebra(Field f, size_t n, std::string name) {
  std::vector<Vec> p;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p.push_back(i == j ? unit_vec(n, i, f) : zero_vec(n, f));
  Vec one(n, f.one());
  if (name.empty()) name = "k^" + std::to_string(n);
  return std::make_shared<FiniteAlgebra>(name, f, n, p, one);
}

AlgebraPtr group_algebra(Field f, const std::vector<std::vector<size_t>>& table, std::string name) {
  const size_t n = table.size();
  std::vector<Vec> p;
  for (size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw UsageError("group table is not square");
    for (size_t j = 0; j < n; ++j) p.push_back(unit_vec(n, table[i][j], f));
  }
  return std::make_shared<FiniteAlgebra>(std::move(name), f, n, p, unit_vec(n, 0, f));
}

AlgebraPtr truncated_polynomial_algebra(Field f, const Vec& low, std::string name) {
  const size_t n = low.size();
  if (n == 0) throw UsageError("polynomial of degree 0");
  // x^k for k < 2n - 1, reduced with x^n = -Σ low_i x^i.
  std::vector<Vec> powers;
  for (size_t k = 0; k < n; ++k) powers.push_back(unit_vec(n, k, f));
  for (size_t k = n; k < 2 * n - 1; ++k) {
    const Vec& prev = powers[k - 1];
    Vec next = zero_vec(n, f);
    for (size_t i = 0; i + 1 < n; ++i) next[i + 1] = prev[i];
    axpy(next, -prev[n - 1], low);
    powers.push_back(next);
  }
  std::vector<Vec> p;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p.push_back(powers[i + j]);
  return std::make_shared<FiniteAlgebra>(std::move(name), f, n, p, unit_vec(n, 0, f));
}

AlgebraPtr algebra_on_matrices(std::string name, const std::vector<Matrix>& basis,
                               const std::function<Matrix(const Matrix&, const Matrix&)>& product,
                               const Matrix& unit) {
  const size_t n = basis.size();
  Field f = unit.field();
  std::vector<Vec> flat;
  for (const auto& b : basis) flat.push_back(b.flatten());
  Subspace span = Subspace::span(unit.rows() * unit.cols(), flat, f);
  if (span.dim() != n) throw StructuralError("algebra " + name + ": basis is not independent");
  // Coordinates relative to the given (not necessarily echelon) basis.
  Matrix cols = Matrix::from_columns(unit.rows() * unit.cols(), flat, f);
  auto coords = [&](const Matrix& m, const std::string& what) {
    auto c = solve_linear(cols, m.flatten());
    if (!c) throw StructuralError("algebra " + name + ": " + what + " leaves the subspace");
    return *c;
  };
  std::vector<Vec> p;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) p.push_back(coords(product(basis[i], basis[j]), "product"));
  return std::make_shared<FiniteAlgebra>(std::move(name), f, n, p, coords(unit, "unit"));
}

void AlgebraMap::validate() const {
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw UsageError("algebra map has wrong shape");
  if (matrix * source->unit() != target->unit())
    throw AxiomError("unitality", "algebra map " + source->name() + " -> " + target->name());
  for (size_t i = 0; i < source->dim(); ++i)
    for (size_t j = 0; j < source->dim(); ++j)
      if (matrix * source->product(i, j) != target->multiply(matrix.column(i), matrix.column(j)))
        throw AxiomError("multiplicativity", "algebra map " + source->name() + " -> " + target->name());
}

AlgebraMap unit_map(const AlgebraPtr& target) {
  Field f = target->field();
  return {FiniteAlgebra::ground(f), target, Matrix::from_columns(target->dim(), {target->unit()}, f)};
}

}  // namespace corext
