#pragma once

#include <memory>
#include <string>
#include <vector>

#include "corext/linalg.hpp"

namespace corext {

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

// A finite-dimensional associative unital k-algebra given by structure
// constants: products[i * dim + j] is e_i e_j in the basis.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, Field f, size_t dim, std::vector<Vec> products, Vec unit);

  // The ground field k as a one-dimensional algebra.
  static AlgebraPtr ground(Field f);

  const std::string& name() const { return name_; }
  Field field() const { return field_; }
  size_t dim() const { return dim_; }
  const Vec& unit() const { return unit_; }
  Vec basis(size_t i) const { return unit_vec(dim_, i, field_); }
  const Vec& product(size_t i, size_t j) const { return products_[i * dim_ + j]; }
  const std::vector<Vec>& products() const { return products_; }

  Vec multiply(const Vec& a, const Vec& b) const;
  const Matrix& left_mul(size_t i) const { return left_mul_[i]; }    // x ↦ e_i x
  const Matrix& right_mul(size_t i) const { return right_mul_[i]; }  // x ↦ x e_i
  Matrix left_mul_by(const Vec& a) const;
  Matrix right_mul_by(const Vec& a) const;

  // Throws AxiomError naming associativity or unitality.
  void validate() const;
  bool same_structure(const FiniteAlgebra& o) const;
  bool is_ground() const;

 private:
  std::string name_;
  Field field_;
  size_t dim_;
  std::vector<Vec> products_;
  Vec unit_;
  std::vector<Matrix> left_mul_, right_mul_;
};

// Pointer identity, else identical structure constants.
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

AlgebraPtr opposite_algebra(const AlgebraPtr& a);
// k × ... × k with orthogonal idempotent basis.
AlgebraPtr diagonal_algebra(Field f, size_t n, std::string name = "");
// k[G] from a multiplication table (indices, identity at 0).
AlgebraPtr group_algebra(Field f, const std::vector<std::vector<size_t>>& table, std::string name);
// k[x]/(x^n + c_{n-1} x^{n-1} + ... + c_0), basis 1, x, ..., x^{n-1}.
AlgebraPtr truncated_polynomial_algebra(Field f, const Vec& low_coeffs, std::string name);
// Algebra structure on a subspace of matrices closed under `product`.
// Elements are given in the subspace's canonical coordinates.
AlgebraPtr algebra_on_matrices(std::string name, const std::vector<Matrix>& basis,
                               const std::function<Matrix(const Matrix&, const Matrix&)>& product,
                               const Matrix& unit);

// Unital algebra map given by its matrix in the two bases.
struct AlgebraMap {
  AlgebraPtr source, target;
  Matrix matrix;  // target.dim × source.dim
  void validate() const;
  Vec operator()(const Vec& x) const { return matrix * x; }
};

AlgebraMap unit_map(const AlgebraPtr& target);  // k → A

}  // namespace corext
