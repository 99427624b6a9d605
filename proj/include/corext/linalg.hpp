#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "corext/matrix.hpp"

namespace corext {

struct Echelon {
  Matrix rref;                  // reduced row echelon form, zero rows kept
  std::vector<size_t> pivots;   // pivot column of row i
  size_t rank() const { return pivots.size(); }
};

Echelon row_echelon(Matrix a);
size_t rank(const Matrix& a);

// A subspace of k^n stored by its canonical reduced echelon basis, so equal
// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(size_t ambient, Field f);  // zero subspace
  static Subspace span(size_t ambient, const std::vector<Vec>& gens, Field f);
  static Subspace full(size_t ambient, Field f);

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return pivots_.size(); }
  Field field() const { return field_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  // Basis vectors as rows, in echelon order.
  const Matrix& basis_rows() const { return rows_; }
  Vec basis_vector(size_t i) const { return rows_.row(i); }
  std::vector<Vec> basis() const;

  // v minus its component along the pivot coordinates; zero iff v ∈ span.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  // Coordinates in the canonical basis, or none when v ∉ span.
  std::optional<Vec> coordinates(const Vec& v) const;
  bool contains(const Subspace& o) const;

  Subspace operator+(const Subspace& o) const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && rows_ == o.rows_; }

 private:
  size_t ambient_ = 0;
  Field field_;
  Matrix rows_;
  std::vector<size_t> pivots_;
};

Subspace kernel(const Matrix& a);
Subspace image(const Matrix& a);

// Canonical solution of A x = b (free variables zero), or none.
std::optional<Vec> solve_linear(const Matrix& a, const Vec& b);
// Coefficients c with Σ c_i gens[i] = target, or none.
std::optional<Vec> span_coefficients(const std::vector<Vec>& gens, const Vec& target, size_t ambient, Field f);
std::optional<Matrix> inverse(const Matrix& a);

// k^n / relations. Quotient coordinates are the non-pivot coordinates of
// the relation echelon form.
struct QuotientSpace {
  size_t ambient_dim = 0;
  Subspace relations;
  size_t dim = 0;
  Matrix projection;  // dim × ambient
  Matrix section;     // ambient × dim
  std::vector<size_t> representatives;  // ambient index of quotient coordinate i

  Vec project(const Vec& v) const;
  Vec lift(const Vec& q) const { return section * q; }
};

QuotientSpace quotient(size_t ambient_dim, const Subspace& relations);

// span{ g·f : f ∈ U, g ∈ V }, flattened row-major.
Subspace product_span(const std::vector<Matrix>& u, const std::vector<Matrix>& v);

// Matrix of a linear map given by the images of basis vectors.
Matrix operator_matrix(size_t in_dim, size_t out_dim, Field f, const std::function<Vec(size_t)>& image_of_basis);

}  // namespace corext
