#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "corext/algebra.hpp"

namespace corext {

class FBimodule;
using BimodulePtr = std::shared_ptr<const FBimodule>;

// Finite-dimensional left/right bimodule. One-sided modules carry the ground
// algebra k on the inert side.
class FBimodule {
 public:
  FBimodule(std::string name, AlgebraPtr left, AlgebraPtr right, size_t dim, std::vector<Matrix> left_act,
            std::vector<Matrix> right_act);

  const std::string& name() const { return name_; }
  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  size_t dim() const { return dim_; }
  Field field() const { return left_->field(); }

  const Matrix& left_action(size_t i) const { return left_act_[i]; }    // m ↦ e_i m
  const Matrix& right_action(size_t i) const { return right_act_[i]; }  // m ↦ m e_i
  const std::vector<Matrix>& left_actions() const { return left_act_; }
  const std::vector<Matrix>& right_actions() const { return right_act_; }
  Matrix left_action_by(const Vec& a) const;
  Matrix right_action_by(const Vec& b) const;
  Vec act_left(const Vec& a, const Vec& m) const { return left_action_by(a) * m; }
  Vec act_right(const Vec& m, const Vec& b) const { return right_action_by(b) * m; }

  // Unital, associative actions that commute. Throws AxiomError.
  void validate() const;

 private:
  std::string name_;
  AlgebraPtr left_, right_;
  size_t dim_;
  std::vector<Matrix> left_act_, right_act_;
};

BimodulePtr make_bimodule(std::string name, AlgebraPtr left, AlgebraPtr right, size_t dim,
                          std::vector<Matrix> left_act, std::vector<Matrix> right_act);
// A as an A-A bimodule.
BimodulePtr regular_bimodule(const AlgebraPtr& a);
// A^n as a k-A bimodule (free right module).
BimodulePtr free_right_module(const AlgebraPtr& a, size_t n);
BimodulePtr free_left_module(const AlgebraPtr& a, size_t n);
BimodulePtr vector_space(Field f, size_t n);
BimodulePtr zero_bimodule(const AlgebraPtr& left, const AlgebraPtr& right);
BimodulePtr direct_sum(const BimodulePtr& m, const BimodulePtr& n);
// Same carrier with a replacement left (or right) structure.
BimodulePtr with_left(const BimodulePtr& m, const AlgebraPtr& left, std::vector<Matrix> left_act);
BimodulePtr with_right(const BimodulePtr& m, const AlgebraPtr& right, std::vector<Matrix> right_act);
BimodulePtr forget_left(const BimodulePtr& m);
BimodulePtr forget_right(const BimodulePtr& m);
// Right structure pulled back along an algebra map into the right algebra.
BimodulePtr restrict_right(const BimodulePtr& m, const AlgebraMap& phi);
BimodulePtr restrict_left(const BimodulePtr& m, const AlgebraMap& phi);
// Sub-bimodule on a subspace (basis = canonical basis of `s`); checks closure.
BimodulePtr sub_bimodule(const BimodulePtr& m, const Subspace& s, std::string name);
std::vector<Matrix> actions_of(const AlgebraPtr& a, const std::function<Matrix(const Vec&)>& act);

// A subspace of Hom_k(k^src, k^tgt) with elements as tgt × src matrices,
// stored by the canonical basis of their row-major flattenings.
class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(size_t source_dim, size_t target_dim, Subspace space);
  static HomSpace all(size_t source_dim, size_t target_dim, Field f);
  static HomSpace spanned_by(size_t source_dim, size_t target_dim, const std::vector<Matrix>& maps, Field f);

  size_t dim() const { return space_.dim(); }
  size_t source_dim() const { return src_; }
  size_t target_dim() const { return tgt_; }
  Field field() const { return space_.field(); }
  const Subspace& space() const { return space_; }

  Matrix element(size_t i) const;
  const std::vector<Matrix>& elements() const { return elements_; }
  Matrix combine(const Vec& coeffs) const;
  std::optional<Vec> coordinates(const Matrix& m) const;
  // Coordinates; throws StructuralError naming `what` when m is not inside.
  Vec coords(const Matrix& m, const std::string& what) const;
  bool contains(const Matrix& m) const;

  // Elements X with constraint(X) = 0; constraint must be linear.
  HomSpace refine(const std::function<Vec(const Matrix&)>& constraint) const;

 private:
  size_t src_ = 0, tgt_ = 0;
  Subspace space_;
  std::vector<Matrix> elements_;
};

struct HomFlags {
  bool left = false;   // commutes with the left actions
  bool right = false;  // commutes with the right actions
};

HomSpace hom_space(const FBimodule& m, const FBimodule& n, HomFlags flags);
// The constraint vector of the flagged linearities; zero iff x is such a map.
Vec linearity_defect(const FBimodule& m, const FBimodule& n, HomFlags flags, const Matrix& x);

struct LinearMap {
  BimodulePtr source, target;
  Matrix matrix;
};
// Verifies the flagged linearities, throwing AxiomError on failure.
LinearMap make_linear_map(BimodulePtr source, BimodulePtr target, Matrix matrix, HomFlags flags,
                          const std::string& name = "map");

// M ⊗_B N as the quotient of M ⊗_k N (index i * dim N + j) by the balancing
// relations, with the outer actions installed.
class BalancedTensor {
 public:
  BalancedTensor(BimodulePtr left, AlgebraPtr over, BimodulePtr right);

  const BimodulePtr& left() const { return left_; }
  const BimodulePtr& right() const { return right_; }
  const AlgebraPtr& over() const { return over_; }
  const BimodulePtr& bimodule() const { return result_; }
  const QuotientSpace& space() const { return space_; }
  size_t dim() const { return space_.dim; }
  size_t ambient_dim() const { return space_.ambient_dim; }
  Field field() const { return left_->field(); }

  Vec project(const Vec& ambient) const { return space_.project(ambient); }
  Vec lift(const Vec& q) const { return space_.lift(q); }
  // Class of x ⊗ y.
  Vec pure(const Vec& x, const Vec& y) const { return project(kron(x, y)); }
  Vec pure_basis(size_t i, size_t j) const;
  const Matrix& projection() const { return space_.projection; }
  const Matrix& section() const { return space_.section; }
  // Map out of the quotient induced by a map on M ⊗_k N. Throws
  // StructuralError naming `what` when the map does not kill the relations.
  Matrix descend(const Matrix& ambient_map, const std::string& what) const;
  bool descends(const Matrix& ambient_map) const;

 private:
  BimodulePtr left_, right_;
  AlgebraPtr over_;
  QuotientSpace space_;
  BimodulePtr result_;
};

using TensorPtr = std::shared_ptr<const BalancedTensor>;
TensorPtr tensor_over(const BimodulePtr& m, const AlgebraPtr& b, const BimodulePtr& n);

// f ⊗ g between balanced tensors.
Matrix tensor_maps(const BalancedTensor& src, const BalancedTensor& dst, const Matrix& f, const Matrix& g);
// (X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z); xy_z.left() must be xy.bimodule(), x_yz.right() yz.bimodule().
Matrix associator(const BalancedTensor& xy, const BalancedTensor& xy_z, const BalancedTensor& yz,
                  const BalancedTensor& x_yz);

enum class Side { left, right };

// Dual basis {x_i}, {ξ_i} with Σ x_i ξ_i(m) = m (right modules) or
// Σ ξ_i(m) x_i = m (left modules).
struct DualBasis {
  std::vector<Vec> elements;
  std::vector<Matrix> functionals;  // dim A × dim M
};
std::optional<DualBasis> fgp_check(const FBimodule& m, Side side);

// {ξ_i}, {x_i} with Σ ξ_i(x_i) = 1_A.
struct GeneratorWitness {
  std::vector<Matrix> functionals;
  std::vector<Vec> elements;
};
std::optional<GeneratorWitness> generator_check(const FBimodule& m, Side side);

// Hom_A(M, A) for a right A-module M, or _AHom(M, A) for a left one.
HomSpace dual_space(const FBimodule& m, Side side);

// M* = Hom_A(M, A) for an L-A bimodule M, as an A-L bimodule with
// (a ξ l)(m) = a ξ(l m). Elements are dim A × dim M matrices.
struct DualModule {
  HomSpace maps;
  BimodulePtr bimodule;
};
DualModule dual_bimodule(const BimodulePtr& m);

}  // namespace corext
