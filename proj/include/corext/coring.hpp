#pragma once

#include <memory>
#include <string>

#include "corext/module.hpp"

namespace corext {

class Coring;
using CoringPtr = std::shared_ptr<const Coring>;

// An A-coring: an A-A bimodule C with coproduct C → C ⊗_A C (in quotient
// coordinates of the balanced tensor) and counit C → A. Construction
// validates every axiom and throws AxiomError naming the first failure.
class Coring {
 public:
  // `square` may supply a prebuilt C ⊗_A C over the same carrier.
  Coring(std::string name, BimodulePtr carrier, Matrix coproduct, Matrix counit, TensorPtr square = nullptr);
  // Coproduct given on C ⊗_k C (index i * dim + j) and projected.
  static CoringPtr from_lift(std::string name, BimodulePtr carrier, const Matrix& coproduct_ambient, Matrix counit);

  const std::string& name() const { return name_; }
  const AlgebraPtr& base() const { return carrier_->left_algebra(); }
  const BimodulePtr& carrier() const { return carrier_; }
  size_t dim() const { return carrier_->dim(); }
  Field field() const { return carrier_->field(); }
  const BalancedTensor& square() const { return *square_; }
  const TensorPtr& square_ptr() const { return square_; }
  const Matrix& coproduct() const { return coproduct_; }
  const Matrix& counit() const { return counit_; }
  Vec coproduct_lift(size_t c) const { return square_->lift(coproduct_.column(c)); }
  Vec counit_of(const Vec& c) const { return counit_ * c; }

 private:
  void validate() const;

  std::string name_;
  BimodulePtr carrier_;
  TensorPtr square_;
  Matrix coproduct_, counit_;
};

// A as a coring over itself: Δ(a) = a ⊗ 1, ε = id.
CoringPtr trivial_coring(const AlgebraPtr& a);

// The map M ⊗_A C → M, m ⊗ c ↦ m ε(c).
Matrix apply_counit_right(const BalancedTensor& mc, const Coring& c);
// The map C ⊗_A N → N, c ⊗ n ↦ ε(c) n.
Matrix apply_counit_left(const BalancedTensor& cn, const Coring& c);

class Comodule;
using ComodulePtr = std::shared_ptr<const Comodule>;

// Right C-comodule. The carrier's right algebra is the base of C; its left
// algebra is the optional L slot (k when absent) and the coaction must be
// left linear for it.
class Comodule {
 public:
  Comodule(std::string name, CoringPtr coring, BimodulePtr carrier, Matrix coaction, TensorPtr mc = nullptr);
  static ComodulePtr from_lift(std::string name, CoringPtr coring, BimodulePtr carrier, const Matrix& ambient);

  const std::string& name() const { return name_; }
  const CoringPtr& coring() const { return coring_; }
  const BimodulePtr& carrier() const { return carrier_; }
  const AlgebraPtr& left_algebra() const { return carrier_->left_algebra(); }
  size_t dim() const { return carrier_->dim(); }
  Field field() const { return carrier_->field(); }
  const BalancedTensor& with_coring() const { return *mc_; }
  const TensorPtr& with_coring_ptr() const { return mc_; }
  const Matrix& coaction() const { return coaction_; }
  Vec coaction_lift(size_t x) const { return mc_->lift(coaction_.column(x)); }

 private:
  void validate() const;

  std::string name_;
  CoringPtr coring_;
  BimodulePtr carrier_;
  TensorPtr mc_;
  Matrix coaction_;
};

ComodulePtr with_name(const ComodulePtr& m, std::string name);
// (C, Δ), with left A-action.
ComodulePtr regular_comodule(const CoringPtr& c);
// N ⊗_A C with coaction N ⊗ Δ; left structure from N.
ComodulePtr cofree_comodule(const BimodulePtr& n, const CoringPtr& c);
ComodulePtr direct_sum(const ComodulePtr& m, const ComodulePtr& n);
ComodulePtr zero_comodule(const CoringPtr& c, const AlgebraPtr& left);
// Subcomodule on a subspace; AxiomError when the subspace is not closed.
ComodulePtr subcomodule(const ComodulePtr& m, const Subspace& s, std::string name);
// Same coaction with a different left structure (e.g. an L-action or T).
ComodulePtr with_left_structure(const ComodulePtr& m, const AlgebraPtr& left, std::vector<Matrix> left_act);

struct Grouplike {
  CoringPtr coring;
  Vec element;
};
// Δ(g) = g ⊗ g and ε(g) = 1.
void validate_grouplike(const Grouplike& g);
// A with a ↦ g a ∈ C ≅ A ⊗_A C.
ComodulePtr grouplike_comodule(const Grouplike& g, std::string name = "A");

// *C = _AHom(C, A) with (ff')(c) = f'(c^(1) f(c^(2))), or the mirror
// C* = Hom_A(C, A) with (ff')(c) = f(f'(c^(1)) c^(2)).
struct DualRing {
  CoringPtr coring;
  Side side = Side::left;
  HomSpace maps;       // dim A × dim C matrices
  AlgebraPtr algebra;  // coordinates are those of `maps`
  Matrix unit_map;     // A → *C, a ↦ ε(−a)

  Matrix product(const Matrix& f, const Matrix& g) const;
  Matrix element(const Vec& coords) const { return maps.combine(coords); }
};
DualRing dual_ring(const CoringPtr& c, Side side = Side::left);

// Σ as a right *C-module: x f = x^[0] f(x^[1]). Left structure kept.
BimodulePtr dual_action(const Comodule& m, const DualRing& dual);

// Hom^C(M, N) with right A-linearity, plus left linearity when flagged.
HomSpace colinear_homs(const Comodule& m, const Comodule& n, bool left_linear = false);
// ρ_N φ − (φ ⊗ C) ρ_M, flattened.
Vec colinearity_defect(const Comodule& m, const Comodule& n, const Matrix& phi);

// End^C(Σ) with composition (tt')(x) = t(t'(x)).
struct EndAlgebra {
  HomSpace maps;
  AlgebraPtr algebra;
  Matrix left_unit;        // L → T, l ↦ (x ↦ l x)
  BimodulePtr sigma_over;  // Σ as a T-A bimodule, t·x = t(x)
};
EndAlgebra endomorphism_algebra(const Comodule& s);

// C^cop, an A^op-coring, encoding left C-comodules as right ones.
CoringPtr coopposite(const CoringPtr& c);

}  // namespace corext
