#pragma once

#include <optional>
#include <vector>

#include "corext/coring.hpp"

namespace corext {

// (alg1, alg2, bim12, bim21, conn1, conn2) with
// conn1: bim21 ⊗_{alg1} bim12 → alg2 and conn2: bim12 ⊗_{alg2} bim21 → alg1,
// both on balanced-tensor coordinates.
struct MoritaContext {
  AlgebraPtr alg1, alg2;
  BimodulePtr bim12, bim21;
  TensorPtr t21_12, t12_21;
  Matrix conn1, conn2;

  Vec pair1(const Vec& q, const Vec& p) const { return conn1 * t21_12->pure(q, p); }
  Vec pair2(const Vec& p, const Vec& q) const { return conn2 * t12_21->pure(p, q); }
  // Bilinearity and both mixed associativity laws; throws AxiomError.
  void validate() const;
};

// Connecting maps given on the ambient k-tensors; StructuralError when they
// are not balanced.
MoritaContext make_context(AlgebraPtr alg1, AlgebraPtr alg2, BimodulePtr bim12, BimodulePtr bim21,
                           const Matrix& conn1_ambient, const Matrix& conn2_ambient);

// The module Q ⊂ Hom_A(Σ, *C) and its switched form Q' ⊂ _AHom(C, Σ*).
struct QModule {
  HomSpace maps;          // dim *C × dim Σ, *C in dual-ring coordinates
  BimodulePtr bimodule;   // *C-T
  DualModule sigma_dual;  // Σ* = Hom_A(Σ, A)
  HomSpace switched;      // dim Σ* × dim C
  Matrix to_switched;     // Q coordinates → Q' coordinates, bijective
};

struct ComoduleContext {
  ComodulePtr sigma;
  DualRing dual;
  EndAlgebra end;
  BimodulePtr sigma_tc;  // Σ as a T-*C bimodule
  QModule q;
  MoritaContext ctx;     // (T, *C, Σ, Q, ◂, ▹)
};

QModule compute_Q(const Comodule& sigma, const DualRing& dual, const EndAlgebra& end);
// q(x^[0])(c) x^[1] − c^(1) q(x)(c^(2)) over all basis x, c.
Vec q_defect(const Comodule& sigma, const DualRing& dual, const Matrix& q);
// c^(1) q'(c^(2))(x) − q'(c)(x^[0]) x^[1] for q' : C → Σ* in Σ* coordinates.
Vec switched_defect(const Comodule& sigma, const DualModule& sd, const Matrix& qs);
ComoduleContext context_M(const ComodulePtr& sigma);

struct ModuleContext {
  HomSpace end_maps;  // End_{*C}(Σ)
  HomSpace hom_maps;  // Hom_{*C}(Σ, *C)
  MoritaContext ctx;
};
ModuleContext context_N(const ComoduleContext& m);

struct ContextMorphism {
  Matrix end_inclusion;  // T → End_{*C}(Σ)
  Matrix q_inclusion;    // Q → Hom_{*C}(Σ, *C)
  bool commutes = false;
  bool coring_fgp = false;  // C f.g. projective as a left A-module
  bool bijective = false;   // all four components
  bool isomorphism() const { return coring_fgp && bijective; }
};
ContextMorphism morphism_M_to_N(const ComoduleContext& m, const ModuleContext& n);

// Surjectivity of conn1 (which = 1) or conn2 (which = 2), with witnesses
// Σ_i conn(first_i ⊗ second_i) = 1.
struct Surjectivity {
  bool surjective = false;
  bool injective = false;
  size_t rank = 0;
  std::vector<Vec> first, second;
};
Surjectivity connecting_surjective(const MoritaContext& ctx, int which);

struct Strictness {
  bool strict = false;
  bool bijective = false;
  Surjectivity first, second;
};
Strictness strictness(const MoritaContext& ctx);

// From ◂-witnesses: f_j ⊗ c_j = Σ_i q_i(x_i^[0]) ⊗ x_i^[1], a dual basis of
// C as a left A-module (functionals are dim A × dim C).
DualBasis dual_basis_from_conn1(const ComoduleContext& m, const Surjectivity& s);
// From ▹-witnesses: y_j ⊗ ξ_j = Σ_i x_i^[0] ⊗ q_i(−)(x_i^[1]), a dual basis
// of Σ as a right A-module.
DualBasis dual_basis_from_conn2(const ComoduleContext& m, const Surjectivity& s);
bool reconstructs(const FBimodule& m, const DualBasis& db, Side side);

// Unit η_N : N → Hom^C(Σ, N ⊗_T Σ) and the inverse built from ▹-witnesses.
struct UnitCheck {
  size_t module_dim = 0, hom_dim = 0;
  bool eta_bijective = false;
  bool left_inverse = false;   // η̃ η = id
  bool right_inverse = false;  // η η̃ = id
};
UnitCheck verify_tensor_unit(const ComoduleContext& m, const Surjectivity& s2, const BimodulePtr& n);
// N ⊗_T Σ with coaction N ⊗ ρ.
ComodulePtr tensor_comodule(const BimodulePtr& n, const ComoduleContext& m);

}  // namespace corext
