#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corext/morita.hpp"

namespace corext {

enum class Purity { unchecked, pure, pure_by_split, not_pure };
std::string to_string(Purity p);

// A right extension (D:L) of (C:A): C carries a right L-action and a right
// D-coaction tau : C → C ⊗_L D making it a C-D bicomodule.
struct CoringExtension {
  CoringPtr inner;            // C over A
  CoringPtr outer;            // D over L
  BimodulePtr inner_al;       // C as an A-L bimodule
  TensorPtr c_d;              // C ⊗_L D
  TensorPtr c_cl;             // C ⊗_A C, right L from the second factor
  Matrix tau;                 // C → C ⊗_L D
  std::optional<AlgebraMap> split;  // L → A inducing the right L-action, when known
  Purity purity = Purity::unchecked;
  std::vector<std::string> purity_list;

  const AlgebraPtr& base() const { return inner->base(); }
  const AlgebraPtr& outer_base() const { return outer->base(); }
  Vec tau_lift(size_t c) const { return c_d->lift(tau.column(c)); }
  bool is_pure() const { return purity == Purity::pure || purity == Purity::pure_by_split; }
};

// Verifies both formulations of the bicomodule axioms: tau left A-linear
// with Δ_C right D-colinear, and Δ_C right L-linear with tau left
// C-colinear. Throws AxiomError naming the first failure; StructuralError
// if the two formulations disagree.
CoringExtension extension_check(CoringPtr c, CoringPtr d, BimodulePtr inner_al, Matrix tau,
                                std::optional<AlgebraMap> split = std::nullopt);
// tau given on C ⊗_k D (index c * dim D + d).
CoringExtension extension_from_lift(CoringPtr c, CoringPtr d, BimodulePtr inner_al, const Matrix& tau_ambient,
                                    std::optional<AlgebraMap> split = std::nullopt);
// D = k, tau = id. Pure.
CoringExtension trivial_extension(const CoringPtr& c);

struct PurityReport {
  std::string comodule;
  bool pure = false;
  size_t equalizer_dim = 0;   // E
  size_t tensored_dim = 0;    // E ⊗_L D ⊗_L D
  size_t comparison_rank = 0;
  size_t target_dim = 0;      // equalizer of the tensored pair
};
struct PurityResult {
  Purity verdict = Purity::unchecked;
  std::vector<PurityReport> reports;
};
// The equalizer of (ρ ⊗ C, M ⊗ Δ) against − ⊗_L D ⊗_L D.
PurityReport purity_on(const CoringExtension& ext, const Comodule& m);
// Split fast path first; otherwise every listed comodule is checked.
PurityResult purity_check(const CoringExtension& ext, const std::vector<ComodulePtr>& list);
// Free right A-modules of rank 1 and 2 (as cofree comodules), C, and Σ.
std::vector<ComodulePtr> default_purity_list(const CoringExtension& ext, const ComodulePtr& sigma);
CoringExtension certify_purity(CoringExtension ext, const std::vector<ComodulePtr>& list);

// M with the right L-action m l = m^[0] ε(m^[1] l); left structure kept.
BimodulePtr induced_right_action(const CoringExtension& ext, const Comodule& m);
// The right D-comodule structure on M, characterised by
// (ρ ⊗_L D) τ_M = (M ⊗_A tau) ρ. Refuses extensions without a purity verdict.
ComodulePtr induced_coaction(const CoringExtension& ext, const Comodule& m);

// Hom_L-L(D, R) for an L-ring R with the convolution product
// (fg)(d) = f(d_(1)) g(d_(2)) and unit ε(−)1_R.
struct ConvolutionAlgebra {
  CoringPtr coring;
  AlgebraMap ring;  // L → R
  HomSpace maps;    // dim R × dim D
  AlgebraPtr algebra;

  Matrix product(const Matrix& f, const Matrix& g) const;
  Matrix one() const;
};
ConvolutionAlgebra convolution_algebra(const CoringPtr& d, const AlgebraMap& ring);
enum class InverseSide { left, right, both };
std::optional<Matrix> convolution_inverse(const ConvolutionAlgebra& conv, const Matrix& lambda,
                                          InverseSide side = InverseSide::both);

// Q̃ ⊂ _AHom_L(C, Σ*): c^(1) q(c^(2))(x) = q(c)(x^[0]) x^[1].
struct QTilde {
  HomSpace maps;        // dim Σ* × dim C
  DualModule sigma_dual;
  HomSpace switched;    // Q' for Σ as a plain comodule
  Matrix into_switched; // injective
};
QTilde compute_Qtilde(const CoringExtension& ext, const Comodule& sigma);

// (V, U, P, Q̃, ◆, ◇) with V = _LHom_L(D, T), U = ^C End^D(C)^op,
// P = _LHom^D(D, Σ).
struct ExtContext {
  CoringExtension ext;
  ComodulePtr sigma;
  ComodulePtr sigma_d;  // τ_Σ
  EndAlgebra end;
  ConvolutionAlgebra v;
  HomSpace u_maps;
  AlgebraPtr u_algebra;
  HomSpace p_maps;
  QTilde q;
  MoritaContext ctx;

  Matrix v_elem(const Vec& x) const { return v.maps.combine(x); }
  Matrix u_elem(const Vec& x) const { return u_maps.combine(x); }
  Matrix p_elem(const Vec& x) const { return p_maps.combine(x); }
  Matrix q_elem(const Vec& x) const { return q.maps.combine(x); }
  // ◆ in its second form, as a map C → C.
  Matrix black_alt(const Vec& q, const Vec& p) const;
};
// Throws StructuralError when the two forms of ◆ disagree.
ExtContext context_ext(const CoringExtension& ext, const ComodulePtr& sigma);

// With D = k: the identifications V ≅ T, U ≅ *C, P ≅ Σ, Q̃ ≅ Q carry every
// structure map of the extension context onto the comodule context.
struct Comparison {
  bool bijective = false;
  bool algebras = false;
  bool bimodules = false;
  bool connecting = false;
  bool coincides() const { return bijective && algebras && bimodules && connecting; }
};
Comparison compare_trivial(const ExtContext& e, const ComoduleContext& m);

// Identities that follow from Σ ĵ_ℓ ◆ j_ℓ = id_C, with witnesses from
// connecting_surjective(ctx, 1).
bool counit_identity(const ExtContext& e, const Surjectivity& s);
bool comodule_identity(const ExtContext& e, const Surjectivity& s, const ComodulePtr& m);

struct GeneratorCheck {
  bool applicable = false;  // ◆ and ε_C surjective
  bool generator = false;   // generator_check(Σ) succeeds
  bool witness_unit = false;  // Σ ξ_i(x_i) = 1_A from the witnesses
};
GeneratorCheck sigma_generates(const ExtContext& e, const Surjectivity& s);

// σ : Σ → T ⊗_L Σ from ◆-witnesses; the action map composed with σ is the
// identity and σ is T-linear and D-colinear.
struct Coretraction {
  bool retraction = false;
  bool t_linear = false;
  bool d_colinear = false;
  bool holds() const { return retraction && t_linear && d_colinear; }
};
Coretraction action_coretraction(const ExtContext& e, const Surjectivity& s);

}  // namespace corext
