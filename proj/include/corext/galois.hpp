#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corext/extension.hpp"

namespace corext {

// can_N : Hom_A(Σ, N) ⊗_T Σ → N ⊗_A C, φ ⊗ x ↦ φ(x^[0]) ⊗ x^[1].
struct CanonicalMap {
  ComodulePtr sigma;
  BimodulePtr target;      // N, a right A-module
  HomSpace homs;           // Hom_A(Σ, N), dim N × dim Σ
  BimodulePtr hom_module;  // Hom_A(Σ, N) as a right T-module
  TensorPtr source;        // Hom_A(Σ, N) ⊗_T Σ
  TensorPtr codomain;      // N ⊗_A C
  Matrix map;
  bool bijective = false;
};
CanonicalMap can_map(const ComodulePtr& sigma, const EndAlgebra& end, const BimodulePtr& n);
CanonicalMap can_map(const ComodulePtr& sigma, const BimodulePtr& n);

enum class GaloisVerdict { certified, on_samples, not_galois };
std::string to_string(GaloisVerdict v);
struct GaloisResult {
  GaloisVerdict verdict = GaloisVerdict::not_galois;
  bool sigma_fgp = false;
  std::vector<std::string> checked;  // samples whose can_N was tested
  std::string failing;               // first N with can_N not bijective
  bool is_galois() const { return verdict != GaloisVerdict::not_galois; }
};
// A, A ⊕ A, C and Σ as right A-modules.
std::vector<BimodulePtr> default_galois_samples(const Comodule& sigma);
// Certified when Σ is f.g. projective over A and can_A is bijective;
// otherwise can_N is tested on the samples (defaults when empty).
GaloisResult galois_check(const ComodulePtr& sigma, std::vector<BimodulePtr> samples = {});

// Υ_N : n ⊗ c ↦ Σ_ℓ n ĵ_ℓ(c_[0])(−) ⊗_T j_ℓ(c_[1]) from ◆-witnesses.
Matrix can_inverse_from_witnesses(const ExtContext& e, const Surjectivity& s, const CanonicalMap& can);

// Σ_ℓ λ_ℓ ∘ κ_ℓ = id_M with κ_ℓ : M → N, λ_ℓ : N → M.
struct Summand {
  bool summand = false;
  size_t s = 0;
  std::vector<Matrix> kappa, lambda;
};
Summand summand_check(const HomSpace& m_to_n, const HomSpace& n_to_m, size_t dim_m, Field f);
Summand comodule_summand(const Comodule& m, const Comodule& n, bool left_linear = false);

// Σ and T ⊗_L D as T-D bicomodules.
struct TDBicomodules {
  BimodulePtr t_l;      // T as a T-L bimodule
  TensorPtr t_d;        // T ⊗_L D
  ComodulePtr sigma;    // Σ with τ_Σ and left T
  ComodulePtr free;     // T ⊗_L D with T ⊗ Δ_D
  Matrix t_counit;      // T ⊗_L D → T, t ⊗ d ↦ t ε(d)
};
TDBicomodules td_bicomodules(const ExtContext& e);

enum class CleftGrade { weak_cleft, cleft };
std::string to_string(CleftGrade g);
struct CleftData {
  Matrix j;       // D → Σ, dim Σ × dim D
  Matrix jtilde;  // C → Σ*, in Σ* coordinates
  CleftGrade grade = CleftGrade::weak_cleft;
};
struct CleftResult {
  std::optional<CleftData> data;
  bool conclusive = false;  // a missing or weak verdict is known to be the truth
  std::string how;
};
// Σ = A: ĵ(c)(x) = values(c) x, values given as a dim A × dim C matrix.
Matrix jtilde_from_values(const ExtContext& e, const Matrix& values);
// Both given: both identities are checked. Only j: ĵ is solved for. Neither:
// j is searched for in P as in normal_basis_check.
CleftResult cleft_check(const ExtContext& e, const std::optional<Matrix>& j = std::nullopt,
                        const std::optional<Matrix>& jtilde = std::nullopt);

enum class NormalBasis { none, weak, full };
std::string to_string(NormalBasis n);
struct NormalBasisResult {
  NormalBasis grade = NormalBasis::none;
  bool conclusive = false;
  std::string how;
  std::optional<Matrix> iso;         // Σ → T ⊗_L D, full grade
  std::optional<Matrix> section;     // κ : Σ → T ⊗_L D, weak grade
  std::optional<Matrix> retraction;  // λ with λ κ = id
  size_t tried = 0;
};
// Candidates: the map built from cleft data, then {−1, 0, 1} combinations
// (at most sweep_cap), then seeded random ones.
inline constexpr size_t sweep_cap = 729;
inline constexpr size_t random_trials = 64;
inline constexpr unsigned long long search_seed = 0x5eed;
NormalBasisResult normal_basis_check(const ExtContext& e, const std::optional<CleftData>& cleft = std::nullopt);

// ε_M : Hom^C(Σ, M) ⊗_T Σ → M.
struct CounitMap {
  HomSpace homs;
  TensorPtr source;
  Matrix map;
  bool bijective = false;
};
CounitMap comodule_counit(const ComodulePtr& sigma, const EndAlgebra& end, const ComodulePtr& m);

// 1_T = Σ v_j(d_j): "counit surjective", "evaluation" or "fails".
std::string unit_hypothesis(const ExtContext& e);

struct TheoremReport {
  std::string name;
  bool applicable = false;
  bool holds = false;           // conclusion, or agreement of both sides
  bool disagreement = false;    // a proved biconditional failed: a bug
  std::string grade;            // certified, on-samples or inconclusive
  std::vector<std::pair<std::string, std::string>> facts;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void fact(std::string key, bool value) { fact(std::move(key), std::string(value ? "true" : "false")); }
  void fact(std::string key, size_t value) { fact(std::move(key), std::to_string(value)); }
  const std::string* get(const std::string& key) const;
};

TheoremReport verify_weak_structure(const ExtContext& e, const std::vector<ComodulePtr>& samples);
TheoremReport verify_strong_structure(const ExtContext& e, const std::vector<BimodulePtr>& t_samples,
                                      const std::vector<ComodulePtr>& c_samples);
TheoremReport verify_surjectivity_thm(const ExtContext& e);
TheoremReport verify_diamond_to_triangle(const ExtContext& e);
TheoremReport verify_cor_jJ(const ExtContext& e, const std::optional<Matrix>& j = std::nullopt,
                            const std::optional<Matrix>& jtilde = std::nullopt);
TheoremReport verify_fgp_corollary(const ExtContext& e);
// With C left f.g. projective: 𝕄(Σ) strict iff Σ is Galois, right f.g.
// projective and the adjunction is an equivalence on the samples.
TheoremReport verify_strictness_criterion(const ComodulePtr& sigma, const std::vector<ComodulePtr>& c_samples);
// Right T-modules T and T ⊕ T.
std::vector<BimodulePtr> default_t_samples(const EndAlgebra& end);

}  // namespace corext
