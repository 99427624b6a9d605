#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corext/extension.hpp"

namespace corext {

using GroupTable = std::vector<std::vector<size_t>>;  // identity at index 0

GroupTable cyclic_group(size_t n);
std::vector<size_t> group_inverses(const GroupTable& g);

// A k-coalgebra is a coring over the ground algebra.
CoringPtr make_coalgebra(std::string name, Field f, size_t dim, const Matrix& coproduct_ambient, Matrix counit);
// k(G): Δ(u_σ) = Σ_τ u_τ ⊗ u_{τ⁻¹σ}, ε(u_σ) = δ_{σ,1}.
CoringPtr dual_group_coalgebra(Field f, const GroupTable& g, std::string name = "k(G)");
// k^n with every basis vector grouplike.
CoringPtr grouplike_coalgebra(Field f, size_t n, std::string name = "k^n");

struct Bialgebra {
  AlgebraPtr algebra;
  CoringPtr coalgebra;  // on the same basis
  std::optional<Matrix> antipode;
};
// Δ and ε are algebra maps; the antipode, when present, is checked.
void validate_bialgebra(const Bialgebra& h);
Bialgebra group_bialgebra(Field f, const GroupTable& g, std::string name = "kG");

// ψ : D ⊗_L A → A ⊗_L D for an L-ring A and an L-coring D, in balanced
// tensor coordinates.
struct EntwiningStructure {
  AlgebraMap ring;  // L → A
  CoringPtr coring;
  Matrix psi;
  bool weak = false;

  const AlgebraPtr& algebra() const { return ring.target; }
  const AlgebraPtr& base() const { return ring.source; }
};
// A as an L-L bimodule through the ring map.
BimodulePtr ring_bimodule(const AlgebraMap& ring);
// Throws AxiomError naming the failing law and basis elements.
void check_entwining(const EntwiningStructure& e);
// ψ from its values on C ⊗_k-style lifts: psi_ambient has rows A ⊗_k D
// (index a * dim D + d) and columns D ⊗_k A (index d * dim A + a).
EntwiningStructure entwining_from_lift(const AlgebraMap& ring, const CoringPtr& d, const Matrix& psi_ambient,
                                       bool weak = false);

struct EntwiningCoring {
  EntwiningStructure entwining;
  CoringPtr coring;
  CoringExtension ext;
  TensorPtr a_d;     // A ⊗_L D
  Matrix inclusion;  // C → A ⊗_L D
  Matrix projection; // A ⊗_L D → C, a ⊗ d ↦ a ψ(d ⊗ 1)

  // ψ(x ⊗ 1) for a grouplike x of D.
  Grouplike grouplike(const Vec& x) const;
  // c ↦ a λ̄(d) for c = a 1_ψ ⊗ d^ψ, as a dim A × dim C matrix.
  Matrix jtilde(const Matrix& lambda_bar) const;
};
EntwiningCoring entwining_coring(const EntwiningStructure& e);
// The coring on the image of a ⊗ d ↦ a 1_ψ ⊗ d^ψ; L must be k.
EntwiningCoring weak_entwining_coring(const EntwiningStructure& e);

// d ⊗ a ↦ a_[0] ⊗ d a_[1] for a right H-comodule algebra (coaction on
// A ⊗_k H, index a * dim H + h).
EntwiningStructure hopf_entwining(const Bialgebra& h, const AlgebraPtr& a, const Matrix& coaction);

// alpha[σ] is a ↦ α_σ(a e_{σ⁻¹}) on all of A.
struct PartialGroupAction {
  GroupTable group;
  AlgebraPtr algebra;
  std::vector<Vec> idempotents;
  std::vector<Matrix> alpha;
};
void check_partial_action(const PartialGroupAction& pa);

struct PartialActionCoring {
  PartialGroupAction action;
  CoringPtr coring;
  Matrix tau;  // a ν_σ ↦ Σ_τ a ν_τ ⊗ u_{τ⁻¹σ} on C ⊗_k k(G)
  CoringPtr dual_group;
  // The k(G)-extension, absent when tau fails the bicomodule axioms (it
  // does whenever some e_σ ≠ 1); the failure is kept in ext_error.
  std::optional<CoringExtension> ext;
  std::string ext_error;
  Grouplike grouplike;  // Σ_σ ν_σ
  std::vector<Subspace> components;  // A e_σ inside A
  std::vector<size_t> offsets;

  // a ν_σ in coring coordinates.
  Vec nu(size_t sigma, const Vec& a) const;
};
PartialActionCoring partial_action_coring(const PartialGroupAction& pa);

struct SweedlerCoring {
  AlgebraMap inclusion;
  CoringPtr coring;
  Grouplike grouplike;  // 1 ⊗ 1
};
SweedlerCoring sweedler_coring(const AlgebraMap& inclusion);

// An extension that failed validation, kept so that it can be emitted.
struct RejectedExtension {
  CoringPtr outer;
  BimodulePtr inner_al;
  Matrix tau_ambient;  // C ⊗_k D
  std::optional<AlgebraMap> split;
};

// Bundled example, ready for every check in the library.
struct Fixture {
  std::string name;
  std::string description;
  CoringPtr coring;
  std::optional<CoringExtension> ext;
  std::string ext_error;  // why the expected extension was rejected
  std::optional<RejectedExtension> rejected;
  ComodulePtr sigma;  // left structure over the base of the extension
  std::vector<ComodulePtr> samples;
  std::optional<Matrix> lambda;      // D → A
  std::optional<Matrix> lambda_bar;  // D → A
  bool has_entwining = false;
  EntwiningCoring entwining;
};

std::vector<std::string> fixture_names();
// Throws UsageError for unknown names.
Fixture make_fixture(const std::string& name, Field f = Field::rationals());

}  // namespace corext
