#include "corext/errors.hpp"
#include "corext/zoo.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corext;
using namespace corext::testing;

namespace {

Matrix flip(Field f, size_t m, size_t n) {
  // x ⊗ y ↦ y ⊗ x from k^m ⊗ k^n
  Matrix out(n * m, m * n, f);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) out(j * m + i, i * n + j) = Scalar(1);
  return out;
}

}  // namespace

TEST_CASE("groups and coalgebras") {
  auto g = cyclic_group(3);
  auto inv = group_inverses(g);
  CHECK(inv == std::vector<size_t>{0, 2, 1});
  auto kg = dual_group_coalgebra(QQ, g);
  CHECK(kg->dim() == 3);
  // u_1 ↦ Σ_τ u_τ ⊗ u_{τ⁻¹}
  Vec w = kg->coproduct_lift(0);
  CHECK(w[0 * 3 + 0] == Scalar(1));
  CHECK(w[1 * 3 + 2] == Scalar(1));
  CHECK(w[2 * 3 + 1] == Scalar(1));
  CHECK(w[1 * 3 + 1] == Scalar(0));
  CHECK(grouplike_coalgebra(QQ, 2)->dim() == 2);
}

TEST_CASE("bialgebras") {
  for (Field f : {QQ, Field::prime(7)}) {
    auto h = group_bialgebra(f, cyclic_group(3), "kC3");
    CHECK_NOTHROW(validate_bialgebra(h));
    // S = id is not an antipode for C3
    h.antipode = Matrix::identity(3, f);
    CHECK_THROWS_AS(validate_bialgebra(h), AxiomError);
  }
}

TEST_CASE("flip entwining of k with a coalgebra gives the coalgebra") {
  auto k = FiniteAlgebra::ground(QQ);
  auto d = dual_group_coalgebra(QQ, cyclic_group(2));
  auto ec = entwining_coring(entwining_from_lift(unit_map(k), d, flip(QQ, 2, 1)));
  CHECK(ec.coring->dim() == 2);
  CHECK(ec.coring->coproduct() == d->coproduct());
  CHECK(ec.coring->counit() == d->counit());
  CHECK(ec.ext.purity == Purity::pure_by_split);
}

TEST_CASE("hopf entwining") {
  for (Field f : {QQ, Field::prime(7)}) {
    auto h = group_bialgebra(f, cyclic_group(3), "kC3");
    Matrix rho(9, 3, f);
    for (size_t i = 0; i < 3; ++i) rho.set_column(i, h.coalgebra->coproduct_lift(i));
    auto ec = entwining_coring(hopf_entwining(h, h.algebra, rho));
    CHECK(ec.coring->dim() == 9);
    auto g = ec.grouplike(h.algebra->unit());
    CHECK(g.element == kron(h.algebra->unit(), h.algebra->unit()));
  }
  // trivial Hopf algebra
  auto h = group_bialgebra(QQ, cyclic_group(1), "k");
  auto a = sqrt2_field();
  Matrix rho = Matrix::identity(2, QQ);
  auto ec = entwining_coring(hopf_entwining(h, a, rho));
  CHECK(ec.coring->dim() == 2);
  CHECK(ec.coring->counit().is_identity());
  // a coaction that is not an algebra map
  auto h2 = group_bialgebra(QQ, cyclic_group(2), "kC2");
  Matrix bad(4, 2, QQ);
  bad.set_column(0, kron(unit_vec(2, 0, QQ), unit_vec(2, 0, QQ)));
  bad.set_column(1, kron(unit_vec(2, 1, QQ), unit_vec(2, 0, QQ)));
  Matrix twisted = bad;
  twisted.set_column(1, kron(unit_vec(2, 1, QQ), unit_vec(2, 1, QQ)));
  twisted.set_column(0, kron(unit_vec(2, 0, QQ), unit_vec(2, 1, QQ)));
  CHECK_THROWS_AS(hopf_entwining(h2, h2.algebra, twisted), AxiomError);
  CHECK_NOTHROW(hopf_entwining(h2, h2.algebra, bad));
}

TEST_CASE("entwining over a base algebra") {
  auto l = diagonal_algebra(QQ, 2, "L");
  AlgebraMap id{l, l, Matrix::identity(2, QQ)};
  auto d = trivial_coring(l);
  auto e = entwining_from_lift(id, d, flip(QQ, 2, 2));
  auto ec = entwining_coring(e);
  CHECK(ec.coring->dim() == 2);
  CHECK(ec.ext.is_pure());
}

TEST_CASE("broken entwinings name the failing law") {
  auto k = FiniteAlgebra::ground(QQ);
  auto d = grouplike_coalgebra(QQ, 2);
  Matrix psi = Matrix::identity(2, QQ);
  psi(1, 1) = Scalar(2);
  try {
    entwining_from_lift(unit_map(k), d, psi);
    FAIL("accepted");
  } catch (const AxiomError& e) {
    CHECK(e.axiom() == "psi respects multiplication");
  }
  psi(1, 1) = Scalar(0);
  try {
    entwining_from_lift(unit_map(k), d, psi);
    FAIL("accepted");
  } catch (const AxiomError& e) {
    CHECK(e.axiom() == "psi respects unit");
  }
}

TEST_CASE("weak entwining coring") {
  auto k = FiniteAlgebra::ground(QQ);
  auto d = grouplike_coalgebra(QQ, 2);
  Matrix psi = Matrix::identity(2, QQ);
  psi(1, 1) = Scalar(0);
  auto ec = weak_entwining_coring(entwining_from_lift(unit_map(k), d, psi, true));
  CHECK(ec.coring->dim() == 1);
  CHECK(ec.inclusion.column(0) == unit_vec(2, 0, QQ));
  CHECK(ec.ext.is_pure());
  // λ = (1, 1) is strict and gives back D
  auto strict = entwining_from_lift(unit_map(k), d, Matrix::identity(2, QQ), true);
  auto full = weak_entwining_coring(strict);
  CHECK(full.coring->dim() == 2);
  strict.weak = false;
  auto plain = entwining_coring(strict);
  CHECK(full.coring->coproduct() == plain.coring->coproduct());
  CHECK(full.coring->counit() == plain.coring->counit());
  CHECK(full.ext.tau == plain.ext.tau);
}

TEST_CASE("partial actions") {
  auto e4 = make_fixture("E4");
  CHECK(e4.coring->dim() == 5);
  CHECK(e4.sigma->dim() == 3);
  auto a = diagonal_algebra(QQ, 3, "k^3");
  PartialGroupAction pa{cyclic_group(2), a, {a->unit(), Vec{1, 1, 0}},
                        {Matrix::identity(3, QQ), Matrix::identity(3, QQ)}};
  pa.alpha[1](2, 2) = Scalar(0);
  auto pc = partial_action_coring(pa);
  // ε(a ν_σ) = a δ_{σ,1}
  for (size_t i = 0; i < 3; ++i) {
    CHECK(pc.coring->counit() * pc.nu(0, a->basis(i)) == a->basis(i));
    CHECK(is_zero(pc.coring->counit() * pc.nu(1, a->basis(i))));
  }
  // trivial group gives the trivial coring
  PartialGroupAction triv{cyclic_group(1), a, {a->unit()}, {Matrix::identity(3, QQ)}};
  auto tc = partial_action_coring(triv);
  CHECK(tc.coring->dim() == 3);
  CHECK(tc.coring->counit().is_identity());
  // α not respecting composition
  PartialGroupAction bad{cyclic_group(3), a, {a->unit(), a->unit(), a->unit()},
                         {Matrix::identity(3, QQ), Matrix::identity(3, QQ), Matrix::identity(3, QQ)}};
  bad.alpha[1] = Matrix(3, 3, QQ);
  bad.alpha[1](1, 0) = bad.alpha[1](0, 1) = bad.alpha[1](2, 2) = Scalar(1);
  bad.alpha[2] = bad.alpha[1];
  CHECK_THROWS_AS(check_partial_action(bad), AxiomError);
  auto swap = make_fixture("swap");
  CHECK(swap.coring->dim() == 4);
  CHECK(swap.ext.has_value());
  CHECK(make_fixture("C3-degenerate").coring->dim() == 4);
}

TEST_CASE("a proper partial action does not make k(G) an extension") {
  auto a = diagonal_algebra(QQ, 3, "k^3");
  PartialGroupAction pa{cyclic_group(2), a, {a->unit(), Vec{1, 1, 0}},
                        {Matrix::identity(3, QQ), Matrix(3, 3, QQ)}};
  pa.alpha[1](0, 1) = pa.alpha[1](1, 0) = Scalar(1);
  auto pc = partial_action_coring(pa);
  CHECK_FALSE(pc.ext.has_value());
  CHECK(pc.ext_error.find("tau coassociativity") != std::string::npos);
  // τ(e_3 ν_1) = e_3 ν_1 ⊗ u_1 since e_3 e_s = 0, while (C ⊗ Δ)τ(e_3 ν_1)
  // also contains e_3 ν_1 ⊗ u_s ⊗ u_s.
  Vec x = pc.nu(0, a->basis(2));
  Vec t = pc.tau * x;
  CHECK(t == kron(x, unit_vec(2, 0, QQ)));
  Vec w = pc.dual_group->coproduct_lift(0);
  CHECK(w[1 * 2 + 1] == Scalar(1));
}

TEST_CASE("sweedler corings") {
  auto a = sqrt2_field();
  AlgebraMap id{a, a, Matrix::identity(2, QQ)};
  CHECK(sweedler_coring(id).coring->dim() == 2);
  CHECK(sweedler_coring(unit_map(a)).coring->dim() == 4);
  auto l = diagonal_algebra(QQ, 2);
  auto sw = sweedler_coring(unit_map(l));
  CHECK(sw.coring->dim() == 4);
  CHECK(sw.grouplike.element.size() == 4);
}

TEST_CASE("every fixture builds over Q and F7") {
  for (Field f : {QQ, Field::prime(7)})
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      auto fx = make_fixture(name, f);
      CHECK(fx.coring);
      CHECK(fx.sigma);
      bool partial = name == "E4" || name == "C3-degenerate";
      CHECK(fx.ext.has_value() == !partial);
      if (fx.ext) CHECK(fx.ext->is_pure());
    }
  CHECK(make_fixture("E2").coring->dim() == 4);
  CHECK(make_fixture("E3").coring->dim() == 4);
  CHECK(make_fixture("E5").coring->dim() == 1);
  CHECK_THROWS_AS(make_fixture("E9"), UsageError);
}
