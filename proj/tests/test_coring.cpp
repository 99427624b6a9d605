#include "corext/coring.hpp"
#include "corext/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corext;
using namespace corext::testing;

TEST_CASE("trivial coring") {
  for (Field f : {QQ, Field::prime(7)}) {
    auto a = sqrt2_field(f);
    auto c = trivial_coring(a);
    CHECK(c->dim() == 2);
    auto dr = dual_ring(c);
    CHECK(dr.algebra->dim() == 2);
    CHECK_NOTHROW(dr.algebra->validate());
    CHECK_NOTHROW((AlgebraMap{a, dr.algebra, dr.unit_map}).validate());
    auto reg = regular_comodule(c);
    CHECK(endomorphism_algebra(*reg).algebra->dim() == 2);
    auto g = grouplike_comodule({c, a->unit()});
    // ρ = id once A ⊗_A A is identified with A.
    CHECK((apply_counit_right(g->with_coring(), *c) * g->coaction()).is_identity());
    CHECK(rank(g->coaction()) == 2);
  }
  auto c = trivial_coring(FiniteAlgebra::ground(QQ));
  CHECK(dual_ring(c).algebra->dim() == 1);
  CHECK(colinear_homs(*regular_comodule(c), *regular_comodule(c)).dim() == 1);
}

TEST_CASE("sweedler coring") {
  auto a = sqrt2_field();
  auto c = sweedler(a);
  CHECK(c->dim() == 4);
  for (Side side : {Side::left, Side::right}) {
    auto dr = dual_ring(c, side);
    CHECK(dr.algebra->dim() == 4);
    CHECK_NOTHROW(dr.algebra->validate());
    CHECK_NOTHROW((AlgebraMap{a, dr.algebra, dr.unit_map}).validate());
  }
  Grouplike g{c, one_tensor_one(a)};
  CHECK_NOTHROW(validate_grouplike(g));
  auto sigma = grouplike_comodule(g);
  // ρ(a) = 1 ⊗ a
  for (size_t i = 0; i < 2; ++i)
    CHECK(sigma->with_coring().lift(sigma->coaction().column(i)) ==
          sigma->with_coring().lift(sigma->with_coring().pure(a->unit(), kron(a->unit(), a->basis(i)))));
  auto t = endomorphism_algebra(*sigma);
  CHECK(t.algebra->dim() == 1);
  CHECK_NOTHROW(t.sigma_over->validate());

  // The counit acts as the identity for the dual action.
  auto dr = dual_ring(c);
  auto act = dual_action(*sigma, dr);
  CHECK_NOTHROW(act->validate());
  CHECK(act->right_action_by(dr.maps.coords(c->counit(), "ε")).is_identity());

  CHECK_THROWS_AS(validate_grouplike({c, kron(a->unit(), a->basis(1))}), AxiomError);
}

TEST_CASE("colinear maps are linear over the dual ring") {
  auto a = sqrt2_field();
  auto c = sweedler(a);
  auto dr = dual_ring(c);
  auto sigma = grouplike_comodule({c, one_tensor_one(a)});
  auto reg = with_left_structure(regular_comodule(c), FiniteAlgebra::ground(QQ), {Matrix::identity(4, QQ)});
  std::vector<ComodulePtr> ms = {sigma, reg, direct_sum(sigma, reg),
                                 cofree_comodule(free_right_module(a, 1), c)};
  for (const auto& m : ms)
    for (const auto& n : ms) {
      auto am = dual_action(*m, dr), an = dual_action(*n, dr);
      HomSpace h = colinear_homs(*m, *n);
      for (const auto& phi : h.elements())
        CHECK(is_zero(linearity_defect(*am, *an, {false, true}, phi)));
    }
  CHECK(colinear_homs(*sigma, *reg).dim() >= 1);
}

TEST_CASE("cofree and sub comodules") {
  auto a = sqrt2_field();
  auto c = sweedler(a);
  auto cof = cofree_comodule(free_right_module(a, 2), c);
  CHECK(cof->dim() == 8);
  auto zero = zero_comodule(c, FiniteAlgebra::ground(QQ));
  CHECK(zero->dim() == 0);
  auto sigma = grouplike_comodule({c, one_tensor_one(a)});
  auto sum = direct_sum(sigma, sigma);
  // The diagonal copy of A is a subcomodule; a coordinate line is not.
  std::vector<Vec> diag = {concat(a->basis(0), a->basis(0)), concat(a->basis(1), a->basis(1))};
  auto sub = subcomodule(sum, Subspace::span(4, diag, QQ), "diag");
  CHECK(sub->dim() == 2);
  CHECK_THROWS_AS(subcomodule(sum, Subspace::span(4, {unit_vec(4, 0, QQ)}, QQ), "line"), AxiomError);
}

TEST_CASE("broken corings are rejected") {
  auto a = sqrt2_field();
  auto c = sweedler(a);
  Matrix eps = c->counit();
  eps(0, 0) = eps(0, 0) + Scalar(1);
  CHECK_THROWS_AS(Coring("bad", c->carrier(), c->coproduct(), eps), AxiomError);
  Matrix delta = c->coproduct();
  delta(0, 0) = delta(0, 0) + Scalar(1);
  CHECK_THROWS_AS(Coring("bad", c->carrier(), delta, c->counit()), AxiomError);
  auto sigma = grouplike_comodule({c, one_tensor_one(a)});
  Matrix rho = sigma->coaction();
  rho(1, 1) = rho(1, 1) + Scalar(1);
  CHECK_THROWS_AS(Comodule("bad", c, sigma->carrier(), rho), AxiomError);
}

TEST_CASE("coopposite coring") {
  auto a = sqrt2_field();
  auto c = sweedler(a);
  auto cop = coopposite(c);
  CHECK(cop->dim() == 4);
  CHECK(cop->base()->dim() == 2);
  CHECK(coopposite(trivial_coring(diagonal_algebra(QQ, 2)))->dim() == 2);
}
