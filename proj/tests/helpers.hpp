#pragma once

#include "corext/coring.hpp"
#include "doctest.h"

namespace corext::testing {

inline const Field QQ = Field::rationals();

inline AlgebraPtr sqrt2_field(Field f = QQ) { return truncated_polynomial_algebra(f, Vec{f.from_int(-2), f.zero()}, "A"); }

// A ⊗_k A with Δ(a ⊗ b) = a ⊗ 1 ⊗ b, ε(a ⊗ b) = ab.
inline CoringPtr sweedler(const AlgebraPtr& a) {
  Field f = a->field();
  auto k = FiniteAlgebra::ground(f);
  auto ra = regular_bimodule(a);
  auto t = tensor_over(forget_right(ra), k, forget_left(ra));
  REQUIRE(t->space().relations.dim() == 0);
  const size_t n = a->dim(), d = n * n;
  Matrix amb(d * d, d, f), eps(n, d, f);
  for (size_t s = 0; s < n; ++s)
    for (size_t u = 0; u < n; ++u) {
      amb.set_column(s * n + u, kron(kron(a->basis(s), a->unit()), kron(a->unit(), a->basis(u))));
      eps.set_column(s * n + u, a->multiply(a->basis(s), a->basis(u)));
    }
  return Coring::from_lift("AxA", t->bimodule(), amb, eps);
}

inline Vec one_tensor_one(const AlgebraPtr& a) { return kron(a->unit(), a->unit()); }

}  // namespace corext::testing
