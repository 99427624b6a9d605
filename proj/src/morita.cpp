#include "corext/morita.hpp"

#include "corext/errors.hpp"

namespace corext {

namespace {

// The matrix of op on a space given by its basis, in that space's coordinates.
Matrix in_coords(const HomSpace& h, const std::function<Matrix(const Matrix&)>& op, const std::string& what) {
  Matrix out(h.dim(), h.dim(), h.field());
  for (size_t s = 0; s < h.dim(); ++s) out.set_column(s, h.coords(op(h.element(s)), what));
  return out;
}

std::vector<Vec> coaction_lifts(const Comodule& m) {
  std::vector<Vec> out;
  for (size_t x = 0; x < m.dim(); ++x) out.push_back(m.coaction_lift(x));
  return out;
}

std::vector<Vec> coproduct_lifts(const Coring& c) {
  std::vector<Vec> out;
  for (size_t x = 0; x < c.dim(); ++x) out.push_back(c.coproduct_lift(x));
  return out;
}

}  // namespace

void MoritaContext::validate() const {
  bim12->validate();
  bim21->validate();
  const auto& b1 = *t21_12->bimodule();
  const auto& b2 = *t12_21->bimodule();
  for (size_t i = 0; i < alg2->dim(); ++i) {
    if (conn1 * b1.left_action(i) != alg2->left_mul(i) * conn1) throw AxiomError("conn1 left linear", "");
    if (conn1 * b1.right_action(i) != alg2->right_mul(i) * conn1) throw AxiomError("conn1 right linear", "");
  }
  for (size_t i = 0; i < alg1->dim(); ++i) {
    if (conn2 * b2.left_action(i) != alg1->left_mul(i) * conn2) throw AxiomError("conn2 left linear", "");
    if (conn2 * b2.right_action(i) != alg1->right_mul(i) * conn2) throw AxiomError("conn2 right linear", "");
  }
  Field f = alg1->field();
  const size_t d12 = bim12->dim(), d21 = bim21->dim();
  std::vector<std::vector<Vec>> c1(d21, std::vector<Vec>(d12)), c2(d12, std::vector<Vec>(d21));
  for (size_t q = 0; q < d21; ++q)
    for (size_t p = 0; p < d12; ++p) {
      c1[q][p] = pair1(unit_vec(d21, q, f), unit_vec(d12, p, f));
      c2[p][q] = pair2(unit_vec(d12, p, f), unit_vec(d21, q, f));
    }
  for (size_t p = 0; p < d12; ++p)
    for (size_t q = 0; q < d21; ++q) {
      Matrix l12 = bim12->left_action_by(c2[p][q]);
      for (size_t p2 = 0; p2 < d12; ++p2)
        if (l12.column(p2) != bim12->right_action_by(c1[q][p2]).column(p))
          throw AxiomError("mixed associativity", "conn2(p⊗q)p' != p conn1(q⊗p')");
    }
  for (size_t q = 0; q < d21; ++q)
    for (size_t p = 0; p < d12; ++p) {
      Matrix l21 = bim21->left_action_by(c1[q][p]);
      for (size_t q2 = 0; q2 < d21; ++q2)
        if (l21.column(q2) != bim21->right_action_by(c2[p][q2]).column(q))
          throw AxiomError("mixed associativity", "conn1(q⊗p)q' != q conn2(p⊗q')");
    }
}

MoritaContext make_context(AlgebraPtr alg1, AlgebraPtr alg2, BimodulePtr bim12, BimodulePtr bim21,
                           const Matrix& conn1_ambient, const Matrix& conn2_ambient) {
  MoritaContext m;
  m.alg1 = std::move(alg1);
  m.alg2 = std::move(alg2);
  m.bim12 = std::move(bim12);
  m.bim21 = std::move(bim21);
  m.t21_12 = tensor_over(m.bim21, m.alg1, m.bim12);
  m.t12_21 = tensor_over(m.bim12, m.alg2, m.bim21);
  m.conn1 = m.t21_12->descend(conn1_ambient, "first connecting map");
  m.conn2 = m.t12_21->descend(conn2_ambient, "second connecting map");
  m.validate();
  return m;
}

Vec q_defect(const Comodule& sigma, const DualRing& dual, const Matrix& q) {
  const Coring& c = *sigma.coring();
  const size_t ds = sigma.dim(), dc = c.dim();
  Field f = c.field();
  auto rho = coaction_lifts(sigma);
  auto delta = coproduct_lifts(c);
  std::vector<Matrix> qx;  // q(e_x) as a map C → A
  for (size_t x = 0; x < ds; ++x) qx.push_back(dual.element(q.column(x)));
  Vec out;
  for (size_t x = 0; x < ds; ++x)
    for (size_t cc = 0; cc < dc; ++cc) {
      Vec lhs = zero_vec(dc, f), rhs = zero_vec(dc, f);
      for (size_t p = 0; p < ds; ++p)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = rho[x][p * dc + s];
          if (!w.is_zero()) axpy(lhs, w, c.carrier()->left_action_by(qx[p].column(cc)).column(s));
        }
      for (size_t r = 0; r < dc; ++r)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& v = delta[cc][r * dc + s];
          if (!v.is_zero()) axpy(rhs, v, c.carrier()->right_action_by(qx[x].column(s)).column(r));
        }
      Vec d = sub(lhs, rhs);
      out.insert(out.end(), d.begin(), d.end());
    }
  return out;
}

Vec switched_defect(const Comodule& sigma, const DualModule& sd, const Matrix& qs) {
  const Coring& c = *sigma.coring();
  const size_t ds = sigma.dim(), dc = c.dim();
  Field f = c.field();
  auto rho = coaction_lifts(sigma);
  auto delta = coproduct_lifts(c);
  std::vector<Matrix> xi;  // q'(c) as a map Σ → A
  for (size_t cc = 0; cc < dc; ++cc) xi.push_back(sd.maps.combine(qs.column(cc)));
  Vec out;
  for (size_t x = 0; x < ds; ++x)
    for (size_t cc = 0; cc < dc; ++cc) {
      Vec lhs = zero_vec(dc, f), rhs = zero_vec(dc, f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& v = delta[cc][r * dc + s];
          if (!v.is_zero()) axpy(lhs, v, c.carrier()->right_action_by(xi[s].column(x)).column(r));
        }
      for (size_t p = 0; p < ds; ++p)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = rho[x][p * dc + s];
          if (!w.is_zero()) axpy(rhs, w, c.carrier()->left_action_by(xi[cc].column(p)).column(s));
        }
      Vec d = sub(lhs, rhs);
      out.insert(out.end(), d.begin(), d.end());
    }
  return out;
}

QModule compute_Q(const Comodule& sigma, const DualRing& dual, const EndAlgebra& end) {
  QModule out;
  const Coring& c = *sigma.coring();
  const FiniteAlgebra& cs = *dual.algebra;
  Field f = c.field();
  const size_t ds = sigma.dim(), dc = c.dim(), n = cs.dim();
  auto k = FiniteAlgebra::ground(f);

  // *C as a right A-module through its unit map.
  std::vector<Matrix> ract;
  for (size_t i = 0; i < c.base()->dim(); ++i) ract.push_back(cs.right_mul_by(dual.unit_map.column(i)));
  auto cstar_a = make_bimodule("*C", k, c.base(), n, {Matrix::identity(n, f)}, ract);
  HomSpace h = hom_space(*forget_left(sigma.carrier()), *cstar_a, {false, true});
  out.maps = h.refine([&](const Matrix& q) { return q_defect(sigma, dual, q); });

  std::vector<Matrix> left, right;
  for (size_t i = 0; i < n; ++i)
    left.push_back(in_coords(out.maps, [&](const Matrix& q) { return cs.left_mul(i) * q; }, "f q"));
  for (const auto& t : end.maps.elements())
    right.push_back(in_coords(out.maps, [&](const Matrix& q) { return q * t; }, "q t"));
  out.bimodule = make_bimodule("Q", dual.algebra, end.algebra, out.maps.dim(), left, right);
  out.bimodule->validate();

  out.sigma_dual = dual_bimodule(sigma.carrier());
  const DualModule& sd = out.sigma_dual;
  HomSpace hs = hom_space(*forget_right(c.carrier()), *forget_right(sd.bimodule), {true, false});
  out.switched = hs.refine([&](const Matrix& qs) { return switched_defect(sigma, sd, qs); });

  out.to_switched = Matrix(out.switched.dim(), out.maps.dim(), f);
  for (size_t j = 0; j < out.maps.dim(); ++j) {
    const Matrix& q = out.maps.element(j);
    Matrix qs(sd.maps.dim(), dc, f);
    for (size_t cc = 0; cc < dc; ++cc) {
      Matrix xi(c.base()->dim(), ds, f);
      for (size_t x = 0; x < ds; ++x) xi.set_column(x, dual.element(q.column(x)).column(cc));
      qs.set_column(cc, sd.maps.coords(xi, "q(−)(c)"));
    }
    out.to_switched.set_column(j, out.switched.coords(qs, "switched Q"));
  }
  if (out.switched.dim() != out.maps.dim() || rank(out.to_switched) != out.maps.dim())
    throw StructuralError("switching arguments does not identify Q with Q'");
  return out;
}

ComoduleContext context_M(const ComodulePtr& sigma) {
  ComoduleContext m;
  m.sigma = sigma;
  m.dual = dual_ring(sigma->coring());
  m.end = endomorphism_algebra(*sigma);
  auto act = dual_action(*sigma, m.dual);
  m.sigma_tc = make_bimodule(sigma->name(), m.end.algebra, m.dual.algebra, sigma->dim(), m.end.maps.elements(),
                             act->right_actions());
  m.q = compute_Q(*sigma, m.dual, m.end);

  Field f = sigma->field();
  const size_t ds = sigma->dim(), dq = m.q.maps.dim(), n = m.dual.algebra->dim();
  Matrix c1(n, dq * ds, f), c2(m.end.maps.dim(), ds * dq, f);
  for (size_t j = 0; j < dq; ++j) {
    const Matrix& q = m.q.maps.element(j);
    for (size_t x = 0; x < ds; ++x) {
      c1.set_column(j * ds + x, q.column(x));
      // y ↦ x q(y)
      Matrix t(ds, ds, f);
      for (size_t y = 0; y < ds; ++y) t.set_column(y, m.sigma_tc->right_action_by(q.column(y)).column(x));
      c2.set_column(x * dq + j, m.end.maps.coords(t, "x q(−)"));
    }
  }
  m.ctx = make_context(m.end.algebra, m.dual.algebra, m.sigma_tc, m.q.bimodule, c1, c2);
  return m;
}

ModuleContext context_N(const ComoduleContext& m) {
  ModuleContext out;
  Field f = m.sigma->field();
  const FiniteAlgebra& cs = *m.dual.algebra;
  auto k = FiniteAlgebra::ground(f);
  const size_t ds = m.sigma->dim(), n = cs.dim();
  auto sig = forget_left(m.sigma_tc);
  out.end_maps = hom_space(*sig, *sig, {false, true});
  auto end_alg = algebra_on_matrices(
      "End(" + m.sigma->name() + ")", out.end_maps.elements(), [](const Matrix& x, const Matrix& y) { return x * y; },
      Matrix::identity(ds, f));
  out.hom_maps = hom_space(*sig, *forget_left(regular_bimodule(m.dual.algebra)), {false, true});

  std::vector<Matrix> left, right;
  for (size_t i = 0; i < n; ++i)
    left.push_back(in_coords(out.hom_maps, [&](const Matrix& q) { return cs.left_mul(i) * q; }, "f q"));
  for (const auto& t : out.end_maps.elements())
    right.push_back(in_coords(out.hom_maps, [&](const Matrix& q) { return q * t; }, "q t"));
  auto bim21 = make_bimodule("Hom(S,*C)", m.dual.algebra, end_alg, out.hom_maps.dim(), left, right);
  auto bim12 = with_left(sig, end_alg, out.end_maps.elements());

  const size_t dq = out.hom_maps.dim();
  Matrix c1(n, dq * ds, f), c2(out.end_maps.dim(), ds * dq, f);
  for (size_t j = 0; j < dq; ++j) {
    const Matrix& q = out.hom_maps.element(j);
    for (size_t x = 0; x < ds; ++x) {
      c1.set_column(j * ds + x, q.column(x));
      Matrix t(ds, ds, f);
      for (size_t y = 0; y < ds; ++y) t.set_column(y, sig->right_action_by(q.column(y)).column(x));
      c2.set_column(x * dq + j, out.end_maps.coords(t, "x q(−)"));
    }
  }
  out.ctx = make_context(end_alg, m.dual.algebra, bim12, bim21, c1, c2);
  return out;
}

ContextMorphism morphism_M_to_N(const ComoduleContext& m, const ModuleContext& n) {
  ContextMorphism out;
  Field f = m.sigma->field();
  const size_t dt = m.end.maps.dim(), dq = m.q.maps.dim(), ds = m.sigma->dim();
  out.end_inclusion = Matrix(n.end_maps.dim(), dt, f);
  for (size_t i = 0; i < dt; ++i) out.end_inclusion.set_column(i, n.end_maps.coords(m.end.maps.element(i), "T ⊂ End"));
  out.q_inclusion = Matrix(n.hom_maps.dim(), dq, f);
  for (size_t j = 0; j < dq; ++j) out.q_inclusion.set_column(j, n.hom_maps.coords(m.q.maps.element(j), "Q ⊂ Hom"));

  bool ok = true;
  try {
    AlgebraMap{m.end.algebra, n.ctx.alg1, out.end_inclusion}.validate();
  } catch (const AxiomError&) {
    ok = false;
  }
  const auto& qm = *m.ctx.bim21;
  const auto& qn = *n.ctx.bim21;
  for (size_t i = 0; i < m.dual.algebra->dim() && ok; ++i)
    ok = qn.left_action(i) * out.q_inclusion == out.q_inclusion * qm.left_action(i);
  for (size_t t = 0; t < dt && ok; ++t)
    ok = qn.right_action_by(out.end_inclusion.column(t)) * out.q_inclusion == out.q_inclusion * qm.right_action(t);
  for (size_t t = 0; t < dt && ok; ++t)
    ok = n.ctx.bim12->left_action_by(out.end_inclusion.column(t)) == m.ctx.bim12->left_action(t);
  for (size_t j = 0; j < dq && ok; ++j)
    for (size_t x = 0; x < ds && ok; ++x) {
      Vec qj = unit_vec(dq, j, f), ex = unit_vec(ds, x, f);
      ok = n.ctx.pair1(out.q_inclusion * qj, ex) == m.ctx.pair1(qj, ex) &&
           n.ctx.pair2(ex, out.q_inclusion * qj) == out.end_inclusion * m.ctx.pair2(ex, qj);
    }
  out.commutes = ok;
  out.coring_fgp = fgp_check(*m.sigma->coring()->carrier(), Side::left).has_value();
  out.bijective = out.end_inclusion.rows() == dt && rank(out.end_inclusion) == dt &&
                  out.q_inclusion.rows() == dq && rank(out.q_inclusion) == dq;
  return out;
}

Surjectivity connecting_surjective(const MoritaContext& ctx, int which) {
  if (which != 1 && which != 2) throw UsageError("connecting map index must be 1 or 2");
  const BalancedTensor& t = which == 1 ? *ctx.t21_12 : *ctx.t12_21;
  const Matrix& conn = which == 1 ? ctx.conn1 : ctx.conn2;
  const FiniteAlgebra& target = which == 1 ? *ctx.alg2 : *ctx.alg1;
  const size_t d1 = t.left()->dim(), d2 = t.right()->dim();
  Field f = target.field();
  Surjectivity s;
  s.rank = rank(conn);
  s.surjective = s.rank == target.dim();
  s.injective = s.rank == t.dim();
  if (!s.surjective) return s;
  auto x = solve_linear(conn * t.projection(), target.unit());
  if (!x) throw StructuralError("connecting map has full rank but misses the unit");
  for (size_t i = 0; i < d1; ++i) {
    Vec second = zero_vec(d2, f);
    for (size_t j = 0; j < d2; ++j) second[j] = (*x)[i * d2 + j];
    if (is_zero(second)) continue;
    s.first.push_back(unit_vec(d1, i, f));
    s.second.push_back(second);
  }
  return s;
}

Strictness strictness(const MoritaContext& ctx) {
  Strictness s;
  s.first = connecting_surjective(ctx, 1);
  s.second = connecting_surjective(ctx, 2);
  s.strict = s.first.surjective && s.second.surjective;
  s.bijective = s.strict && s.first.injective && s.second.injective;
  return s;
}

DualBasis dual_basis_from_conn1(const ComoduleContext& m, const Surjectivity& s) {
  DualBasis db;
  const Coring& c = *m.sigma->coring();
  const size_t ds = m.sigma->dim(), dc = c.dim();
  Field f = c.field();
  for (size_t i = 0; i < s.first.size(); ++i) {
    Matrix q = m.q.maps.combine(s.first[i]);
    Vec rho = m.sigma->with_coring().lift(m.sigma->coaction() * s.second[i]);
    for (size_t p = 0; p < ds; ++p)
      for (size_t r = 0; r < dc; ++r) {
        const Scalar& w = rho[p * dc + r];
        if (w.is_zero()) continue;
        db.functionals.push_back(m.dual.element(q.column(p)).scaled(w));
        db.elements.push_back(unit_vec(dc, r, f));
      }
  }
  return db;
}

DualBasis dual_basis_from_conn2(const ComoduleContext& m, const Surjectivity& s) {
  DualBasis db;
  const Coring& c = *m.sigma->coring();
  const size_t ds = m.sigma->dim(), dc = c.dim();
  Field f = c.field();
  for (size_t i = 0; i < s.first.size(); ++i) {
    Matrix q = m.q.maps.combine(s.second[i]);
    Vec rho = m.sigma->with_coring().lift(m.sigma->coaction() * s.first[i]);
    for (size_t p = 0; p < ds; ++p)
      for (size_t r = 0; r < dc; ++r) {
        const Scalar& w = rho[p * dc + r];
        if (w.is_zero()) continue;
        // x ↦ q(x)(c_r)
        Matrix xi(c.base()->dim(), ds, f);
        for (size_t x = 0; x < ds; ++x) xi.set_column(x, m.dual.element(q.column(x)).column(r));
        db.elements.push_back(scale(w, unit_vec(ds, p, f)));
        db.functionals.push_back(xi);
      }
  }
  return db;
}

bool reconstructs(const FBimodule& m, const DualBasis& db, Side side) {
  Field f = m.field();
  for (size_t x = 0; x < m.dim(); ++x) {
    Vec sum = zero_vec(m.dim(), f);
    for (size_t i = 0; i < db.elements.size(); ++i) {
      Vec a = db.functionals[i].column(x);
      sum = add(sum, side == Side::right ? m.act_right(db.elements[i], a) : m.act_left(a, db.elements[i]));
    }
    if (sum != unit_vec(m.dim(), x, f)) return false;
  }
  return true;
}

ComodulePtr tensor_comodule(const BimodulePtr& n, const ComoduleContext& m) {
  const Coring& c = *m.sigma->coring();
  Field f = c.field();
  auto ns = tensor_over(n, m.end.algebra, m.end.sigma_over);
  auto carrier = ns->bimodule();
  auto nsc = tensor_over(carrier, c.base(), c.carrier());
  const size_t dn = n->dim(), ds = m.sigma->dim(), dc = c.dim();
  Matrix amb(nsc->dim(), dn * ds, f);
  for (size_t x = 0; x < ds; ++x) {
    Vec rho = m.sigma->coaction_lift(x);
    for (size_t i = 0; i < dn; ++i) {
      Vec col = zero_vec(nsc->dim(), f);
      for (size_t p = 0; p < ds; ++p)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = rho[p * dc + s];
          if (!w.is_zero()) axpy(col, w, nsc->pure(ns->pure_basis(i, p), unit_vec(dc, s, f)));
        }
      amb.set_column(i * ds + x, col);
    }
  }
  Matrix coaction = ns->descend(amb, "N ⊗ ρ");
  return std::make_shared<Comodule>(n->name() + "(x)T" + m.sigma->name(), m.sigma->coring(), carrier, coaction, nsc);
}

UnitCheck verify_tensor_unit(const ComoduleContext& m, const Surjectivity& s2, const BimodulePtr& n) {
  UnitCheck out;
  Field f = m.sigma->field();
  auto ns = tensor_comodule(n, m);
  auto nst_ptr = tensor_over(n, m.end.algebra, m.end.sigma_over);
  const BalancedTensor& nst = *nst_ptr;
  HomSpace h = colinear_homs(*m.sigma, *ns);
  const size_t dn = n->dim(), ds = m.sigma->dim();
  out.module_dim = dn;
  out.hom_dim = h.dim();

  Matrix eta(h.dim(), dn, f);
  for (size_t i = 0; i < dn; ++i) {
    Matrix z(ns->dim(), ds, f);
    for (size_t x = 0; x < ds; ++x) z.set_column(x, nst.pure_basis(i, x));
    eta.set_column(i, h.coords(z, "x ↦ n ⊗ x"));
  }
  out.eta_bijective = h.dim() == dn && rank(eta) == dn;
  if (!s2.surjective) return out;

  Matrix eta_inv(dn, h.dim(), f);
  for (size_t k = 0; k < h.dim(); ++k) {
    const Matrix& zeta = h.element(k);
    Vec sum = zero_vec(dn, f);
    for (size_t i = 0; i < s2.first.size(); ++i) {
      Vec z = nst.lift(zeta * s2.first[i]);
      for (size_t a = 0; a < dn; ++a)
        for (size_t p = 0; p < ds; ++p) {
          const Scalar& w = z[a * ds + p];
          if (w.is_zero()) continue;
          Vec t = m.ctx.pair2(unit_vec(ds, p, f), s2.second[i]);
          axpy(sum, w, n->right_action_by(t).column(a));
        }
    }
    eta_inv.set_column(k, sum);
  }
  out.left_inverse = (eta_inv * eta).is_identity();
  out.right_inverse = (eta * eta_inv).is_identity();
  return out;
}

}  // namespace corext
