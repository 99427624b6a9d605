#include "corext/extension.hpp"

#include "corext/errors.hpp"

namespace corext {

namespace {

Matrix in_coords(const HomSpace& h, const std::function<Matrix(const Matrix&)>& op, const std::string& what) {
  Matrix out(h.dim(), h.dim(), h.field());
  for (size_t s = 0; s < h.dim(); ++s) out.set_column(s, h.coords(op(h.element(s)), what));
  return out;
}

std::vector<Vec> lifts_of(const BalancedTensor& t, const Matrix& m) {
  std::vector<Vec> out;
  for (size_t x = 0; x < m.cols(); ++x) out.push_back(t.lift(m.column(x)));
  return out;
}

Matrix solve_columns(const Matrix& a, const Matrix& b, const std::string& what) {
  Matrix out(a.cols(), b.cols(), a.field());
  for (size_t j = 0; j < b.cols(); ++j) {
    auto x = solve_linear(a, b.column(j));
    if (!x) throw StructuralError(what);
    out.set_column(j, *x);
  }
  return out;
}

bool right_linear(const Matrix& f, const FBimodule& src, const FBimodule& dst) {
  for (size_t i = 0; i < src.right_algebra()->dim(); ++i)
    if (f * src.right_action(i) != dst.right_action(i) * f) return false;
  return true;
}

bool left_linear(const Matrix& f, const FBimodule& src, const FBimodule& dst) {
  for (size_t i = 0; i < src.left_algebra()->dim(); ++i)
    if (f * src.left_action(i) != dst.left_action(i) * f) return false;
  return true;
}

}  // namespace

std::string to_string(Purity p) {
  switch (p) {
    case Purity::pure: return "pure";
    case Purity::pure_by_split: return "pure-by-split";
    case Purity::not_pure: return "not-pure";
    default: return "unchecked";
  }
}

CoringExtension extension_check(CoringPtr c, CoringPtr d, BimodulePtr inner_al, Matrix tau,
                                std::optional<AlgebraMap> split) {
  const AlgebraPtr& a = c->base();
  const AlgebraPtr& l = d->base();
  if (!same_algebra(inner_al->left_algebra(), a) || !same_algebra(inner_al->right_algebra(), l) ||
      inner_al->dim() != c->dim())
    throw UsageError("extension: the right L-structure must live on the carrier of " + c->name());
  for (size_t i = 0; i < a->dim(); ++i)
    if (inner_al->left_action(i) != c->carrier()->left_action(i))
      throw UsageError("extension: left A-action differs from the coring's");
  inner_al->validate();

  CoringExtension ext;
  ext.inner = c;
  ext.outer = d;
  ext.inner_al = inner_al;
  ext.c_d = tensor_over(inner_al, l, d->carrier());
  ext.c_cl = tensor_over(c->carrier(), a, inner_al);
  if (tau.rows() != ext.c_d->dim() || tau.cols() != c->dim())
    throw UsageError("extension: tau has the wrong shape");
  ext.tau = std::move(tau);

  // tau as a right D-coaction on C (left structure forgotten).
  try {
    Comodule("tau", d, forget_left(inner_al), ext.tau);
  } catch (const AxiomError& e) {
    throw AxiomError("tau " + e.axiom(), "extension " + c->name() + " by " + d->name());
  }
  const size_t dc = c->dim();
  Field f = c->field();
  const Matrix& delta = c->coproduct();
  bool tau_left = left_linear(ext.tau, *inner_al, *ext.c_d->bimodule());
  bool delta_right = right_linear(delta, *inner_al, *ext.c_cl->bimodule());
  if (!tau_left) throw AxiomError("tau left A-linear", "extension " + c->name() + " by " + d->name());
  if (!delta_right) throw AxiomError("coproduct right L-linear", "extension " + c->name() + " by " + d->name());

  auto cc_d = tensor_over(ext.c_cl->bimodule(), l, d->carrier());
  auto c_cd = tensor_over(c->carrier(), a, ext.c_d->bimodule());
  Matrix assoc = associator(*ext.c_cl, *cc_d, *ext.c_d, *c_cd);
  Matrix delta_d = tensor_maps(*ext.c_d, *cc_d, delta, Matrix::identity(d->dim(), f)) * ext.tau;
  Matrix c_tau = tensor_maps(*ext.c_cl, *c_cd, Matrix::identity(dc, f), ext.tau) * delta;
  // Δ right D-colinear, read in C ⊗_A (C ⊗_L D).
  bool coproduct_colinear = assoc * delta_d == c_tau;
  // tau left C-colinear, read in (C ⊗_A C) ⊗_L D.
  auto inv = inverse(assoc);
  if (!inv) throw StructuralError("associator is not invertible");
  bool tau_colinear = delta_d == *inv * c_tau;
  if (coproduct_colinear != tau_colinear)
    throw StructuralError("the two formulations of the extension axioms disagree");
  if (!coproduct_colinear) throw AxiomError("coproduct D-colinear", "extension " + c->name() + " by " + d->name());

  if (split) {
    split->validate();
    if (!same_algebra(split->source, l) || !same_algebra(split->target, a))
      throw UsageError("extension: split map must go from L to A");
    for (size_t i = 0; i < l->dim(); ++i)
      if (inner_al->right_action(i) != c->carrier()->right_action_by(split->matrix.column(i)))
        throw AxiomError("split map", "the right L-action is not induced by the supplied L → A");
  }
  ext.split = std::move(split);
  return ext;
}

CoringExtension extension_from_lift(CoringPtr c, CoringPtr d, BimodulePtr inner_al, const Matrix& tau_ambient,
                                    std::optional<AlgebraMap> split) {
  auto c_d = tensor_over(inner_al, d->base(), d->carrier());
  if (tau_ambient.rows() != c_d->ambient_dim() || tau_ambient.cols() != c->dim())
    throw UsageError("extension: tau has the wrong shape");
  return extension_check(std::move(c), std::move(d), std::move(inner_al), c_d->projection() * tau_ambient,
                         std::move(split));
}

CoringExtension trivial_extension(const CoringPtr& c) {
  Field f = c->field();
  auto k = FiniteAlgebra::ground(f);
  auto d = trivial_coring(k);
  auto al = with_right(c->carrier(), k, {Matrix::identity(c->dim(), f)});
  auto ext = extension_from_lift(c, d, al, Matrix::identity(c->dim(), f), unit_map(c->base()));
  ext.purity = Purity::pure_by_split;
  return ext;
}

PurityReport purity_on(const CoringExtension& ext, const Comodule& m) {
  const Coring& c = *ext.inner;
  const AlgebraPtr& a = c.base();
  const AlgebraPtr& l = ext.outer_base();
  Field f = c.field();
  PurityReport r;
  r.comodule = m.name();
  auto mk = forget_left(m.carrier());
  auto x = tensor_over(mk, a, ext.inner_al);             // M ⊗_A C
  auto xa = tensor_over(mk, a, c.carrier());
  auto xc = tensor_over(xa->bimodule(), a, ext.inner_al);  // (M ⊗_A C) ⊗_A C
  auto y = tensor_over(mk, a, ext.c_cl->bimodule());       // M ⊗_A (C ⊗_A C)
  Matrix rho_c = associator(*xa, *xc, *ext.c_cl, *y) *
                 tensor_maps(*x, *xc, m.coaction(), Matrix::identity(c.dim(), f));
  Matrix m_delta = tensor_maps(*x, *y, Matrix::identity(m.dim(), f), c.coproduct());
  Matrix h = rho_c - m_delta;
  if (!right_linear(h, *x->bimodule(), *y->bimodule()))
    throw StructuralError("purity: the equalizer pair is not right L-linear");

  Subspace e = kernel(h);
  r.equalizer_dim = e.dim();
  auto ebim = sub_bimodule(x->bimodule(), e, "E");
  Matrix iota = Matrix::from_columns(x->dim(), e.basis(), f);
  auto w = ext.outer->square().bimodule();
  auto ew = tensor_over(ebim, l, w);
  auto xw = tensor_over(x->bimodule(), l, w);
  auto yw = tensor_over(y->bimodule(), l, w);
  Matrix iw = tensor_maps(*ew, *xw, iota, Matrix::identity(w->dim(), f));
  Matrix hw = tensor_maps(*xw, *yw, h, Matrix::identity(w->dim(), f));
  r.tensored_dim = ew->dim();
  r.comparison_rank = rank(iw);
  r.target_dim = kernel(hw).dim();
  r.pure = r.comparison_rank == r.tensored_dim && r.comparison_rank == r.target_dim;
  return r;
}

PurityResult purity_check(const CoringExtension& ext, const std::vector<ComodulePtr>& list) {
  PurityResult out;
  if (ext.split) {
    out.verdict = Purity::pure_by_split;
    return out;
  }
  out.verdict = Purity::pure;
  for (const auto& m : list) {
    out.reports.push_back(purity_on(ext, *m));
    if (!out.reports.back().pure) out.verdict = Purity::not_pure;
  }
  return out;
}

std::vector<ComodulePtr> default_purity_list(const CoringExtension& ext, const ComodulePtr& sigma) {
  std::vector<ComodulePtr> out;
  for (size_t n = 1; n <= 2; ++n)
    out.push_back(with_name(cofree_comodule(free_right_module(ext.base(), n), ext.inner),
                            "A^" + std::to_string(n) + "(x)C"));
  out.push_back(regular_comodule(ext.inner));
  if (sigma) out.push_back(sigma);
  return out;
}

CoringExtension certify_purity(CoringExtension ext, const std::vector<ComodulePtr>& list) {
  auto res = purity_check(ext, list);
  ext.purity = res.verdict;
  ext.purity_list.clear();
  if (res.verdict == Purity::pure_by_split) ext.purity_list.push_back("split");
  for (const auto& r : res.reports) ext.purity_list.push_back(r.comodule);
  return ext;
}

BimodulePtr induced_right_action(const CoringExtension& ext, const Comodule& m) {
  const Coring& c = *ext.inner;
  const AlgebraPtr& l = ext.outer_base();
  const size_t dm = m.dim(), dc = c.dim();
  Field f = c.field();
  auto rho = lifts_of(m.with_coring(), m.coaction());
  std::vector<Matrix> acts;
  for (size_t i = 0; i < l->dim(); ++i) {
    // ε(c_s l) for each basis c_s
    std::vector<Matrix> eps_l;
    for (size_t s = 0; s < dc; ++s)
      eps_l.push_back(m.carrier()->right_action_by(c.counit() * ext.inner_al->right_action(i).column(s)));
    Matrix r(dm, dm, f);
    for (size_t x = 0; x < dm; ++x) {
      Vec col = zero_vec(dm, f);
      for (size_t p = 0; p < dm; ++p)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = rho[x][p * dc + s];
          if (!w.is_zero()) axpy(col, w, eps_l[s].column(p));
        }
      r.set_column(x, col);
    }
    acts.push_back(r);
  }
  auto out = make_bimodule(m.name(), m.left_algebra(), l, dm, m.carrier()->left_actions(), acts);
  try {
    out->validate();
  } catch (const AxiomError& e) {
    throw AxiomError("induced L-action", m.name() + ": " + e.what());
  }
  return out;
}

ComodulePtr induced_coaction(const CoringExtension& ext, const Comodule& m) {
  if (!ext.is_pure()) throw UsageError("induced coaction needs a pure extension (purity is " + to_string(ext.purity) + ")");
  const Coring& c = *ext.inner;
  const Coring& d = *ext.outer;
  const AlgebraPtr& a = c.base();
  const AlgebraPtr& l = d.base();
  Field f = c.field();
  auto ml = induced_right_action(ext, m);
  auto md = tensor_over(ml, l, d.carrier());
  auto mc = tensor_over(m.carrier(), a, ext.inner_al);
  auto mcd = tensor_over(mc->bimodule(), l, d.carrier());
  auto m_cd = tensor_over(m.carrier(), a, ext.c_d->bimodule());
  Matrix rho_d;
  try {
    rho_d = tensor_maps(*md, *mcd, m.coaction(), Matrix::identity(d.dim(), f));
  } catch (const StructuralError&) {
    throw StructuralError("coaction of " + m.name() + " is not right L-linear for the induced action");
  }
  Matrix lhs = associator(*mc, *mcd, *ext.c_d, *m_cd) * rho_d;
  Matrix rhs = tensor_maps(*mc, *m_cd, Matrix::identity(m.dim(), f), ext.tau) * m.coaction();
  if (rank(lhs) != md->dim()) throw StructuralError("ρ ⊗_L D is not injective on " + m.name());
  Matrix tau_m = solve_columns(lhs, rhs, "(M ⊗ tau) ρ does not factor through ρ ⊗_L D for " + m.name());
  return std::make_shared<Comodule>(m.name(), ext.outer, ml, tau_m, md);
}

Matrix ConvolutionAlgebra::product(const Matrix& f, const Matrix& g) const {
  const Coring& d = *coring;
  const FiniteAlgebra& r = *ring.target;
  const size_t dd = d.dim();
  Matrix out(r.dim(), dd, r.field());
  for (size_t x = 0; x < dd; ++x) {
    Vec w = d.coproduct_lift(x);
    Vec col = zero_vec(r.dim(), r.field());
    for (size_t p = 0; p < dd; ++p)
      for (size_t q = 0; q < dd; ++q)
        if (!w[p * dd + q].is_zero()) axpy(col, w[p * dd + q], r.multiply(f.column(p), g.column(q)));
    out.set_column(x, col);
  }
  return out;
}

Matrix ConvolutionAlgebra::one() const { return ring.matrix * coring->counit(); }

ConvolutionAlgebra convolution_algebra(const CoringPtr& d, const AlgebraMap& ring) {
  ring.validate();
  if (!same_algebra(ring.source, d->base())) throw UsageError("convolution algebra: ring is not over the base of the coring");
  ConvolutionAlgebra out;
  out.coring = d;
  out.ring = ring;
  const FiniteAlgebra& r = *ring.target;
  const AlgebraPtr& l = d->base();
  std::vector<Matrix> left, right;
  for (size_t i = 0; i < l->dim(); ++i) {
    left.push_back(r.left_mul_by(ring.matrix.column(i)));
    right.push_back(r.right_mul_by(ring.matrix.column(i)));
  }
  auto rll = make_bimodule(r.name(), l, l, r.dim(), left, right);
  out.maps = hom_space(*d->carrier(), *rll, {true, true});
  const ConvolutionAlgebra& self = out;
  out.algebra = algebra_on_matrices(
      "Hom(" + d->name() + "," + r.name() + ")", out.maps.elements(),
      [&](const Matrix& x, const Matrix& y) { return self.product(x, y); }, out.one());
  return out;
}

std::optional<Matrix> convolution_inverse(const ConvolutionAlgebra& conv, const Matrix& lambda, InverseSide side) {
  const HomSpace& h = conv.maps;
  if (!h.contains(lambda)) throw UsageError("convolution_inverse: map is not L-L bilinear");
  Field f = h.field();
  Vec one = conv.one().flatten();
  std::vector<Vec> cols(h.dim());
  Vec rhs;
  if (side != InverseSide::left) rhs = concat(rhs, one);   // λ λ̄ = 1
  if (side != InverseSide::right) rhs = concat(rhs, one);  // λ̄ λ = 1
  for (size_t i = 0; i < h.dim(); ++i) {
    if (side != InverseSide::left) cols[i] = concat(cols[i], conv.product(lambda, h.element(i)).flatten());
    if (side != InverseSide::right) cols[i] = concat(cols[i], conv.product(h.element(i), lambda).flatten());
  }
  auto y = solve_linear(Matrix::from_columns(rhs.size(), cols, f), rhs);
  if (!y) return std::nullopt;
  return h.combine(*y);
}

QTilde compute_Qtilde(const CoringExtension& ext, const Comodule& sigma) {
  if (!same_algebra(sigma.left_algebra(), ext.outer_base()))
    throw UsageError("Q̃: " + sigma.name() + " is not a left module over the base of " + ext.outer->name());
  QTilde out;
  out.sigma_dual = dual_bimodule(sigma.carrier());
  const DualModule& sd = out.sigma_dual;
  auto defect = [&](const Matrix& qs) { return switched_defect(sigma, sd, qs); };
  out.maps = hom_space(*ext.inner_al, *sd.bimodule, {true, true}).refine(defect);
  out.switched = hom_space(*forget_right(ext.inner->carrier()), *forget_right(sd.bimodule), {true, false}).refine(defect);
  out.into_switched = Matrix(out.switched.dim(), out.maps.dim(), sigma.field());
  for (size_t j = 0; j < out.maps.dim(); ++j)
    out.into_switched.set_column(j, out.switched.coords(out.maps.element(j), "Q̃ ⊂ Q'"));
  if (rank(out.into_switched) != out.maps.dim()) throw StructuralError("Q̃ does not embed into Q'");
  return out;
}

namespace {

// Precomputed data for evaluating the extension context formulas.
struct Evaluator {
  const CoringExtension& ext;
  const ExtContext& e;
  size_t da, dc, dd, ds;
  Field f;
  std::vector<Vec> tau_c, delta_c, rho;

  Evaluator(const CoringExtension& x, const ExtContext& c)
      : ext(x), e(c), da(x.base()->dim()), dc(x.inner->dim()), dd(x.outer->dim()), ds(c.sigma->dim()),
        f(x.inner->field()) {
    for (size_t s = 0; s < dc; ++s) {
      tau_c.push_back(ext.tau_lift(s));
      delta_c.push_back(ext.inner->coproduct_lift(s));
    }
    for (size_t x2 = 0; x2 < ds; ++x2) rho.push_back(e.sigma->coaction_lift(x2));
  }

  // q(c_s) ∈ Σ* as a dim A × dim Σ matrix.
  std::vector<Matrix> xi(const Matrix& q) const {
    std::vector<Matrix> out;
    for (size_t s = 0; s < dc; ++s) out.push_back(e.q.sigma_dual.maps.combine(q.column(s)));
    return out;
  }
  Vec sigma_lift(const Vec& y) const { return e.sigma->with_coring().lift(e.sigma->coaction() * y); }
  Matrix t_of(const Vec& coords) const { return e.end.maps.combine(coords); }

  // y ↦ y^[0] ε(u(y^[1]))
  Matrix counit_twist(const Matrix& u) const {
    Matrix g(ds, ds, f);
    for (size_t x = 0; x < ds; ++x) {
      Vec col = zero_vec(ds, f);
      for (size_t p = 0; p < ds; ++p)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = rho[x][p * dc + s];
          if (!w.is_zero())
            axpy(col, w, e.sigma->carrier()->right_action_by(ext.inner->counit() * u.column(s)).column(p));
        }
      g.set_column(x, col);
    }
    return g;
  }

  // (vp)(d) = v(d_(1))(p(d_(2)))
  Matrix vp(const Matrix& v, const Matrix& p) const {
    Matrix out(ds, dd, f);
    for (size_t x = 0; x < dd; ++x) {
      Vec w = ext.outer->coproduct_lift(x);
      Vec col = zero_vec(ds, f);
      for (size_t a = 0; a < dd; ++a)
        for (size_t b = 0; b < dd; ++b)
          if (!w[a * dd + b].is_zero()) axpy(col, w[a * dd + b], t_of(v.column(a)) * p.column(b));
      out.set_column(x, col);
    }
    return out;
  }
  // (pu)(d) = p(d)^[0] ε(u(p(d)^[1]))
  Matrix pu(const Matrix& p, const Matrix& u) const { return counit_twist(u) * p; }
  // (uq)(c) = q(u(c))
  Matrix uq(const Matrix& u, const Matrix& q) const { return q * u; }
  // (qv)(c) = q(c_[0]) ∘ v(c_[1])
  Matrix qv(const Matrix& q, const Matrix& v) const {
    auto x = xi(q);
    Matrix out(q.rows(), dc, f);
    for (size_t c = 0; c < dc; ++c) {
      Matrix sum(da, ds, f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t b = 0; b < dd; ++b) {
          const Scalar& w = tau_c[c][r * dd + b];
          if (!w.is_zero()) sum += (x[r] * t_of(v.column(b))).scaled(w);
        }
      out.set_column(c, e.q.sigma_dual.maps.coords(sum, "q(c_[0]) v(c_[1])"));
    }
    return out;
  }
  // c ↦ q(c_[0])(p(c_[1])) as a dim A × dim C matrix
  Matrix pairing(const Matrix& q, const Matrix& p) const {
    auto x = xi(q);
    Matrix g(da, dc, f);
    for (size_t c = 0; c < dc; ++c) {
      Vec col = zero_vec(da, f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t b = 0; b < dd; ++b) {
          const Scalar& w = tau_c[c][r * dd + b];
          if (!w.is_zero()) axpy(col, w, x[r] * p.column(b));
        }
      g.set_column(c, col);
    }
    return g;
  }
  // (q◆p)(c) = c^(1) q(c^(2)_[0])(p(c^(2)_[1]))
  Matrix black(const Matrix& q, const Matrix& p) const {
    Matrix g = pairing(q, p);
    const FBimodule& cb = *ext.inner->carrier();
    Matrix out(dc, dc, f);
    for (size_t c = 0; c < dc; ++c) {
      Vec col = zero_vec(dc, f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& w = delta_c[c][r * dc + s];
          if (!w.is_zero()) axpy(col, w, cb.right_action_by(g.column(s)).column(r));
        }
      out.set_column(c, col);
    }
    return out;
  }
  // q(c_[0])(p(c_[1])^[0]) p(c_[1])^[1]
  Matrix black_alt(const Matrix& q, const Matrix& p) const {
    auto x = xi(q);
    const FBimodule& cb = *ext.inner->carrier();
    Matrix out(dc, dc, f);
    for (size_t c = 0; c < dc; ++c) {
      Vec col = zero_vec(dc, f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t b = 0; b < dd; ++b) {
          const Scalar& w = tau_c[c][r * dd + b];
          if (w.is_zero()) continue;
          Vec z = sigma_lift(p.column(b));
          for (size_t y = 0; y < ds; ++y)
            for (size_t s = 0; s < dc; ++s) {
              const Scalar& v = z[y * dc + s];
              if (!v.is_zero()) axpy(col, w * v, cb.left_action_by(x[r].column(y)).column(s));
            }
        }
      out.set_column(c, col);
    }
    return out;
  }
  // y ↦ z^[0] q(z^[1])(y) for z ∈ Σ
  Matrix kappa(const Vec& z, const std::vector<Matrix>& x) const {
    Vec lift = sigma_lift(z);
    Matrix t(ds, ds, f);
    for (size_t p = 0; p < ds; ++p)
      for (size_t s = 0; s < dc; ++s) {
        const Scalar& w = lift[p * dc + s];
        if (w.is_zero()) continue;
        for (size_t y = 0; y < ds; ++y)
          axpy_column(t, y, w, e.sigma->carrier()->right_action_by(x[s].column(y)).column(p));
      }
    return t;
  }
  static void axpy_column(Matrix& m, size_t col, const Scalar& s, const Vec& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) m(i, col) += s * v[i];
  }
  // (p◇q)(d) = p(d)^[0] q(p(d)^[1])(−)
  Matrix white(const Matrix& p, const Matrix& q) const {
    auto x = xi(q);
    Matrix out(e.end.maps.dim(), dd, f);
    for (size_t b = 0; b < dd; ++b) out.set_column(b, e.end.maps.coords(kappa(p.column(b), x), "p(d)^[0] q(p(d)^[1])"));
    return out;
  }
};

}  // namespace

Matrix ExtContext::black_alt(const Vec& qc, const Vec& pc) const {
  Evaluator ev(ext, *this);
  return ev.black_alt(q_elem(qc), p_elem(pc));
}

ExtContext context_ext(const CoringExtension& ext, const ComodulePtr& sigma) {
  if (!ext.is_pure()) throw UsageError("extension context needs a pure extension (purity is " + to_string(ext.purity) + ")");
  if (sigma->coring() != ext.inner && sigma->coring()->name() != ext.inner->name())
    throw UsageError("extension context: " + sigma->name() + " is not a comodule over " + ext.inner->name());
  ExtContext e;
  e.ext = ext;
  e.sigma = sigma;
  e.sigma_d = induced_coaction(ext, *sigma);
  e.end = endomorphism_algebra(*sigma);
  const AlgebraPtr& l = ext.outer_base();
  e.v = convolution_algebra(ext.outer, AlgebraMap{l, e.end.algebra, e.end.left_unit});
  Field f = sigma->field();
  const size_t dc = ext.inner->dim(), dd = ext.outer->dim();

  const Coring& c = *ext.inner;
  e.u_maps = hom_space(*ext.inner_al, *ext.inner_al, {true, true})
                 .refine([&](const Matrix& u) {
                   Matrix lhs = c.coproduct() * u;
                   Matrix rhs = tensor_maps(c.square(), c.square(), Matrix::identity(dc, f), u) * c.coproduct();
                   return (lhs - rhs).flatten();
                 })
                 .refine([&](const Matrix& u) {
                   Matrix lhs = ext.tau * u;
                   Matrix rhs = tensor_maps(*ext.c_d, *ext.c_d, u, Matrix::identity(dd, f)) * ext.tau;
                   return (lhs - rhs).flatten();
                 });
  e.u_algebra = algebra_on_matrices(
      "End(" + c.name() + ")op", e.u_maps.elements(), [](const Matrix& x, const Matrix& y) { return y * x; },
      Matrix::identity(dc, f));

  auto dreg = regular_comodule(ext.outer);
  e.p_maps = hom_space(*ext.outer->carrier(), *e.sigma_d->carrier(), {true, true}).refine([&](const Matrix& p) {
    return colinearity_defect(*dreg, *e.sigma_d, p);
  });
  e.q = compute_Qtilde(ext, *sigma);

  Evaluator ev(ext, e);
  const HomSpace &vm = e.v.maps, &um = e.u_maps, &pm = e.p_maps, &qm = e.q.maps;
  std::vector<Matrix> p_left, p_right, q_left, q_right;
  for (const auto& v : vm.elements())
    p_left.push_back(in_coords(pm, [&](const Matrix& p) { return ev.vp(v, p); }, "v p"));
  for (const auto& u : um.elements())
    p_right.push_back(in_coords(pm, [&](const Matrix& p) { return ev.pu(p, u); }, "p u"));
  for (const auto& u : um.elements())
    q_left.push_back(in_coords(qm, [&](const Matrix& q) { return ev.uq(u, q); }, "u q"));
  for (const auto& v : vm.elements())
    q_right.push_back(in_coords(qm, [&](const Matrix& q) { return ev.qv(q, v); }, "q v"));
  auto pb = make_bimodule("P", e.v.algebra, e.u_algebra, pm.dim(), p_left, p_right);
  auto qb = make_bimodule("Q~", e.u_algebra, e.v.algebra, qm.dim(), q_left, q_right);

  const size_t dp = pm.dim(), dq = qm.dim();
  Matrix c1(um.dim(), dq * dp, f), c2(vm.dim(), dp * dq, f);
  for (size_t j = 0; j < dq; ++j)
    for (size_t i = 0; i < dp; ++i) {
      const Matrix& q = qm.element(j);
      const Matrix& p = pm.element(i);
      Matrix b = ev.black(q, p);
      if (b != ev.black_alt(q, p)) throw StructuralError("the two forms of ◆ disagree");
      c1.set_column(j * dp + i, um.coords(b, "q ◆ p"));
      c2.set_column(i * dq + j, vm.coords(ev.white(p, q), "p ◇ q"));
    }
  e.ctx = make_context(e.v.algebra, e.u_algebra, pb, qb, c1, c2);
  return e;
}

Comparison compare_trivial(const ExtContext& e, const ComoduleContext& m) {
  Comparison out;
  if (e.ext.outer->dim() != 1 || !e.ext.outer_base()->is_ground()) throw UsageError("comparison needs D = k");
  Field f = e.sigma->field();
  const size_t dv = e.v.maps.dim(), du = e.u_maps.dim(), dp = e.p_maps.dim(), dq = e.q.maps.dim();
  // V → T, U → *C, P → Σ, Q̃ → Q
  Matrix phi_v(m.end.maps.dim(), dv, f), phi_u(m.dual.maps.dim(), du, f), phi_p(m.sigma->dim(), dp, f);
  for (size_t i = 0; i < dv; ++i) phi_v.set_column(i, e.v.maps.element(i).column(0));
  for (size_t i = 0; i < du; ++i)
    phi_u.set_column(i, m.dual.maps.coords(e.ext.inner->counit() * e.u_maps.element(i), "ε ∘ u"));
  for (size_t i = 0; i < dp; ++i) phi_p.set_column(i, e.p_maps.element(i).column(0));
  auto back = inverse(m.q.to_switched);
  if (!back) return out;
  auto into_sw = Matrix(m.q.switched.dim(), dq, f);
  for (size_t j = 0; j < dq; ++j) into_sw.set_column(j, m.q.switched.coords(e.q.maps.element(j), "Q̃ ⊂ Q'"));
  Matrix phi_q = *back * into_sw;
  auto square = [](const Matrix& x) { return x.rows() == x.cols() && rank(x) == x.rows(); };
  out.bijective = square(phi_v) && square(phi_u) && square(phi_p) && square(phi_q);
  if (!out.bijective) return out;

  const auto& c = e.ctx;
  const auto& d = m.ctx;
  bool alg = true;
  for (size_t i = 0; i < dv && alg; ++i)
    for (size_t j = 0; j < dv && alg; ++j)
      alg = phi_v * c.alg1->product(i, j) == d.alg1->multiply(phi_v.column(i), phi_v.column(j));
  for (size_t i = 0; i < du && alg; ++i)
    for (size_t j = 0; j < du && alg; ++j)
      alg = phi_u * c.alg2->product(i, j) == d.alg2->multiply(phi_u.column(i), phi_u.column(j));
  out.algebras = alg && phi_v * c.alg1->unit() == d.alg1->unit() && phi_u * c.alg2->unit() == d.alg2->unit();

  bool bim = true;
  for (size_t i = 0; i < dv && bim; ++i)
    bim = phi_p * c.bim12->left_action(i) == d.bim12->left_action_by(phi_v.column(i)) * phi_p &&
          phi_q * c.bim21->right_action(i) == d.bim21->right_action_by(phi_v.column(i)) * phi_q;
  for (size_t i = 0; i < du && bim; ++i)
    bim = phi_p * c.bim12->right_action(i) == d.bim12->right_action_by(phi_u.column(i)) * phi_p &&
          phi_q * c.bim21->left_action(i) == d.bim21->left_action_by(phi_u.column(i)) * phi_q;
  out.bimodules = bim;

  bool conn = true;
  for (size_t j = 0; j < dq && conn; ++j)
    for (size_t i = 0; i < dp && conn; ++i) {
      Vec qj = unit_vec(dq, j, f), pi = unit_vec(dp, i, f);
      conn = phi_u * c.pair1(qj, pi) == d.pair1(phi_q * qj, phi_p * pi) &&
             phi_v * c.pair2(pi, qj) == d.pair2(phi_p * pi, phi_q * qj);
    }
  out.connecting = conn;
  return out;
}

bool counit_identity(const ExtContext& e, const Surjectivity& s) {
  if (!s.surjective) return false;
  Evaluator ev(e.ext, e);
  Field f = e.sigma->field();
  Matrix sum(ev.da, ev.dc, f);
  for (size_t i = 0; i < s.first.size(); ++i) sum += ev.pairing(e.q_elem(s.first[i]), e.p_elem(s.second[i]));
  return sum == e.ext.inner->counit();
}

bool comodule_identity(const ExtContext& e, const Surjectivity& s, const ComodulePtr& m) {
  if (!s.surjective) return false;
  Evaluator ev(e.ext, e);
  auto md = induced_coaction(e.ext, *m);
  const size_t dm = m->dim(), dc = ev.dc, dd = ev.dd;
  Field f = m->field();
  std::vector<std::vector<Matrix>> xis;
  std::vector<Matrix> js;
  for (size_t i = 0; i < s.first.size(); ++i) {
    xis.push_back(ev.xi(e.q_elem(s.first[i])));
    js.push_back(e.p_elem(s.second[i]));
  }
  for (size_t x = 0; x < dm; ++x) {
    Vec z = md->coaction_lift(x);
    Vec sum = zero_vec(dm, f);
    for (size_t y = 0; y < dm; ++y)
      for (size_t b = 0; b < dd; ++b) {
        const Scalar& w = z[y * dd + b];
        if (w.is_zero()) continue;
        Vec r = m->coaction_lift(y);
        for (size_t p = 0; p < dm; ++p)
          for (size_t c = 0; c < dc; ++c) {
            const Scalar& v = r[p * dc + c];
            if (v.is_zero()) continue;
            for (size_t i = 0; i < js.size(); ++i) {
              Vec a = xis[i][c] * js[i].column(b);
              axpy(sum, w * v, m->carrier()->right_action_by(a).column(p));
            }
          }
      }
    if (sum != unit_vec(dm, x, f)) return false;
  }
  return true;
}

GeneratorCheck sigma_generates(const ExtContext& e, const Surjectivity& s) {
  GeneratorCheck out;
  const Coring& c = *e.ext.inner;
  auto pre = solve_linear(c.counit(), c.base()->unit());
  out.applicable = s.surjective && pre.has_value();
  if (!out.applicable) return out;
  out.generator = generator_check(*forget_left(e.sigma->carrier()), Side::right).has_value();
  Evaluator ev(e.ext, e);
  // Σ_i ξ_i ⊗ x_i = Σ_ℓ ĵ_ℓ(c_[0]) ⊗ j_ℓ(c_[1]); evaluate Σ ξ_i(x_i).
  Vec tc = e.ext.c_d->lift(e.ext.tau * *pre);
  Vec total = zero_vec(ev.da, ev.f);
  for (size_t i = 0; i < s.first.size(); ++i) {
    auto x = ev.xi(e.q_elem(s.first[i]));
    Matrix j = e.p_elem(s.second[i]);
    for (size_t r = 0; r < ev.dc; ++r)
      for (size_t b = 0; b < ev.dd; ++b) {
        const Scalar& w = tc[r * ev.dd + b];
        if (!w.is_zero()) axpy(total, w, x[r] * j.column(b));
      }
  }
  out.witness_unit = total == c.base()->unit();
  return out;
}

Coretraction action_coretraction(const ExtContext& e, const Surjectivity& s) {
  Coretraction out;
  if (!s.surjective) return out;
  Evaluator ev(e.ext, e);
  Field f = ev.f;
  const AlgebraPtr& l = e.ext.outer_base();
  const FiniteAlgebra& t = *e.end.algebra;
  const size_t dt = t.dim(), ds = ev.ds, dd = ev.dd;
  std::vector<Matrix> tr;
  for (size_t i = 0; i < l->dim(); ++i) tr.push_back(t.right_mul_by(e.end.left_unit.column(i)));
  std::vector<Matrix> tl;
  for (size_t i = 0; i < dt; ++i) tl.push_back(t.left_mul(i));
  auto tb = make_bimodule("T", e.end.algebra, l, dt, tl, tr);
  const auto& sl = e.sigma_d->carrier();
  auto ts = tensor_over(tb, l, sl);

  // κ_ℓ(y) in T coordinates
  std::vector<std::vector<Vec>> kap(s.first.size());
  std::vector<Matrix> js;
  for (size_t i = 0; i < s.first.size(); ++i) {
    auto x = ev.xi(e.q_elem(s.first[i]));
    for (size_t y = 0; y < ds; ++y) {
      auto c = e.end.maps.coordinates(ev.kappa(unit_vec(ds, y, f), x));
      if (!c) return out;
      kap[i].push_back(*c);
    }
    js.push_back(e.p_elem(s.second[i]));
  }
  Matrix sigma(ts->dim(), ds, f);
  for (size_t x = 0; x < ds; ++x) {
    Vec z = e.sigma_d->coaction_lift(x);
    Vec col = zero_vec(ts->dim(), f);
    for (size_t y = 0; y < ds; ++y)
      for (size_t b = 0; b < dd; ++b) {
        const Scalar& w = z[y * dd + b];
        if (w.is_zero()) continue;
        for (size_t i = 0; i < js.size(); ++i) axpy(col, w, ts->pure(kap[i][y], js[i].column(b)));
      }
    sigma.set_column(x, col);
  }

  Matrix amb(ds, dt * ds, f);
  for (size_t a = 0; a < dt; ++a) {
    Matrix ta = e.end.maps.element(a);
    for (size_t y = 0; y < ds; ++y) amb.set_column(a * ds + y, ta.column(y));
  }
  Matrix act = ts->descend(amb, "t ⊗ x ↦ t(x)");
  out.retraction = (act * sigma).is_identity();

  bool lin = true;
  for (size_t a = 0; a < dt && lin; ++a) lin = sigma * e.end.maps.element(a) == ts->bimodule()->left_action(a) * sigma;
  out.t_linear = lin;

  try {
    const BalancedTensor& sd = e.sigma_d->with_coring();
    auto tsd = tensor_over(ts->bimodule(), l, e.ext.outer->carrier());
    auto t_sd = tensor_over(tb, l, sd.bimodule());
    Matrix lhs = associator(*ts, *tsd, sd, *t_sd) *
                 tensor_maps(sd, *tsd, sigma, Matrix::identity(dd, f)) * e.sigma_d->coaction();
    Matrix rhs = tensor_maps(*ts, *t_sd, Matrix::identity(dt, f), e.sigma_d->coaction()) * sigma;
    out.d_colinear = lhs == rhs;
  } catch (const StructuralError&) {
    out.d_colinear = false;
  }
  return out;
}

}  // namespace corext
