#include "corext/zoo.hpp"

#include "corext/errors.hpp"

namespace corext {

namespace {

std::string at(size_t i, size_t j) { return "at basis (" + std::to_string(i) + ", " + std::to_string(j) + ")"; }
std::string at(size_t i, size_t j, size_t k) {
  return "at basis (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

// Product in A ⊗_k B of two ambient vectors.
Vec tensor_multiply(const FiniteAlgebra& a, const FiniteAlgebra& b, const Vec& x, const Vec& y) {
  const size_t da = a.dim(), db = b.dim();
  Vec out = zero_vec(da * db, a.field());
  for (size_t p = 0; p < da; ++p)
    for (size_t q = 0; q < db; ++q) {
      const Scalar& s = x[p * db + q];
      if (s.is_zero()) continue;
      for (size_t r = 0; r < da; ++r)
        for (size_t t = 0; t < db; ++t) {
          const Scalar& u = y[r * db + t];
          if (!u.is_zero()) axpy(out, s * u, kron(a.product(p, r), b.product(q, t)));
        }
    }
  return out;
}

// Tensors and helpers shared by the entwining checks and constructions.
struct Entwined {
  const EntwiningStructure& e;
  const FiniteAlgebra& a;
  const Coring& d;
  Field f;
  size_t da, dd;
  TensorPtr d_a, a_d, a_dd;

  explicit Entwined(const EntwiningStructure& x)
      : e(x), a(*x.algebra()), d(*x.coring), f(x.coring->field()), da(a.dim()), dd(d.dim()) {
    const AlgebraPtr& l = x.base();
    auto a_al = make_bimodule(a.name(), x.algebra(), l, da, a_left(), a_right_by_l());
    auto a_la = make_bimodule(a.name(), l, x.algebra(), da, a_left_by_l(), a_right());
    d_a = tensor_over(x.coring->carrier(), l, a_la);
    a_d = tensor_over(a_al, l, x.coring->carrier());
    a_dd = tensor_over(a_d->bimodule(), l, x.coring->carrier());
  }

  std::vector<Matrix> a_left() const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < da; ++i) out.push_back(a.left_mul(i));
    return out;
  }
  std::vector<Matrix> a_right() const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < da; ++i) out.push_back(a.right_mul(i));
    return out;
  }
  std::vector<Matrix> a_left_by_l() const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < e.base()->dim(); ++i) out.push_back(a.left_mul_by(e.ring.matrix.column(i)));
    return out;
  }
  std::vector<Matrix> a_right_by_l() const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < e.base()->dim(); ++i) out.push_back(a.right_mul_by(e.ring.matrix.column(i)));
    return out;
  }

  Vec a_unit(size_t i) const { return a.basis(i); }
  Vec d_unit(size_t i) const { return unit_vec(dd, i, f); }

  // ψ(d ⊗ a) on A ⊗_k D
  Vec psi(const Vec& dv, const Vec& av) const { return a_d->lift(e.psi * d_a->pure(dv, av)); }
  // Σ x a_i ⊗ d_j ↦ Σ x (y a_i) ⊗ d_j
  Vec left_mult(const Vec& y, const Vec& amb) const {
    Vec out = zero_vec(da * dd, f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = amb[i * dd + j];
        if (!w.is_zero()) axpy(out, w, kron(a.multiply(y, a_unit(i)), d_unit(j)));
      }
    return out;
  }
  // Σ x a_i ⊗ d_j ↦ Σ x a_i ψ(d_j ⊗ y)
  Vec pull_through(const Vec& amb, const Vec& y) const {
    Vec out = zero_vec(da * dd, f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = amb[i * dd + j];
        if (!w.is_zero()) axpy(out, w, left_mult(a_unit(i), psi(d_unit(j), y)));
      }
    return out;
  }
  // A ⊗ ε
  Vec counit(const Vec& amb) const {
    Vec out = zero_vec(da, f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = amb[i * dd + j];
        if (!w.is_zero()) axpy(out, w, a.multiply(a_unit(i), e.ring(d.counit().column(j))));
      }
    return out;
  }
  // A ⊗ Δ into (A ⊗_L D) ⊗_L D
  Vec coproduct(const Vec& amb) const {
    Vec out = zero_vec(a_dd->dim(), f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = amb[i * dd + j];
        if (w.is_zero()) continue;
        Vec x = d.coproduct_lift(j);
        for (size_t p = 0; p < dd; ++p)
          for (size_t q = 0; q < dd; ++q)
            if (!x[p * dd + q].is_zero())
              axpy(out, w * x[p * dd + q], a_dd->pure(a_d->pure(a_unit(i), d_unit(p)), d_unit(q)));
      }
    return out;
  }
  Vec e_of(size_t j) const { return counit(psi(d_unit(j), a.unit())); }
};

CoringExtension certified(CoringExtension ext) { return certify_purity(std::move(ext), {}); }

}  // namespace

GroupTable cyclic_group(size_t n) {
  GroupTable g(n, std::vector<size_t>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = (i + j) % n;
  return g;
}

std::vector<size_t> group_inverses(const GroupTable& g) {
  std::vector<size_t> inv(g.size(), g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) throw UsageError("group table is not square");
    for (size_t j = 0; j < g.size(); ++j)
      if (g[i][j] == 0) inv[i] = j;
    if (inv[i] == g.size()) throw UsageError("group element " + std::to_string(i) + " has no inverse");
  }
  return inv;
}

CoringPtr make_coalgebra(std::string name, Field f, size_t dim, const Matrix& coproduct_ambient, Matrix counit) {
  auto k = FiniteAlgebra::ground(f);
  auto v = make_bimodule(name, k, k, dim, {Matrix::identity(dim, f)}, {Matrix::identity(dim, f)});
  return Coring::from_lift(std::move(name), v, coproduct_ambient, std::move(counit));
}

CoringPtr dual_group_coalgebra(Field f, const GroupTable& g, std::string name) {
  const size_t n = g.size();
  auto inv = group_inverses(g);
  Matrix delta(n * n, n, f), eps(1, n, f);
  for (size_t s = 0; s < n; ++s) {
    for (size_t t = 0; t < n; ++t) delta(t * n + g[inv[t]][s], s) += Scalar(1);
    if (s == 0) eps(0, s) = Scalar(1);
  }
  return make_coalgebra(std::move(name), f, n, delta, eps);
}

CoringPtr grouplike_coalgebra(Field f, size_t n, std::string name) {
  Matrix delta(n * n, n, f), eps(1, n, f);
  for (size_t i = 0; i < n; ++i) {
    delta(i * n + i, i) = Scalar(1);
    eps(0, i) = Scalar(1);
  }
  return make_coalgebra(std::move(name), f, n, delta, eps);
}

void validate_bialgebra(const Bialgebra& h) {
  const FiniteAlgebra& a = *h.algebra;
  const Coring& c = *h.coalgebra;
  if (!c.base()->is_ground() || c.dim() != a.dim()) throw UsageError("bialgebra: coalgebra does not match the algebra");
  a.validate();
  const size_t n = a.dim();
  Field f = a.field();
  Vec one = a.unit();
  Vec delta_one = zero_vec(n * n, f);
  for (size_t i = 0; i < n; ++i)
    if (!one[i].is_zero()) axpy(delta_one, one[i], c.coproduct_lift(i));
  if (delta_one != kron(one, one)) throw AxiomError("bialgebra coproduct unital", "Δ(1) != 1 ⊗ 1 in " + a.name());
  if (c.counit() * one != Vec{f.one()}) throw AxiomError("bialgebra counit unital", "ε(1) != 1 in " + a.name());
  auto delta_of = [&](const Vec& x) {
    Vec out = zero_vec(n * n, f);
    for (size_t i = 0; i < n; ++i)
      if (!x[i].is_zero()) axpy(out, x[i], c.coproduct_lift(i));
    return out;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (delta_of(a.product(i, j)) != tensor_multiply(a, a, c.coproduct_lift(i), c.coproduct_lift(j)))
        throw AxiomError("bialgebra coproduct multiplicative", at(i, j));
      if (c.counit() * a.product(i, j) != Vec{c.counit()(0, i) * c.counit()(0, j)})
        throw AxiomError("bialgebra counit multiplicative", at(i, j));
    }
  if (!h.antipode) return;
  const Matrix& s = *h.antipode;
  if (s.rows() != n || s.cols() != n) throw UsageError("antipode has the wrong shape");
  for (size_t x = 0; x < n; ++x) {
    Vec w = c.coproduct_lift(x), left = zero_vec(n, f), right = zero_vec(n, f);
    for (size_t p = 0; p < n; ++p)
      for (size_t q = 0; q < n; ++q) {
        const Scalar& v = w[p * n + q];
        if (v.is_zero()) continue;
        axpy(left, v, a.multiply(s.column(p), a.basis(q)));
        axpy(right, v, a.multiply(a.basis(p), s.column(q)));
      }
    Vec target = scale(c.counit()(0, x), one);
    if (left != target || right != target) throw AxiomError("antipode", "at basis " + std::to_string(x));
  }
}

Bialgebra group_bialgebra(Field f, const GroupTable& g, std::string name) {
  const size_t n = g.size();
  auto inv = group_inverses(g);
  Matrix delta(n * n, n, f), eps(1, n, f), s(n, n, f);
  for (size_t i = 0; i < n; ++i) {
    delta(i * n + i, i) = Scalar(1);
    eps(0, i) = Scalar(1);
    s(inv[i], i) = Scalar(1);
  }
  Bialgebra h{group_algebra(f, g, name), make_coalgebra(name, f, n, delta, eps), s};
  validate_bialgebra(h);
  return h;
}

BimodulePtr ring_bimodule(const AlgebraMap& ring) {
  const FiniteAlgebra& a = *ring.target;
  std::vector<Matrix> l, r;
  for (size_t i = 0; i < ring.source->dim(); ++i) {
    l.push_back(a.left_mul_by(ring.matrix.column(i)));
    r.push_back(a.right_mul_by(ring.matrix.column(i)));
  }
  return make_bimodule(a.name(), ring.source, ring.source, a.dim(), l, r);
}

void check_entwining(const EntwiningStructure& e) {
  e.ring.validate();
  if (!same_algebra(e.coring->base(), e.base())) throw UsageError("entwining: coring is not over the base of the ring");
  Entwined x(e);
  const FiniteAlgebra& a = x.a;
  const size_t da = x.da, dd = x.dd;
  if (e.psi.rows() != x.a_d->dim() || e.psi.cols() != x.d_a->dim()) throw UsageError("entwining: ψ has the wrong shape");
  const AlgebraPtr& l = e.base();
  if (!l->is_ground()) {
    auto src = restrict_right(x.d_a->bimodule(), e.ring);
    auto dst = restrict_left(x.a_d->bimodule(), e.ring);
    if (!is_zero(linearity_defect(*src, *dst, {true, true}, e.psi)))
      throw AxiomError("psi L-bilinear", "ψ does not commute with the L-actions");
  }
  auto proj = [&](const Vec& amb) { return x.a_d->project(amb); };

  for (size_t d = 0; d < dd; ++d)
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < da; ++j) {
        Vec lhs = proj(x.psi(x.d_unit(d), a.product(i, j)));
        Vec rhs = proj(x.pull_through(x.psi(x.d_unit(d), a.basis(i)), a.basis(j)));
        if (lhs != rhs) throw AxiomError("psi respects multiplication", at(d, i, j));
      }

  for (size_t d = 0; d < dd; ++d) {
    Vec lhs = proj(x.psi(x.d_unit(d), a.unit()));
    Vec rhs;
    if (!e.weak) {
      rhs = x.a_d->pure(a.unit(), x.d_unit(d));
    } else {
      Vec w = x.d.coproduct_lift(d);
      Vec amb = zero_vec(da * dd, x.f);
      for (size_t p = 0; p < dd; ++p)
        for (size_t q = 0; q < dd; ++q)
          if (!w[p * dd + q].is_zero()) axpy(amb, w[p * dd + q], kron(x.e_of(p), x.d_unit(q)));
      rhs = proj(amb);
    }
    if (lhs != rhs) throw AxiomError(e.weak ? "psi respects unit (weak)" : "psi respects unit", "at basis " + std::to_string(d));
  }

  for (size_t d = 0; d < dd; ++d)
    for (size_t i = 0; i < da; ++i) {
      Vec lhs = x.coproduct(x.psi(x.d_unit(d), a.basis(i)));
      Vec rhs = zero_vec(x.a_dd->dim(), x.f);
      Vec w = x.d.coproduct_lift(d);
      for (size_t p = 0; p < dd; ++p)
        for (size_t q = 0; q < dd; ++q) {
          const Scalar& s = w[p * dd + q];
          if (s.is_zero()) continue;
          Vec y = x.psi(x.d_unit(q), a.basis(i));
          for (size_t r = 0; r < da; ++r)
            for (size_t t = 0; t < dd; ++t) {
              const Scalar& u = y[r * dd + t];
              if (u.is_zero()) continue;
              Vec z = x.psi(x.d_unit(p), a.basis(r));
              for (size_t m = 0; m < da; ++m)
                for (size_t n = 0; n < dd; ++n)
                  if (!z[m * dd + n].is_zero())
                    axpy(rhs, s * u * z[m * dd + n], x.a_dd->pure(x.a_d->pure(a.basis(m), x.d_unit(n)), x.d_unit(t)));
            }
        }
      if (lhs != rhs) throw AxiomError("psi respects coproduct", at(d, i));
    }

  for (size_t d = 0; d < dd; ++d) {
    Vec scalar = e.weak ? x.e_of(d) : e.ring(x.d.counit().column(d));
    for (size_t i = 0; i < da; ++i)
      if (x.counit(x.psi(x.d_unit(d), a.basis(i))) != a.multiply(scalar, a.basis(i)))
        throw AxiomError(e.weak ? "psi respects counit (weak)" : "psi respects counit", at(d, i));
  }
}

EntwiningStructure entwining_from_lift(const AlgebraMap& ring, const CoringPtr& d, const Matrix& psi_ambient, bool weak) {
  EntwiningStructure e{ring, d, Matrix(), weak};
  Entwined x(e);
  if (psi_ambient.rows() != x.a_d->ambient_dim() || psi_ambient.cols() != x.d_a->ambient_dim())
    throw UsageError("entwining: ψ has the wrong shape");
  e.psi = x.d_a->descend(x.a_d->projection() * psi_ambient, "ψ on D ⊗_L A");
  check_entwining(e);
  return e;
}

Grouplike EntwiningCoring::grouplike(const Vec& x) const {
  Entwined w(entwining);
  Vec v = a_d->project(w.psi(x, entwining.algebra()->unit()));
  auto c = solve_linear(inclusion, v);
  if (!c) throw StructuralError("ψ(x ⊗ 1) is outside the coring");
  Grouplike g{coring, *c};
  validate_grouplike(g);
  return g;
}

Matrix EntwiningCoring::jtilde(const Matrix& lambda_bar) const {
  const FiniteAlgebra& a = *entwining.algebra();
  const size_t dd = entwining.coring->dim();
  if (lambda_bar.rows() != a.dim() || lambda_bar.cols() != dd) throw UsageError("λ̄ has the wrong shape");
  Matrix out(a.dim(), coring->dim(), a.field());
  for (size_t s = 0; s < coring->dim(); ++s) {
    Vec amb = a_d->lift(inclusion.column(s));
    Vec col = zero_vec(a.dim(), a.field());
    for (size_t i = 0; i < a.dim(); ++i)
      for (size_t j = 0; j < dd; ++j)
        if (!amb[i * dd + j].is_zero()) axpy(col, amb[i * dd + j], a.multiply(a.basis(i), lambda_bar.column(j)));
    out.set_column(s, col);
  }
  return out;
}

EntwiningCoring entwining_coring(const EntwiningStructure& e) {
  if (e.weak) throw UsageError("entwining_coring needs a strict entwining");
  check_entwining(e);
  Entwined x(e);
  const FiniteAlgebra& a = x.a;
  const size_t dc = x.a_d->dim(), dd = x.dd;
  Field f = x.f;
  std::vector<Matrix> right;
  for (size_t k = 0; k < x.da; ++k) {
    Matrix r(dc, dc, f);
    for (size_t s = 0; s < dc; ++s) r.set_column(s, x.a_d->project(x.pull_through(x.a_d->lift(unit_vec(dc, s, f)), a.basis(k))));
    right.push_back(r);
  }
  const std::string name = a.name() + "(x)" + x.d.name();
  auto carrier = with_right(x.a_d->bimodule(), e.algebra(), right);
  Matrix delta(dc * dc, dc, f), eps(x.da, dc, f), tau(dc * dd, dc, f);
  for (size_t s = 0; s < dc; ++s) {
    Vec amb = x.a_d->lift(unit_vec(dc, s, f));
    eps.set_column(s, x.counit(amb));
    Vec dcol = zero_vec(dc * dc, f), tcol = zero_vec(dc * dd, f);
    for (size_t i = 0; i < x.da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = amb[i * dd + j];
        if (w.is_zero()) continue;
        Vec cp = x.d.coproduct_lift(j);
        for (size_t p = 0; p < dd; ++p)
          for (size_t q = 0; q < dd; ++q) {
            const Scalar& v = cp[p * dd + q];
            if (v.is_zero()) continue;
            Vec first = x.a_d->pure(a.basis(i), x.d_unit(p));
            axpy(dcol, w * v, kron(first, x.a_d->pure(a.unit(), x.d_unit(q))));
            axpy(tcol, w * v, kron(first, x.d_unit(q)));
          }
      }
    delta.set_column(s, dcol);
    tau.set_column(s, tcol);
  }
  EntwiningCoring out;
  out.entwining = e;
  out.coring = Coring::from_lift(name, carrier, delta, eps);
  out.a_d = x.a_d;
  out.inclusion = Matrix::identity(dc, f);
  out.projection = Matrix::identity(dc, f);
  out.ext = certified(extension_from_lift(out.coring, e.coring, x.a_d->bimodule(), tau, e.ring));
  return out;
}

EntwiningCoring weak_entwining_coring(const EntwiningStructure& e) {
  if (!e.base()->is_ground()) throw UsageError("weak entwinings are supported over k only");
  check_entwining(e);
  Entwined x(e);
  const FiniteAlgebra& a = x.a;
  const size_t da = x.da, dd = x.dd, n = da * dd;
  Field f = x.f;
  // a ⊗ d ↦ a ψ(d ⊗ 1)
  Matrix p(n, n, f);
  for (size_t i = 0; i < da; ++i)
    for (size_t j = 0; j < dd; ++j) p.set_column(i * dd + j, x.left_mult(a.basis(i), x.psi(x.d_unit(j), a.unit())));
  if (p * p != p) throw StructuralError("a ⊗ d ↦ a 1_ψ ⊗ d^ψ is not idempotent");
  Subspace s = image(p);
  const size_t dc = s.dim();
  auto coords = [&](const Vec& v, const char* what) {
    auto c = s.coordinates(v);
    if (!c) throw StructuralError(std::string(what) + " leaves the coring");
    return *c;
  };
  std::vector<Vec> basis = s.basis();
  std::vector<Matrix> left, right;
  for (size_t k = 0; k < da; ++k) {
    Matrix l(dc, dc, f), r(dc, dc, f);
    for (size_t t = 0; t < dc; ++t) {
      l.set_column(t, coords(x.left_mult(a.basis(k), basis[t]), "left A-action"));
      r.set_column(t, coords(x.pull_through(basis[t], a.basis(k)), "right A-action"));
    }
    left.push_back(l);
    right.push_back(r);
  }
  const std::string name = a.name() + "(x)" + x.d.name();
  auto carrier = make_bimodule(name, e.algebra(), e.algebra(), dc, left, right);
  Matrix delta(dc * dc, dc, f), eps(da, dc, f), tau(dc * dd, dc, f);
  for (size_t t = 0; t < dc; ++t) {
    const Vec& b = basis[t];
    eps.set_column(t, x.counit(b));
    Vec dcol = zero_vec(dc * dc, f), tcol = zero_vec(dc * dd, f), plain = zero_vec(n * dd, f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < dd; ++j) {
        const Scalar& w = b[i * dd + j];
        if (w.is_zero()) continue;
        Vec cp = x.d.coproduct_lift(j);
        for (size_t q1 = 0; q1 < dd; ++q1)
          for (size_t q2 = 0; q2 < dd; ++q2) {
            const Scalar& v = cp[q1 * dd + q2];
            if (v.is_zero()) continue;
            Vec first = coords(p * kron(a.basis(i), x.d_unit(q1)), "coproduct");
            Vec second = coords(p * kron(a.unit(), x.d_unit(q2)), "coproduct");
            axpy(dcol, w * v, kron(first, second));
            axpy(tcol, w * v, kron(first, x.d_unit(q2)));
            axpy(plain, w * v, kron(kron(a.basis(i), x.d_unit(q1)), x.d_unit(q2)));
          }
      }
    // A ⊗ Δ_D restricted to C agrees with (P ⊗ D)(A ⊗ Δ_D).
    Vec restricted = zero_vec(n * dd, f);
    for (size_t u = 0; u < dc; ++u)
      for (size_t q = 0; q < dd; ++q)
        if (!tcol[u * dd + q].is_zero()) axpy(restricted, tcol[u * dd + q], kron(basis[u], x.d_unit(q)));
    if (restricted != plain) throw StructuralError("the two forms of the D-coaction on the weak entwining coring differ");
    delta.set_column(t, dcol);
    tau.set_column(t, tcol);
  }
  EntwiningCoring out;
  out.entwining = e;
  out.coring = Coring::from_lift(name, carrier, delta, eps);
  out.a_d = x.a_d;
  out.inclusion = Matrix::from_columns(n, basis, f);
  out.projection = Matrix(dc, n, f);
  for (size_t i = 0; i < n; ++i) out.projection.set_column(i, coords(p.column(i), "projection"));
  auto k = FiniteAlgebra::ground(f);
  auto al = with_right(carrier, k, {Matrix::identity(dc, f)});
  out.ext = certified(extension_from_lift(out.coring, e.coring, al, tau, unit_map(e.algebra())));
  return out;
}

EntwiningStructure hopf_entwining(const Bialgebra& h, const AlgebraPtr& a, const Matrix& coaction) {
  validate_bialgebra(h);
  const FiniteAlgebra& alg = *a;
  const FiniteAlgebra& hh = *h.algebra;
  const size_t da = alg.dim(), dh = hh.dim();
  Field f = alg.field();
  if (coaction.rows() != da * dh || coaction.cols() != da) throw UsageError("coaction has the wrong shape");
  try {
    Comodule("A", h.coalgebra, vector_space(f, da), coaction);
  } catch (const AxiomError& err) {
    throw AxiomError("comodule algebra: " + err.axiom(), err.what());
  }
  if (coaction * alg.unit() != kron(alg.unit(), hh.unit()))
    throw AxiomError("comodule algebra: unital coaction", "ρ(1) != 1 ⊗ 1");
  for (size_t i = 0; i < da; ++i)
    for (size_t j = 0; j < da; ++j)
      if (coaction * alg.product(i, j) != tensor_multiply(alg, hh, coaction.column(i), coaction.column(j)))
        throw AxiomError("comodule algebra: multiplicative coaction", at(i, j));
  Matrix psi(da * dh, dh * da, f);
  for (size_t d = 0; d < dh; ++d)
    for (size_t x = 0; x < da; ++x) {
      Vec rho = coaction.column(x), col = zero_vec(da * dh, f);
      for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < dh; ++j)
          if (!rho[i * dh + j].is_zero()) axpy(col, rho[i * dh + j], kron(alg.basis(i), hh.product(d, j)));
      psi.set_column(d * da + x, col);
    }
  return entwining_from_lift(unit_map(a), h.coalgebra, psi, false);
}

void check_partial_action(const PartialGroupAction& pa) {
  const FiniteAlgebra& a = *pa.algebra;
  const size_t n = pa.group.size(), da = a.dim();
  auto inv = group_inverses(pa.group);
  if (pa.idempotents.size() != n || pa.alpha.size() != n) throw UsageError("partial action: one idempotent and one map per group element");
  for (size_t s = 0; s < n; ++s) {
    if (pa.idempotents[s].size() != da || pa.alpha[s].rows() != da || pa.alpha[s].cols() != da)
      throw UsageError("partial action: wrong shapes at " + std::to_string(s));
    for (size_t t = 0; t < n; ++t)
      if (pa.group[s][t] >= n) throw UsageError("group table entry out of range");
  }
  if (pa.idempotents[0] != a.unit() || !pa.alpha[0].is_identity())
    throw AxiomError("partial action identity", "e_1 = 1 and α_1 = id are required");
  for (size_t s = 0; s < n; ++s) {
    const Vec& e = pa.idempotents[s];
    if (a.multiply(e, e) != e) throw AxiomError("partial action idempotent", "e_" + std::to_string(s));
    for (size_t i = 0; i < da; ++i)
      if (a.multiply(e, a.basis(i)) != a.multiply(a.basis(i), e))
        throw AxiomError("partial action central", "e_" + std::to_string(s) + " " + at(s, i));
    const Matrix& al = pa.alpha[s];
    Matrix dom = a.right_mul_by(pa.idempotents[inv[s]]), cod = a.right_mul_by(e);
    if (al * dom != al || cod * al != al)
      throw AxiomError("partial action domain", "α_" + std::to_string(s) + " must map A e_{σ⁻¹} into A e_σ");
    if (rank(al) != rank(dom) || rank(dom) != rank(cod))
      throw AxiomError("partial action bijective", "α_" + std::to_string(s));
    if (al * pa.idempotents[inv[s]] != e) throw AxiomError("partial action unital", "α_" + std::to_string(s));
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < da; ++j)
        if (al * a.product(i, j) != a.multiply(al.column(i), al.column(j)))
          throw AxiomError("partial action multiplicative", "α_" + std::to_string(s) + " " + at(i, j));
  }
  for (size_t s = 0; s < n; ++s)
    for (size_t t = 0; t < n; ++t)
      if (pa.alpha[s] * pa.alpha[t] != a.right_mul_by(pa.idempotents[s]) * pa.alpha[pa.group[s][t]])
        throw AxiomError("partial action composition", at(s, t));
}

Vec PartialActionCoring::nu(size_t sigma, const Vec& a) const {
  const FiniteAlgebra& alg = *action.algebra;
  Vec out = zero_vec(coring ? coring->dim() : offsets.back(), alg.field());
  auto c = components[sigma].coordinates(alg.multiply(a, action.idempotents[sigma]));
  for (size_t i = 0; i < c->size(); ++i) out[offsets[sigma] + i] = (*c)[i];
  return out;
}

PartialActionCoring partial_action_coring(const PartialGroupAction& pa) {
  check_partial_action(pa);
  const FiniteAlgebra& a = *pa.algebra;
  const size_t n = pa.group.size(), da = a.dim();
  Field f = a.field();
  auto inv = group_inverses(pa.group);
  PartialActionCoring out;
  out.action = pa;
  size_t dc = 0;
  for (size_t s = 0; s < n; ++s) {
    out.components.push_back(image(a.right_mul_by(pa.idempotents[s])));
    out.offsets.push_back(dc);
    dc += out.components.back().dim();
  }
  out.offsets.push_back(dc);
  // basis element b of C: (σ, x) with x in A e_σ
  std::vector<std::pair<size_t, Vec>> basis;
  for (size_t s = 0; s < n; ++s)
    for (const auto& v : out.components[s].basis()) basis.emplace_back(s, v);
  std::vector<Matrix> left, right;
  for (size_t k = 0; k < da; ++k) {
    Matrix l(dc, dc, f), r(dc, dc, f);
    for (size_t b = 0; b < dc; ++b) {
      const auto& [s, x] = basis[b];
      l.set_column(b, out.nu(s, a.multiply(a.basis(k), x)));
      r.set_column(b, out.nu(s, a.multiply(x, pa.alpha[s].column(k))));
    }
    left.push_back(l);
    right.push_back(r);
  }
  auto carrier = make_bimodule("C", pa.algebra, pa.algebra, dc, left, right);
  Matrix delta(dc * dc, dc, f), eps(da, dc, f), tau(dc * n, dc, f);
  Vec g = zero_vec(dc, f);
  for (size_t s = 0; s < n; ++s) g = add(g, out.nu(s, a.unit()));
  for (size_t b = 0; b < dc; ++b) {
    const auto& [s, x] = basis[b];
    if (s == 0) eps.set_column(b, x);
    Vec dcol = zero_vec(dc * dc, f), tcol = zero_vec(dc * n, f);
    for (size_t t = 0; t < n; ++t) {
      size_t rest = pa.group[inv[t]][s];
      Vec first = out.nu(t, x);
      dcol = add(dcol, kron(first, out.nu(rest, a.unit())));
      tcol = add(tcol, kron(first, unit_vec(n, rest, f)));
    }
    delta.set_column(b, dcol);
    tau.set_column(b, tcol);
  }
  out.coring = Coring::from_lift("C", carrier, delta, eps);
  out.grouplike = {out.coring, g};
  validate_grouplike(out.grouplike);
  out.dual_group = dual_group_coalgebra(f, pa.group);
  out.tau = tau;
  auto k = FiniteAlgebra::ground(f);
  auto al = with_right(carrier, k, {Matrix::identity(dc, f)});
  try {
    out.ext = certified(extension_from_lift(out.coring, out.dual_group, al, tau, unit_map(pa.algebra)));
  } catch (const AxiomError& e) {
    out.ext_error = e.what();
  }
  return out;
}

SweedlerCoring sweedler_coring(const AlgebraMap& inclusion) {
  inclusion.validate();
  if (rank(inclusion.matrix) != inclusion.source->dim()) throw UsageError("Sweedler coring: B → A is not injective");
  const AlgebraPtr& a = inclusion.target;
  const FiniteAlgebra& alg = *a;
  Field f = alg.field();
  auto reg = regular_bimodule(a);
  auto t = tensor_over(restrict_right(reg, inclusion), inclusion.source, restrict_left(reg, inclusion));
  const size_t dc = t->dim(), da = alg.dim();
  Matrix delta(dc * dc, dc, f), eps(da, dc, f);
  for (size_t s = 0; s < dc; ++s) {
    Vec amb = t->lift(unit_vec(dc, s, f));
    Vec dcol = zero_vec(dc * dc, f), ecol = zero_vec(da, f);
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < da; ++j) {
        const Scalar& w = amb[i * da + j];
        if (w.is_zero()) continue;
        axpy(dcol, w, kron(t->pure(alg.basis(i), alg.unit()), t->pure(alg.unit(), alg.basis(j))));
        axpy(ecol, w, alg.product(i, j));
      }
    delta.set_column(s, dcol);
    eps.set_column(s, ecol);
  }
  SweedlerCoring out{inclusion, nullptr, {}};
  out.coring = Coring::from_lift(alg.name() + "(x)" + inclusion.source->name() + alg.name(), t->bimodule(), delta, eps);
  out.grouplike = {out.coring, t->pure(alg.unit(), alg.unit())};
  validate_grouplike(out.grouplike);
  return out;
}

namespace {

Matrix diag(Field f, std::initializer_list<int> v) {
  Matrix m(v.size(), v.size(), f);
  size_t i = 0;
  for (int x : v) {
    m(i, i) = f.from_int(x);
    ++i;
  }
  return m;
}

Matrix from_ints(Field f, size_t rows, size_t cols, std::initializer_list<int> v) {
  Matrix m(rows, cols, f);
  size_t i = 0;
  for (int x : v) {
    m(i / cols, i % cols) = f.from_int(x);
    ++i;
  }
  return m;
}

void finish(Fixture& fx, bool with_pair) {
  fx.samples = {fx.sigma, regular_comodule(fx.coring)};
  if (with_pair) fx.samples.push_back(with_name(direct_sum(fx.sigma, fx.sigma), "A+A"));
}

Fixture entwining_fixture(std::string name, std::string description, EntwiningCoring ec, const Vec& x) {
  Fixture fx;
  fx.name = std::move(name);
  fx.description = std::move(description);
  fx.coring = ec.coring;
  fx.ext = ec.ext;
  fx.sigma = grouplike_comodule(ec.grouplike(x), "A");
  fx.has_entwining = true;
  fx.entwining = std::move(ec);
  return fx;
}

Fixture partial_fixture(std::string name, std::string description, const PartialGroupAction& pa) {
  auto pc = partial_action_coring(pa);
  Fixture fx;
  fx.name = std::move(name);
  fx.description = std::move(description);
  fx.coring = pc.coring;
  fx.ext = pc.ext;
  fx.ext_error = pc.ext_error;
  if (!pc.ext) {
    Field f = pa.algebra->field();
    auto al = with_right(pc.coring->carrier(), FiniteAlgebra::ground(f), {Matrix::identity(pc.coring->dim(), f)});
    fx.rejected = RejectedExtension{pc.dual_group, al, pc.tau, unit_map(pa.algebra)};
  }
  fx.sigma = grouplike_comodule(pc.grouplike, "A");
  return fx;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"E1", "E2", "E3", "E4", "E5", "swap", "LxL", "C3-degenerate"}; }

Fixture make_fixture(const std::string& name, Field f) {
  auto k = FiniteAlgebra::ground(f);
  if (name == "E1") {
    Fixture fx;
    fx.name = name;
    fx.description = "trivial coring k over k";
    fx.coring = trivial_coring(k);
    fx.ext = trivial_extension(fx.coring);
    fx.sigma = grouplike_comodule({fx.coring, Vec{f.one()}}, "A");
    finish(fx, true);
    return fx;
  }
  if (name == "E2") {
    auto h = group_bialgebra(f, cyclic_group(2), "kC2");
    Matrix coaction(4, 2, f);
    for (size_t i = 0; i < 2; ++i) coaction.set_column(i, h.coalgebra->coproduct_lift(i));
    auto ec = entwining_coring(hopf_entwining(h, h.algebra, coaction));
    auto fx = entwining_fixture(name, "A (x) H for A = H = kC2 with the Hopf entwining", ec, h.algebra->unit());
    fx.lambda = Matrix::identity(2, f);
    fx.lambda_bar = *h.antipode;
    finish(fx, true);
    return fx;
  }
  if (name == "E3") {
    auto a = truncated_polynomial_algebra(f, Vec{f.from_int(-2), f.zero()}, "A");
    auto sw = sweedler_coring(unit_map(a));
    Fixture fx;
    fx.name = name;
    fx.description = "Sweedler coring A (x)_k A for A = k[x]/(x^2 - 2)";
    fx.coring = sw.coring;
    fx.ext = trivial_extension(sw.coring);
    fx.sigma = grouplike_comodule(sw.grouplike, "A");
    finish(fx, true);
    return fx;
  }
  if (name == "E4") {
    auto a = diagonal_algebra(f, 3, "k^3");
    PartialGroupAction pa{cyclic_group(2), a, {a->unit(), Vec{f.one(), f.one(), f.zero()}},
                          {Matrix::identity(3, f), from_ints(f, 3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 0})}};
    auto fx = partial_fixture(name, "partial C2-action on k^3 swapping the first two factors", pa);
    finish(fx, true);
    return fx;
  }
  if (name == "E5") {
    auto d = grouplike_coalgebra(f, 2, "k^2");
    // ψ(u_i ⊗ a) = a λ_i u_i with λ = (1, 0)
    auto e = entwining_from_lift(unit_map(k), d, diag(f, {1, 0}), true);
    auto ec = weak_entwining_coring(e);
    auto fx = entwining_fixture(name, "weak entwining of k with k^2, psi(u_i (x) a) = a l_i u_i, l = (1, 0)", ec,
                                unit_vec(2, 0, f));
    fx.lambda = from_ints(f, 1, 2, {1, 0});
    fx.lambda_bar = from_ints(f, 1, 2, {1, 0});
    finish(fx, true);
    return fx;
  }
  if (name == "swap") {
    auto a = diagonal_algebra(f, 2, "k^2");
    PartialGroupAction pa{cyclic_group(2), a, {a->unit(), a->unit()},
                          {Matrix::identity(2, f), from_ints(f, 2, 2, {0, 1, 1, 0})}};
    auto fx = partial_fixture(name, "global C2-action on k^2 by swapping the factors", pa);
    fx.lambda = Matrix::identity(2, f);
    fx.lambda_bar = Matrix::identity(2, f);
    finish(fx, true);
    return fx;
  }
  if (name == "LxL") {
    // C = k^2 grouplike over A = k, with L = k^2 acting on the right by
    // coordinate projections; D = L.
    auto l = diagonal_algebra(f, 2, "L");
    auto c = grouplike_coalgebra(f, 2, "C");
    auto al = with_right(c->carrier(), l, {diag(f, {1, 0}), diag(f, {0, 1})});
    auto d = trivial_coring(l);
    Matrix tau(4, 2, f);
    for (size_t i = 0; i < 2; ++i) tau.set_column(i, kron(unit_vec(2, i, f), l->unit()));
    Fixture fx;
    fx.name = name;
    fx.description = "k^2 grouplike coalgebra with a right L = k^2 action not induced by any L -> k";
    fx.coring = c;
    auto ext = extension_from_lift(c, d, al, tau);
    auto g = grouplike_comodule({c, unit_vec(2, 0, f)}, "A");
    fx.sigma = with_left_structure(g, l, {diag(f, {1}), diag(f, {0})});
    fx.ext = certify_purity(ext, default_purity_list(ext, fx.sigma));
    fx.samples = {fx.sigma, regular_comodule(c)};
    return fx;
  }
  if (name == "C3-degenerate") {
    auto a = diagonal_algebra(f, 2, "k^2");
    PartialGroupAction pa{cyclic_group(3), a, {a->unit(), Vec{f.one(), f.zero()}, Vec{f.zero(), f.one()}},
                          {Matrix::identity(2, f), from_ints(f, 2, 2, {0, 1, 0, 0}), from_ints(f, 2, 2, {0, 0, 1, 0})}};
    auto fx = partial_fixture(name, "partial C3-action on k^2 whose ideals meet trivially", pa);
    finish(fx, false);
    return fx;
  }
  throw UsageError("unknown fixture '" + name + "'");
}

}  // namespace corext
