#include "corext/coring.hpp"

#include "corext/errors.hpp"

namespace corext {

namespace {

void check_shape(const Matrix& m, size_t rows, size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw UsageError(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

Coring::Coring(std::string name, BimodulePtr carrier, Matrix coproduct, Matrix counit, TensorPtr square)
    : name_(std::move(name)), carrier_(std::move(carrier)), coproduct_(std::move(coproduct)), counit_(std::move(counit)) {
  if (!same_algebra(carrier_->left_algebra(), carrier_->right_algebra()))
    throw UsageError("coring " + name_ + ": carrier must be an A-A bimodule");
  carrier_->validate();
  if (square && square->left() == carrier_ && square->right() == carrier_)
    square_ = std::move(square);
  else
    square_ = tensor_over(carrier_, base(), carrier_);
  validate();
}

CoringPtr Coring::from_lift(std::string name, BimodulePtr carrier, const Matrix& coproduct_ambient, Matrix counit) {
  carrier->validate();
  auto sq = tensor_over(carrier, carrier->left_algebra(), carrier);
  check_shape(coproduct_ambient, sq->ambient_dim(), carrier->dim(), "coproduct of " + name);
  Matrix delta = sq->projection() * coproduct_ambient;
  return std::make_shared<Coring>(std::move(name), std::move(carrier), std::move(delta), std::move(counit), sq);
}

void Coring::validate() const {
  const FiniteAlgebra& a = *base();
  const size_t d = dim();
  check_shape(coproduct_, square_->dim(), d, "coproduct of " + name_);
  check_shape(counit_, a.dim(), d, "counit of " + name_);
  const auto& sqb = *square_->bimodule();
  for (size_t i = 0; i < a.dim(); ++i) {
    if (counit_ * carrier_->left_action(i) != a.left_mul(i) * counit_)
      throw AxiomError("counit left A-linear", "coring " + name_);
    if (counit_ * carrier_->right_action(i) != a.right_mul(i) * counit_)
      throw AxiomError("counit right A-linear", "coring " + name_);
    if (coproduct_ * carrier_->left_action(i) != sqb.left_action(i) * coproduct_)
      throw AxiomError("coproduct left A-linear", "coring " + name_);
    if (coproduct_ * carrier_->right_action(i) != sqb.right_action(i) * coproduct_)
      throw AxiomError("coproduct right A-linear", "coring " + name_);
  }
  if (!(apply_counit_left(*square_, *this) * coproduct_).is_identity())
    throw AxiomError("left counitality", "coring " + name_ + ": (ε⊗C)Δ != id");
  if (!(apply_counit_right(*square_, *this) * coproduct_).is_identity())
    throw AxiomError("right counitality", "coring " + name_ + ": (C⊗ε)Δ != id");
  Field f = field();
  auto cc_c = tensor_over(square_->bimodule(), base(), carrier_);
  auto c_cc = tensor_over(carrier_, base(), square_->bimodule());
  Matrix lhs = tensor_maps(*square_, *cc_c, coproduct_, Matrix::identity(d, f)) * coproduct_;
  Matrix rhs = tensor_maps(*square_, *c_cc, Matrix::identity(d, f), coproduct_) * coproduct_;
  if (associator(*square_, *cc_c, *square_, *c_cc) * lhs != rhs)
    throw AxiomError("coassociativity", "coring " + name_);
}

CoringPtr trivial_coring(const AlgebraPtr& a) {
  Field f = a->field();
  const size_t n = a->dim();
  Matrix amb(n * n, n, f);
  for (size_t i = 0; i < n; ++i) amb.set_column(i, kron(a->basis(i), a->unit()));
  return Coring::from_lift(a->name(), regular_bimodule(a), amb, Matrix::identity(n, f));
}

Matrix apply_counit_right(const BalancedTensor& mc, const Coring& c) {
  const FBimodule& m = *mc.left();
  Field f = c.field();
  const size_t dm = m.dim(), dc = c.dim();
  Matrix amb(dm, dm * dc, f);
  for (size_t j = 0; j < dc; ++j) {
    Matrix r = m.right_action_by(c.counit().column(j));
    for (size_t i = 0; i < dm; ++i)
      for (size_t t = 0; t < dm; ++t) amb(t, i * dc + j) = r(t, i);
  }
  return mc.descend(amb, "m ⊗ c ↦ m ε(c)");
}

Matrix apply_counit_left(const BalancedTensor& cn, const Coring& c) {
  const FBimodule& n = *cn.right();
  Field f = c.field();
  const size_t dn = n.dim(), dc = c.dim();
  Matrix amb(dn, dc * dn, f);
  for (size_t i = 0; i < dc; ++i) {
    Matrix l = n.left_action_by(c.counit().column(i));
    for (size_t j = 0; j < dn; ++j)
      for (size_t t = 0; t < dn; ++t) amb(t, i * dn + j) = l(t, j);
  }
  return cn.descend(amb, "c ⊗ n ↦ ε(c) n");
}

Comodule::Comodule(std::string name, CoringPtr coring, BimodulePtr carrier, Matrix coaction, TensorPtr mc)
    : name_(std::move(name)), coring_(std::move(coring)), carrier_(std::move(carrier)), coaction_(std::move(coaction)) {
  if (!same_algebra(carrier_->right_algebra(), coring_->base()))
    throw UsageError("comodule " + name_ + ": carrier is not a right module over the base of " + coring_->name());
  carrier_->validate();
  if (mc && mc->left() == carrier_ && mc->right() == coring_->carrier())
    mc_ = std::move(mc);
  else
    mc_ = tensor_over(carrier_, coring_->base(), coring_->carrier());
  validate();
}

ComodulePtr Comodule::from_lift(std::string name, CoringPtr coring, BimodulePtr carrier, const Matrix& ambient) {
  carrier->validate();
  auto mc = tensor_over(carrier, coring->base(), coring->carrier());
  check_shape(ambient, mc->ambient_dim(), carrier->dim(), "coaction of " + name);
  Matrix rho = mc->projection() * ambient;
  return std::make_shared<Comodule>(std::move(name), std::move(coring), std::move(carrier), std::move(rho), mc);
}

void Comodule::validate() const {
  const Coring& c = *coring_;
  const size_t d = dim();
  Field f = field();
  check_shape(coaction_, mc_->dim(), d, "coaction of " + name_);
  const auto& mcb = *mc_->bimodule();
  for (size_t i = 0; i < c.base()->dim(); ++i)
    if (coaction_ * carrier_->right_action(i) != mcb.right_action(i) * coaction_)
      throw AxiomError("coaction right A-linear", "comodule " + name_);
  for (size_t i = 0; i < left_algebra()->dim(); ++i)
    if (coaction_ * carrier_->left_action(i) != mcb.left_action(i) * coaction_)
      throw AxiomError("coaction left linear", "comodule " + name_);
  if (!(apply_counit_right(*mc_, c) * coaction_).is_identity())
    throw AxiomError("counitality", "comodule " + name_ + ": (M⊗ε)ρ != id");
  auto mc_c = tensor_over(mc_->bimodule(), c.base(), c.carrier());
  auto m_cc = tensor_over(carrier_, c.base(), c.square().bimodule());
  Matrix lhs = tensor_maps(*mc_, *mc_c, coaction_, Matrix::identity(c.dim(), f)) * coaction_;
  Matrix rhs = tensor_maps(*mc_, *m_cc, Matrix::identity(d, f), c.coproduct()) * coaction_;
  if (associator(*mc_, *mc_c, c.square(), *m_cc) * lhs != rhs)
    throw AxiomError("coassociativity", "comodule " + name_);
}

ComodulePtr with_name(const ComodulePtr& m, std::string name) {
  return std::make_shared<Comodule>(std::move(name), m->coring(), m->carrier(), m->coaction(), m->with_coring_ptr());
}

ComodulePtr regular_comodule(const CoringPtr& c) {
  return std::make_shared<Comodule>(c->name(), c, c->carrier(), c->coproduct(), c->square_ptr());
}

ComodulePtr cofree_comodule(const BimodulePtr& n, const CoringPtr& c) {
  auto nc = tensor_over(n, c->base(), c->carrier());
  auto carrier = nc->bimodule();
  auto nc_c = tensor_over(carrier, c->base(), c->carrier());
  Field f = c->field();
  const size_t dn = n->dim(), dc = c->dim();
  Matrix amb(nc_c->dim(), dn * dc, f);
  for (size_t j = 0; j < dc; ++j) {
    Vec w = c->coproduct_lift(j);
    for (size_t i = 0; i < dn; ++i) {
      Vec col = zero_vec(nc_c->dim(), f);
      for (size_t r = 0; r < dc; ++r)
        for (size_t s = 0; s < dc; ++s) {
          const Scalar& x = w[r * dc + s];
          if (!x.is_zero()) axpy(col, x, nc_c->pure(nc->pure_basis(i, r), unit_vec(dc, s, f)));
        }
      amb.set_column(i * dc + j, col);
    }
  }
  Matrix rho = nc->descend(amb, "N ⊗ Δ");
  return std::make_shared<Comodule>(n->name() + "(x)" + c->name(), c, carrier, rho, nc_c);
}

ComodulePtr direct_sum(const ComodulePtr& m, const ComodulePtr& n) {
  if (m->coring() != n->coring()) throw UsageError("direct sum of comodules over different corings");
  const Coring& c = *m->coring();
  Field f = c.field();
  auto carrier = direct_sum(m->carrier(), n->carrier());
  auto sc = tensor_over(carrier, c.base(), c.carrier());
  const size_t dm = m->dim(), dn = n->dim(), dc = c.dim();
  Matrix rho(sc->dim(), dm + dn, f);
  auto embed = [&](const ComodulePtr& part, size_t offset) {
    for (size_t x = 0; x < part->dim(); ++x) {
      Vec lift = part->coaction_lift(x);
      Vec amb = zero_vec(sc->ambient_dim(), f);
      for (size_t p = 0; p < part->dim(); ++p)
        for (size_t q = 0; q < dc; ++q) amb[(offset + p) * dc + q] = lift[p * dc + q];
      rho.set_column(offset + x, sc->project(amb));
    }
  };
  embed(m, 0);
  embed(n, dm);
  return std::make_shared<Comodule>(m->name() + "+" + n->name(), m->coring(), carrier, rho, sc);
}

ComodulePtr zero_comodule(const CoringPtr& c, const AlgebraPtr& left) {
  return std::make_shared<Comodule>("0", c, zero_bimodule(left, c->base()), Matrix(0, 0, c->field()));
}

ComodulePtr subcomodule(const ComodulePtr& m, const Subspace& s, std::string name) {
  const Coring& c = *m->coring();
  Field f = c.field();
  auto carrier = sub_bimodule(m->carrier(), s, name);
  auto sc = tensor_over(carrier, c.base(), c.carrier());
  Matrix incl = s.basis_rows().transpose();
  Matrix incl_c = tensor_maps(*sc, m->with_coring(), incl, Matrix::identity(c.dim(), f));
  Matrix rho(sc->dim(), s.dim(), f);
  for (size_t j = 0; j < s.dim(); ++j) {
    auto x = solve_linear(incl_c, m->coaction() * incl.column(j));
    if (!x) throw AxiomError("closure", "subspace of " + m->name() + " is not a subcomodule");
    rho.set_column(j, *x);
  }
  return std::make_shared<Comodule>(std::move(name), m->coring(), carrier, rho, sc);
}

ComodulePtr with_left_structure(const ComodulePtr& m, const AlgebraPtr& left, std::vector<Matrix> left_act) {
  auto carrier = with_left(m->carrier(), left, std::move(left_act));
  return std::make_shared<Comodule>(m->name(), m->coring(), carrier, m->coaction());
}

void validate_grouplike(const Grouplike& g) {
  const Coring& c = *g.coring;
  if (g.element.size() != c.dim()) throw UsageError("grouplike has wrong length");
  if (c.coproduct() * g.element != c.square().pure(g.element, g.element))
    throw AxiomError("grouplike coproduct", "Δ(g) != g ⊗ g in " + c.name());
  if (c.counit() * g.element != c.base()->unit())
    throw AxiomError("grouplike counit", "ε(g) != 1 in " + c.name());
}

ComodulePtr grouplike_comodule(const Grouplike& g, std::string name) {
  validate_grouplike(g);
  const Coring& c = *g.coring;
  const FiniteAlgebra& a = *c.base();
  auto carrier = free_right_module(c.base(), 1);
  auto ac = tensor_over(carrier, c.base(), c.carrier());
  Matrix rho(ac->dim(), a.dim(), a.field());
  for (size_t i = 0; i < a.dim(); ++i)
    rho.set_column(i, ac->pure(a.unit(), c.carrier()->right_action(i) * g.element));
  return std::make_shared<Comodule>(std::move(name), g.coring, carrier, rho, ac);
}

Matrix DualRing::product(const Matrix& f, const Matrix& g) const {
  const Coring& c = *coring;
  const size_t d = c.dim();
  Matrix amb(d, d * d, c.field());
  if (side == Side::left) {
    // c_r ⊗ c_s ↦ c_r f(c_s), then apply g.
    for (size_t s = 0; s < d; ++s) {
      Matrix r = c.carrier()->right_action_by(f.column(s));
      for (size_t t = 0; t < d; ++t)
        for (size_t q = 0; q < d; ++q) amb(q, t * d + s) = r(q, t);
    }
    return g * c.square().descend(amb, "c ⊗ c' ↦ c f(c')") * c.coproduct();
  }
  // c_r ⊗ c_s ↦ g(c_r) c_s, then apply f.
  for (size_t r = 0; r < d; ++r) {
    Matrix l = c.carrier()->left_action_by(g.column(r));
    for (size_t s = 0; s < d; ++s)
      for (size_t q = 0; q < d; ++q) amb(q, r * d + s) = l(q, s);
  }
  return f * c.square().descend(amb, "c ⊗ c' ↦ g(c) c'") * c.coproduct();
}

DualRing dual_ring(const CoringPtr& c, Side side) {
  DualRing dr;
  dr.coring = c;
  dr.side = side;
  const AlgebraPtr& a = c->base();
  Field f = c->field();
  if (side == Side::left)
    dr.maps = hom_space(*forget_right(c->carrier()), *free_left_module(a, 1), {true, false});
  else
    dr.maps = hom_space(*forget_left(c->carrier()), *free_right_module(a, 1), {false, true});
  const size_t n = dr.maps.dim();
  std::vector<Vec> products(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      products[i * n + j] = dr.maps.coords(dr.product(dr.maps.element(i), dr.maps.element(j)), "product in *C");
  std::string name = side == Side::left ? "*" + c->name() : c->name() + "*";
  dr.algebra = std::make_shared<FiniteAlgebra>(name, f, n, products, dr.maps.coords(c->counit(), "counit"));
  dr.unit_map = Matrix(n, a->dim(), f);
  for (size_t i = 0; i < a->dim(); ++i) {
    Matrix ea = side == Side::left ? c->counit() * c->carrier()->right_action(i)
                                   : c->counit() * c->carrier()->left_action(i);
    dr.unit_map.set_column(i, dr.maps.coords(ea, "ε(−a)"));
  }
  return dr;
}

BimodulePtr dual_action(const Comodule& m, const DualRing& dual) {
  if (dual.coring != m.coring()) throw UsageError("dual_action: coring mismatch");
  if (dual.side != Side::left) throw UsageError("dual_action: right comodules carry a *C action");
  const Coring& c = *m.coring();
  const size_t dm = m.dim(), dc = c.dim();
  Field f = c.field();
  std::vector<Matrix> acts;
  for (const auto& fn : dual.maps.elements()) {
    Matrix amb(dm, dm * dc, f);
    for (size_t q = 0; q < dc; ++q) {
      Matrix r = m.carrier()->right_action_by(fn.column(q));
      for (size_t p = 0; p < dm; ++p)
        for (size_t t = 0; t < dm; ++t) amb(t, p * dc + q) = r(t, p);
    }
    acts.push_back(m.with_coring().descend(amb, "x ⊗ c ↦ x f(c)") * m.coaction());
  }
  return make_bimodule(m.name(), m.left_algebra(), dual.algebra, dm, m.carrier()->left_actions(), acts);
}

Vec colinearity_defect(const Comodule& m, const Comodule& n, const Matrix& phi) {
  Matrix id = Matrix::identity(m.coring()->dim(), m.field());
  return (n.coaction() * phi - tensor_maps(m.with_coring(), n.with_coring(), phi, id) * m.coaction()).flatten();
}

HomSpace colinear_homs(const Comodule& m, const Comodule& n, bool left_linear) {
  if (m.coring() != n.coring()) throw UsageError("colinear maps between comodules over different corings");
  HomSpace h = hom_space(*m.carrier(), *n.carrier(), {left_linear, true});
  return h.refine([&](const Matrix& phi) { return colinearity_defect(m, n, phi); });
}

EndAlgebra endomorphism_algebra(const Comodule& s) {
  EndAlgebra e;
  Field f = s.field();
  e.maps = colinear_homs(s, s);
  e.algebra = algebra_on_matrices(
      "End(" + s.name() + ")", e.maps.elements(), [](const Matrix& x, const Matrix& y) { return x * y; },
      Matrix::identity(s.dim(), f));
  const auto& l = s.left_algebra();
  e.left_unit = Matrix(e.maps.dim(), l->dim(), f);
  for (size_t i = 0; i < l->dim(); ++i)
    e.left_unit.set_column(i, e.maps.coords(s.carrier()->left_action(i), "x ↦ l x"));
  e.sigma_over = with_left(s.carrier(), e.algebra, e.maps.elements());
  return e;
}

CoringPtr coopposite(const CoringPtr& c) {
  auto aop = opposite_algebra(c->base());
  const auto& car = c->carrier();
  auto carrier = make_bimodule(c->name() + "^cop", aop, aop, c->dim(), car->right_actions(), car->left_actions());
  const size_t d = c->dim();
  Matrix flip(d * d, d, c->field());
  for (size_t x = 0; x < d; ++x) {
    Vec w = c->coproduct_lift(x);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) flip(j * d + i, x) = w[i * d + j];
  }
  return Coring::from_lift(c->name() + "^cop", carrier, flip, c->counit());
}

}  // namespace corext
