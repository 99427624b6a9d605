#include "corext/module.hpp"

#include "corext/errors.hpp"

namespace corext {

FBimodule::FBimodule(std::string name, AlgebraPtr left, AlgebraPtr right, size_t dim, std::vector<Matrix> left_act,
                     std::vector<Matrix> right_act)
    : name_(std::move(name)),
      left_(std::move(left)),
      right_(std::move(right)),
      dim_(dim),
      left_act_(std::move(left_act)),
      right_act_(std::move(right_act)) {
  if (!left_ || !right_) throw UsageError("bimodule " + name_ + ": missing algebra");
  if (left_act_.size() != left_->dim() || right_act_.size() != right_->dim())
    throw UsageError("bimodule " + name_ + ": need one action matrix per algebra basis element");
  for (const auto* acts : {&left_act_, &right_act_})
    for (const auto& m : *acts)
      if (m.rows() != dim_ || m.cols() != dim_) throw UsageError("bimodule " + name_ + ": action matrix has wrong shape");
}

Matrix FBimodule::left_action_by(const Vec& a) const {
  return linear_combination(left_act_, a, dim_, dim_, field());
}

Matrix FBimodule::right_action_by(const Vec& b) const {
  return linear_combination(right_act_, b, dim_, dim_, field());
}

void FBimodule::validate() const {
  const auto& l = *left_;
  const auto& r = *right_;
  for (size_t i = 0; i < l.dim(); ++i)
    for (size_t j = 0; j < l.dim(); ++j)
      if (left_act_[i] * left_act_[j] != left_action_by(l.product(i, j)))
        throw AxiomError("left associativity", "bimodule " + name_ + " at (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
  if (!left_action_by(l.unit()).is_identity()) throw AxiomError("left unitality", "bimodule " + name_);
  // (m b_i) b_j = m (b_i b_j) reads R(b_j) R(b_i) = R(b_i b_j).
  for (size_t i = 0; i < r.dim(); ++i)
    for (size_t j = 0; j < r.dim(); ++j)
      if (right_act_[j] * right_act_[i] != right_action_by(r.product(i, j)))
        throw AxiomError("right associativity", "bimodule " + name_ + " at (" + std::to_string(i) + ", " +
                                                    std::to_string(j) + ")");
  if (!right_action_by(r.unit()).is_identity()) throw AxiomError("right unitality", "bimodule " + name_);
  for (size_t i = 0; i < l.dim(); ++i)
    for (size_t j = 0; j < r.dim(); ++j)
      if (left_act_[i] * right_act_[j] != right_act_[j] * left_act_[i])
        throw AxiomError("actions commute", "bimodule " + name_ + " at (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ")");
}

BimodulePtr make_bimodule(std::string name, AlgebraPtr left, AlgebraPtr right, size_t dim,
                          std::vector<Matrix> left_act, std::vector<Matrix> right_act) {
  return std::make_shared<FBimodule>(std::move(name), std::move(left), std::move(right), dim, std::move(left_act),
                                     std::move(right_act));
}

std::vector<Matrix> actions_of(const AlgebraPtr& a, const std::function<Matrix(const Vec&)>& act) {
  std::vector<Matrix> out;
  for (size_t i = 0; i < a->dim(); ++i) out.push_back(act(a->basis(i)));
  return out;
}

BimodulePtr regular_bimodule(const AlgebraPtr& a) {
  std::vector<Matrix> l, r;
  for (size_t i = 0; i < a->dim(); ++i) {
    l.push_back(a->left_mul(i));
    r.push_back(a->right_mul(i));
  }
  return make_bimodule(a->name(), a, a, a->dim(), l, r);
}

BimodulePtr free_right_module(const AlgebraPtr& a, size_t n) {
  Field f = a->field();
  auto k = FiniteAlgebra::ground(f);
  std::vector<Matrix> r;
  for (size_t i = 0; i < a->dim(); ++i) r.push_back(kron(Matrix::identity(n, f), a->right_mul(i)));
  std::string name = n == 1 ? a->name() : a->name() + "^" + std::to_string(n);
  return make_bimodule(name, k, a, n * a->dim(), {Matrix::identity(n * a->dim(), f)}, r);
}

BimodulePtr free_left_module(const AlgebraPtr& a, size_t n) {
  Field f = a->field();
  auto k = FiniteAlgebra::ground(f);
  std::vector<Matrix> l;
  for (size_t i = 0; i < a->dim(); ++i) l.push_back(kron(Matrix::identity(n, f), a->left_mul(i)));
  std::string name = n == 1 ? a->name() : a->name() + "^" + std::to_string(n);
  return make_bimodule(name, a, k, n * a->dim(), l, {Matrix::identity(n * a->dim(), f)});
}

BimodulePtr vector_space(Field f, size_t n) {
  auto k = FiniteAlgebra::ground(f);
  return make_bimodule("k^" + std::to_string(n), k, k, n, {Matrix::identity(n, f)}, {Matrix::identity(n, f)});
}

BimodulePtr zero_bimodule(const AlgebraPtr& left, const AlgebraPtr& right) {
  Field f = left->field();
  return make_bimodule("0", left, right, 0, std::vector<Matrix>(left->dim(), Matrix(0, 0, f)),
                       std::vector<Matrix>(right->dim(), Matrix(0, 0, f)));
}

BimodulePtr direct_sum(const BimodulePtr& m, const BimodulePtr& n) {
  if (!same_algebra(m->left_algebra(), n->left_algebra()) || !same_algebra(m->right_algebra(), n->right_algebra()))
    throw UsageError("direct sum of bimodules over different algebras");
  std::vector<Matrix> l, r;
  for (size_t i = 0; i < m->left_algebra()->dim(); ++i) l.push_back(direct_sum(m->left_action(i), n->left_action(i)));
  for (size_t i = 0; i < m->right_algebra()->dim(); ++i)
    r.push_back(direct_sum(m->right_action(i), n->right_action(i)));
  return make_bimodule(m->name() + "+" + n->name(), m->left_algebra(), m->right_algebra(), m->dim() + n->dim(), l, r);
}

BimodulePtr with_left(const BimodulePtr& m, const AlgebraPtr& left, std::vector<Matrix> left_act) {
  return make_bimodule(m->name(), left, m->right_algebra(), m->dim(), std::move(left_act), m->right_actions());
}

BimodulePtr with_right(const BimodulePtr& m, const AlgebraPtr& right, std::vector<Matrix> right_act) {
  return make_bimodule(m->name(), m->left_algebra(), right, m->dim(), m->left_actions(), std::move(right_act));
}

BimodulePtr forget_left(const BimodulePtr& m) {
  if (m->left_algebra()->is_ground()) return m;
  return with_left(m, FiniteAlgebra::ground(m->field()), {Matrix::identity(m->dim(), m->field())});
}

BimodulePtr forget_right(const BimodulePtr& m) {
  if (m->right_algebra()->is_ground()) return m;
  return with_right(m, FiniteAlgebra::ground(m->field()), {Matrix::identity(m->dim(), m->field())});
}

BimodulePtr restrict_right(const BimodulePtr& m, const AlgebraMap& phi) {
  if (!same_algebra(phi.target, m->right_algebra())) throw UsageError("restrict_right: algebra mismatch");
  return with_right(m, phi.source, actions_of(phi.source, [&](const Vec& l) { return m->right_action_by(phi(l)); }));
}

BimodulePtr restrict_left(const BimodulePtr& m, const AlgebraMap& phi) {
  if (!same_algebra(phi.target, m->left_algebra())) throw UsageError("restrict_left: algebra mismatch");
  return with_left(m, phi.source, actions_of(phi.source, [&](const Vec& l) { return m->left_action_by(phi(l)); }));
}

BimodulePtr sub_bimodule(const BimodulePtr& m, const Subspace& s, std::string name) {
  Field f = m->field();
  const size_t d = s.dim();
  Matrix incl = s.basis_rows().transpose();
  auto restrict = [&](const Matrix& act) {
    Matrix r(d, d, f);
    for (size_t j = 0; j < d; ++j) {
      auto c = s.coordinates(act * incl.column(j));
      if (!c) throw AxiomError("closure", "subspace is not stable under the actions of " + m->name());
      r.set_column(j, *c);
    }
    return r;
  };
  std::vector<Matrix> l, r;
  for (const auto& a : m->left_actions()) l.push_back(restrict(a));
  for (const auto& a : m->right_actions()) r.push_back(restrict(a));
  return make_bimodule(std::move(name), m->left_algebra(), m->right_algebra(), d, l, r);
}

HomSpace::HomSpace(size_t source_dim, size_t target_dim, Subspace space)
    : src_(source_dim), tgt_(target_dim), space_(std::move(space)) {
  if (space_.ambient_dim() != src_ * tgt_) throw UsageError("hom space: ambient mismatch");
  for (size_t i = 0; i < space_.dim(); ++i)
    elements_.push_back(Matrix::unflatten(space_.basis_vector(i), tgt_, src_, space_.field()));
}

HomSpace HomSpace::all(size_t source_dim, size_t target_dim, Field f) {
  return HomSpace(source_dim, target_dim, Subspace::full(source_dim * target_dim, f));
}

HomSpace HomSpace::spanned_by(size_t source_dim, size_t target_dim, const std::vector<Matrix>& maps, Field f) {
  std::vector<Vec> flat;
  for (const auto& m : maps) flat.push_back(m.flatten());
  return HomSpace(source_dim, target_dim, Subspace::span(source_dim * target_dim, flat, f));
}

Matrix HomSpace::element(size_t i) const { return elements_.at(i); }

Matrix HomSpace::combine(const Vec& coeffs) const {
  return linear_combination(elements_, coeffs, tgt_, src_, field());
}

std::optional<Vec> HomSpace::coordinates(const Matrix& m) const {
  if (m.rows() != tgt_ || m.cols() != src_) throw UsageError("hom space: map has wrong shape");
  return space_.coordinates(m.flatten());
}

Vec HomSpace::coords(const Matrix& m, const std::string& what) const {
  auto c = coordinates(m);
  if (!c) throw StructuralError(what + " does not lie in the expected hom space");
  return *c;
}

bool HomSpace::contains(const Matrix& m) const { return coordinates(m).has_value(); }

HomSpace HomSpace::refine(const std::function<Vec(const Matrix&)>& constraint) const {
  if (dim() == 0) return *this;
  std::vector<Vec> cols;
  for (const auto& e : elements_) cols.push_back(constraint(e));
  Matrix c = Matrix::from_columns(cols[0].size(), cols, field());
  Subspace k = kernel(c);
  std::vector<Matrix> maps;
  for (const auto& v : k.basis()) maps.push_back(combine(v));
  return spanned_by(src_, tgt_, maps, field());
}

namespace {

void check_flag_algebras(const FBimodule& m, const FBimodule& n, HomFlags flags) {
  if (flags.left && !same_algebra(m.left_algebra(), n.left_algebra()))
    throw UsageError("hom space: " + m.name() + " and " + n.name() + " have different left algebras");
  if (flags.right && !same_algebra(m.right_algebra(), n.right_algebra()))
    throw UsageError("hom space: " + m.name() + " and " + n.name() + " have different right algebras");
}

}  // namespace

Vec linearity_defect(const FBimodule& m, const FBimodule& n, HomFlags flags, const Matrix& x) {
  check_flag_algebras(m, n, flags);
  Vec out;
  if (flags.left)
    for (size_t i = 0; i < m.left_algebra()->dim(); ++i) {
      Vec d = (x * m.left_action(i) - n.left_action(i) * x).flatten();
      out.insert(out.end(), d.begin(), d.end());
    }
  if (flags.right)
    for (size_t i = 0; i < m.right_algebra()->dim(); ++i) {
      Vec d = (x * m.right_action(i) - n.right_action(i) * x).flatten();
      out.insert(out.end(), d.begin(), d.end());
    }
  return out;
}

HomSpace hom_space(const FBimodule& m, const FBimodule& n, HomFlags flags) {
  check_flag_algebras(m, n, flags);
  Field f = m.field();
  const size_t sm = m.dim(), sn = n.dim();
  // vec(X P) = (I ⊗ Pᵀ) vec X and vec(P X) = (P ⊗ I) vec X, row-major.
  std::vector<Matrix> blocks;
  auto add = [&](const Matrix& on_m, const Matrix& on_n) {
    blocks.push_back(kron(Matrix::identity(sn, f), on_m.transpose()) - kron(on_n, Matrix::identity(sm, f)));
  };
  if (flags.left)
    for (size_t i = 0; i < m.left_algebra()->dim(); ++i) add(m.left_action(i), n.left_action(i));
  if (flags.right)
    for (size_t i = 0; i < m.right_algebra()->dim(); ++i) add(m.right_action(i), n.right_action(i));
  if (blocks.empty()) return HomSpace::all(sm, sn, f);
  return HomSpace(sm, sn, kernel(vstack(blocks, sm * sn, f)));
}

LinearMap make_linear_map(BimodulePtr source, BimodulePtr target, Matrix matrix, HomFlags flags,
                          const std::string& name) {
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
    throw UsageError(name + ": matrix shape does not match source and target");
  check_flag_algebras(*source, *target, flags);
  if (flags.left) {
    Vec d = linearity_defect(*source, *target, {true, false}, matrix);
    if (!is_zero(d)) throw AxiomError("left linearity", name);
  }
  if (flags.right) {
    Vec d = linearity_defect(*source, *target, {false, true}, matrix);
    if (!is_zero(d)) throw AxiomError("right linearity", name);
  }
  return {std::move(source), std::move(target), std::move(matrix)};
}

BalancedTensor::BalancedTensor(BimodulePtr left, AlgebraPtr over, BimodulePtr right)
    : left_(std::move(left)), right_(std::move(right)), over_(std::move(over)) {
  if (!same_algebra(left_->right_algebra(), over_))
    throw UsageError("tensor: " + left_->name() + " is not a right " + over_->name() + "-module");
  if (!same_algebra(right_->left_algebra(), over_))
    throw UsageError("tensor: " + right_->name() + " is not a left " + over_->name() + "-module");
  Field f = left_->field();
  const size_t m = left_->dim(), n = right_->dim();
  std::vector<Vec> rel;
  if (!over_->is_ground()) {
    for (size_t b = 0; b < over_->dim(); ++b) {
      Matrix r = kron(left_->right_action(b), Matrix::identity(n, f)) -
                 kron(Matrix::identity(m, f), right_->left_action(b));
      for (size_t c = 0; c < r.cols(); ++c) {
        Vec v = r.column(c);
        if (!is_zero(v)) rel.push_back(std::move(v));
      }
    }
  }
  space_ = quotient(m * n, Subspace::span(m * n, rel, f));
  std::string name = left_->name() + "(x)" + right_->name();
  const auto& la = left_->left_algebra();
  const auto& ra = right_->right_algebra();
  std::vector<Matrix> lact, ract;
  for (size_t i = 0; i < la->dim(); ++i)
    lact.push_back(descend(space_.projection * kron(left_->left_action(i), Matrix::identity(n, f)),
                           "left action on " + name));
  for (size_t i = 0; i < ra->dim(); ++i)
    ract.push_back(descend(space_.projection * kron(Matrix::identity(m, f), right_->right_action(i)),
                           "right action on " + name));
  result_ = make_bimodule(name, la, ra, space_.dim, lact, ract);
}

Vec BalancedTensor::pure_basis(size_t i, size_t j) const {
  return space_.projection.column(i * right_->dim() + j);
}

bool BalancedTensor::descends(const Matrix& ambient_map) const {
  if (ambient_map.cols() != ambient_dim()) throw UsageError("descend: map has wrong source dimension");
  const Subspace& rel = space_.relations;
  for (size_t i = 0; i < rel.dim(); ++i)
    if (!is_zero(ambient_map * rel.basis_vector(i))) return false;
  return true;
}

Matrix BalancedTensor::descend(const Matrix& ambient_map, const std::string& what) const {
  if (!descends(ambient_map))
    throw StructuralError(what + " is not balanced over " + over_->name());
  return ambient_map * space_.section;
}

TensorPtr tensor_over(const BimodulePtr& m, const AlgebraPtr& b, const BimodulePtr& n) {
  return std::make_shared<BalancedTensor>(m, b, n);
}

Matrix tensor_maps(const BalancedTensor& src, const BalancedTensor& dst, const Matrix& f, const Matrix& g) {
  if (f.cols() != src.left()->dim() || f.rows() != dst.left()->dim() || g.cols() != src.right()->dim() ||
      g.rows() != dst.right()->dim())
    throw UsageError("tensor_maps: shapes do not match the tensor factors");
  return src.descend(dst.projection() * kron(f, g), "tensor product of maps");
}

Matrix associator(const BalancedTensor& xy, const BalancedTensor& xy_z, const BalancedTensor& yz,
                  const BalancedTensor& x_yz) {
  const size_t dx = xy.left()->dim(), dy = xy.right()->dim(), dz = yz.right()->dim();
  if (xy_z.left()->dim() != xy.dim() || xy_z.right()->dim() != dz || x_yz.left()->dim() != dx ||
      x_yz.right()->dim() != yz.dim() || yz.left()->dim() != dy)
    throw UsageError("associator: factors do not match");
  Field f = xy.field();
  // Ambient of (X⊗Y)⊗Z to ambient of X⊗(Y⊗Z): lift the X⊗Y part first.
  Matrix amb(dx * yz.dim(), xy.dim() * dz, f);
  for (size_t u = 0; u < xy.dim(); ++u) {
    Vec s = xy.section().column(u);
    for (size_t k = 0; k < dz; ++k)
      for (size_t i = 0; i < dx; ++i)
        for (size_t j = 0; j < dy; ++j) {
          const Scalar& c = s[i * dy + j];
          if (c.is_zero()) continue;
          for (size_t t = 0; t < yz.dim(); ++t) {
            const Scalar& p = yz.projection()(t, j * dz + k);
            if (!p.is_zero()) amb(i * yz.dim() + t, u * dz + k) += c * p;
          }
        }
  }
  return xy_z.descend(x_yz.projection() * amb, "associator");
}

HomSpace dual_space(const FBimodule& m, Side side) {
  auto mp = std::make_shared<FBimodule>(m);
  const AlgebraPtr& a = side == Side::right ? m.right_algebra() : m.left_algebra();
  if (side == Side::right) return hom_space(*forget_left(mp), *free_right_module(a, 1), {false, true});
  return hom_space(*forget_right(mp), *free_left_module(a, 1), {true, false});
}

DualModule dual_bimodule(const BimodulePtr& m) {
  DualModule d;
  d.maps = dual_space(*m, Side::right);
  const AlgebraPtr& a = m->right_algebra();
  const AlgebraPtr& l = m->left_algebra();
  std::vector<Matrix> left, right;
  auto in_coords = [&](const std::function<Matrix(const Matrix&)>& op) {
    Matrix out(d.maps.dim(), d.maps.dim(), m->field());
    for (size_t s = 0; s < d.maps.dim(); ++s) out.set_column(s, d.maps.coords(op(d.maps.element(s)), "dual action"));
    return out;
  };
  for (size_t i = 0; i < a->dim(); ++i) left.push_back(in_coords([&](const Matrix& xi) { return a->left_mul(i) * xi; }));
  for (size_t i = 0; i < l->dim(); ++i)
    right.push_back(in_coords([&](const Matrix& xi) { return xi * m->left_action(i); }));
  d.bimodule = make_bimodule(m->name() + "*", a, l, d.maps.dim(), std::move(left), std::move(right));
  return d;
}

std::optional<DualBasis> fgp_check(const FBimodule& m, Side side) {
  Field f = m.field();
  HomSpace dual = dual_space(m, side);
  const size_t d = m.dim();
  // E_{p,s}: m ↦ m_p ξ_s(m) (right) or ξ_s(m) m_p (left).
  std::vector<Vec> gens;
  std::vector<std::pair<size_t, size_t>> index;
  for (size_t p = 0; p < d; ++p)
    for (size_t s = 0; s < dual.dim(); ++s) {
      const Matrix& xi = dual.elements()[s];
      Matrix e(d, d, f);
      for (size_t q = 0; q < d; ++q) {
        Vec val = xi.column(q);
        Matrix act = side == Side::right ? m.right_action_by(val) : m.left_action_by(val);
        e.set_column(q, act.column(p));
      }
      gens.push_back(e.flatten());
      index.emplace_back(p, s);
    }
  auto c = span_coefficients(gens, Matrix::identity(d, f).flatten(), d * d, f);
  if (!c) return std::nullopt;
  DualBasis out;
  for (size_t s = 0; s < dual.dim(); ++s) {
    Vec x = zero_vec(d, f);
    for (size_t g = 0; g < index.size(); ++g)
      if (index[g].second == s) axpy(x, (*c)[g], unit_vec(d, index[g].first, f));
    if (is_zero(x)) continue;
    out.elements.push_back(x);
    out.functionals.push_back(dual.elements()[s]);
  }
  return out;
}

std::optional<GeneratorWitness> generator_check(const FBimodule& m, Side side) {
  Field f = m.field();
  const AlgebraPtr& a = side == Side::right ? m.right_algebra() : m.left_algebra();
  HomSpace dual = dual_space(m, side);
  std::vector<Vec> gens;
  for (size_t p = 0; p < m.dim(); ++p)
    for (size_t s = 0; s < dual.dim(); ++s) gens.push_back(dual.elements()[s].column(p));
  auto c = span_coefficients(gens, a->unit(), a->dim(), f);
  if (!c) return std::nullopt;
  GeneratorWitness out;
  for (size_t p = 0; p < m.dim(); ++p) {
    Vec coeffs(dual.dim());
    for (size_t s = 0; s < dual.dim(); ++s) coeffs[s] = (*c)[p * dual.dim() + s];
    if (is_zero(coeffs)) continue;
    out.functionals.push_back(dual.combine(coeffs));
    out.elements.push_back(unit_vec(m.dim(), p, f));
  }
  return out;
}

}  // namespace corext
