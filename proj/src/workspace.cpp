#include "corext/workspace.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace corext {

std::string scalar_text(const Scalar& s) {
  std::string t = s.to_string();
  if (s.modulus() != 0) t = t.substr(0, t.find(' '));
  return t;
}

namespace {

// ---- reading

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing '" + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

size_t need_size(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw ParseError(where + ": '" + key + "' must be a nonnegative integer");
  return v.get<size_t>();
}

Scalar read_scalar(const Json& v, Field f, const std::string& where) {
  try {
    if (v.is_string()) return Scalar::parse(v.get<std::string>(), f);
    if (v.is_number_integer()) return f.from_int(v.get<int64_t>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": scalars are strings like \"-1/2\"");
}

Vec read_vec(const Json& v, size_t n, Field f, const std::string& where) {
  if (!v.is_array() || v.size() != n) throw ParseError(where + ": expected a vector of length " + std::to_string(n));
  Vec out;
  for (const auto& x : v) out.push_back(read_scalar(x, f, where));
  return out;
}

Matrix read_matrix(const Json& v, size_t rows, size_t cols, Field f, const std::string& where) {
  if (!v.is_array() || v.size() != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows of length " + std::to_string(cols));
  Matrix m(rows, cols, f);
  for (size_t r = 0; r < rows; ++r) {
    Vec row = read_vec(v[r], cols, f, where + " row " + std::to_string(r));
    for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

std::vector<Matrix> read_actions(const Json& v, size_t count, size_t dim, Field f, const std::string& where) {
  if (!v.is_array() || v.size() != count)
    throw ParseError(where + ": expected " + std::to_string(count) + " action matrices");
  std::vector<Matrix> out;
  for (size_t i = 0; i < count; ++i) out.push_back(read_matrix(v[i], dim, dim, f, where + " " + std::to_string(i)));
  return out;
}

const Json& section(const Json& doc, const char* key) {
  static const Json empty = Json::array();
  if (!doc.contains(key)) return empty;
  const Json& v = doc.at(key);
  if (!v.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  return v;
}

template <class T>
const T& resolve(const NamedList<T>& list, const std::string& kind, const std::string& name, const std::string& where) {
  if (!list.has(name)) throw ParseError(where + ": unknown " + kind + " '" + name + "'");
  return list.items.at(name);
}

// ---- writing

Json write_vec(const Vec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_text(x));
  return out;
}

Json write_matrix(const Matrix& m) {
  Json out = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_text(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json write_actions(const std::vector<Matrix>& acts) {
  Json out = Json::array();
  for (const auto& a : acts) out.push_back(write_matrix(a));
  return out;
}

}  // namespace

Workspace load_workspace(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document is not an object");
  std::string fmt = need_string(doc, "format", "document");
  if (fmt != file_format) throw ParseError("unsupported format '" + fmt + "'");
  Workspace ws;
  try {
    ws.field = Field::parse(need_string(doc, "field", "document"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("field: ") + e.what());
  }
  Field f = ws.field;
  if (doc.contains("description") && doc.at("description").is_string()) ws.description = doc.at("description");
  std::set<std::string> failed;
  auto fail = [&](const std::string& block, const std::string& name, const std::string& axiom, const std::string& detail) {
    ws.failures.push_back({block, name, axiom, detail});
    failed.insert(block + ":" + name);
  };
  // Runs a validator unless a dependency already failed.
  auto attempt = [&](const std::string& block, const std::string& name, const std::vector<std::string>& deps,
                     const std::function<void()>& build) {
    for (const auto& d : deps)
      if (failed.count(d)) {
        fail(block, name, "skipped", "depends on " + d);
        return;
      }
    try {
      build();
      ++ws.validated;
    } catch (const AxiomError& e) {
      fail(block, name, e.axiom(), e.what());
    } catch (const StructuralError& e) {
      fail(block, name, "structure", e.what());
    } catch (const UsageError& e) {
      fail(block, name, "usage", e.what());
    }
  };
  auto name_of = [](const Json& b, const std::string& kind) {
    std::string where = kind;
    return need_string(b, "name", where);
  };

  for (const auto& b : section(doc, "algebras")) {
    std::string name = name_of(b, "algebra");
    std::string where = "algebra " + name;
    size_t dim = need_size(b, "dim", where);
    Vec unit = read_vec(need(b, "unit", where), dim, f, where + " unit");
    const Json& prods = need(b, "products", where);
    if (!prods.is_array() || prods.size() != dim * dim)
      throw ParseError(where + ": expected " + std::to_string(dim * dim) + " products");
    std::vector<Vec> products;
    for (size_t i = 0; i < dim * dim; ++i) products.push_back(read_vec(prods[i], dim, f, where + " product"));
    ws.algebras.add(name, nullptr);
    attempt("algebra", name, {}, [&] {
      auto a = std::make_shared<FiniteAlgebra>(name, f, dim, products, unit);
      a->validate();
      ws.algebras.add(name, a);
    });
  }
  for (const auto& b : section(doc, "bimodules")) {
    std::string name = name_of(b, "bimodule");
    std::string where = "bimodule " + name;
    std::string ln = need_string(b, "left", where), rn = need_string(b, "right", where);
    const AlgebraPtr& l = resolve(ws.algebras, "algebra", ln, where);
    const AlgebraPtr& r = resolve(ws.algebras, "algebra", rn, where);
    size_t dim = need_size(b, "dim", where);
    ws.bimodules.add(name, nullptr);
    attempt("bimodule", name, {"algebra:" + ln, "algebra:" + rn}, [&] {
      auto la = read_actions(need(b, "left_actions", where), l->dim(), dim, f, where + " left action");
      auto ra = read_actions(need(b, "right_actions", where), r->dim(), dim, f, where + " right action");
      auto m = make_bimodule(name, l, r, dim, la, ra);
      m->validate();
      ws.bimodules.add(name, m);
    });
  }
  for (const auto& b : section(doc, "corings")) {
    std::string name = name_of(b, "coring");
    std::string where = "coring " + name;
    std::string cn = need_string(b, "carrier", where);
    const BimodulePtr& carrier = resolve(ws.bimodules, "bimodule", cn, where);
    ws.corings.add(name, nullptr);
    attempt("coring", name, {"bimodule:" + cn}, [&] {
      size_t d = carrier->dim();
      Matrix delta = read_matrix(need(b, "coproduct", where), d * d, d, f, where + " coproduct");
      Matrix eps = read_matrix(need(b, "counit", where), carrier->left_algebra()->dim(), d, f, where + " counit");
      ws.corings.add(name, Coring::from_lift(name, carrier, delta, eps));
    });
  }
  for (const auto& b : section(doc, "comodules")) {
    std::string name = name_of(b, "comodule");
    std::string where = "comodule " + name;
    std::string cn = need_string(b, "coring", where), mn = need_string(b, "carrier", where);
    const CoringPtr& c = resolve(ws.corings, "coring", cn, where);
    const BimodulePtr& carrier = resolve(ws.bimodules, "bimodule", mn, where);
    ws.comodules.add(name, nullptr);
    attempt("comodule", name, {"coring:" + cn, "bimodule:" + mn}, [&] {
      Matrix rho = read_matrix(need(b, "coaction", where), carrier->dim() * c->dim(), carrier->dim(), f,
                               where + " coaction");
      ws.comodules.add(name, Comodule::from_lift(name, c, carrier, rho));
    });
  }
  if (doc.contains("defaults")) {
    const Json& d = doc.at("defaults");
    for (auto [key, slot] : {std::pair{"sigma", &ws.defaults.sigma}, std::pair{"extension", &ws.defaults.extension},
                             std::pair{"j", &ws.defaults.j}, std::pair{"jtilde", &ws.defaults.jtilde}})
      if (d.contains(key)) *slot = need_string(d, key, "defaults");
    if (d.contains("samples"))
      for (const auto& s : d.at("samples")) {
        if (!s.is_string()) throw ParseError("defaults: samples must be names");
        ws.defaults.samples.push_back(s);
      }
  }
  for (const auto& b : section(doc, "extensions")) {
    std::string name = name_of(b, "extension");
    std::string where = "extension " + name;
    ExtensionEntry entry{need_string(b, "inner", where), need_string(b, "outer", where),
                         need_string(b, "inner_al", where), std::nullopt};
    const CoringPtr& c = resolve(ws.corings, "coring", entry.inner, where);
    const CoringPtr& d = resolve(ws.corings, "coring", entry.outer, where);
    const BimodulePtr& al = resolve(ws.bimodules, "bimodule", entry.inner_al, where);
    std::vector<std::string> deps{"coring:" + entry.inner, "coring:" + entry.outer, "bimodule:" + entry.inner_al};
    std::optional<AlgebraMap> split;
    if (b.contains("split")) {
      const Json& s = b.at("split");
      std::string sn = need_string(s, "source", where + " split"), tn = need_string(s, "target", where + " split");
      const AlgebraPtr& src = resolve(ws.algebras, "algebra", sn, where);
      const AlgebraPtr& tgt = resolve(ws.algebras, "algebra", tn, where);
      deps.push_back("algebra:" + sn);
      deps.push_back("algebra:" + tn);
      if (src && tgt)
        split = AlgebraMap{src, tgt, read_matrix(need(s, "matrix", where), tgt->dim(), src->dim(), f, where + " split")};
    }
    attempt("extension", name, deps, [&] {
      Matrix tau = read_matrix(need(b, "tau", where), c->dim() * d->dim(), c->dim(), f, where + " tau");
      if (split) split->validate();
      auto ext = extension_from_lift(c, d, al, tau, split);
      ComodulePtr sigma;
      if (ws.comodules.has(ws.defaults.sigma)) sigma = ws.comodules.items.at(ws.defaults.sigma);
      if (!sigma || sigma->coring() != c) sigma = regular_comodule(c);
      entry.ext = certify_purity(ext, default_purity_list(ext, sigma));
    });
    ws.extensions.add(name, entry);
  }
  for (const auto& b : section(doc, "maps")) {
    std::string name = name_of(b, "map");
    std::string where = "map " + name;
    size_t rows = need_size(b, "rows", where), cols = need_size(b, "cols", where);
    ws.maps.add(name, read_matrix(need(b, "entries", where), rows, cols, f, where));
  }
  return ws;
}

Workspace load_workspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (buf.str().find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("'" + path + "' is empty");
  Json doc;
  try {
    doc = Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return load_workspace(doc);
}

std::string format_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json emit_fixture(const Fixture& fx) {
  Field f = fx.coring->field();
  Json doc;
  doc["format"] = file_format;
  doc["field"] = f.to_string();
  doc["description"] = fx.name + ": " + fx.description;
  Json algebras = Json::array(), bimodules = Json::array(), corings = Json::array(), comodules = Json::array();
  std::vector<std::pair<AlgebraPtr, std::string>> anames;
  std::vector<std::pair<const void*, std::string>> names;
  std::set<std::string> used;
  auto fresh = [&](const std::string& kind, std::string base) {
    if (base.empty()) base = kind;
    std::string n = base;
    for (int i = 2; used.count(kind + ":" + n); ++i) n = base + "_" + std::to_string(i);
    used.insert(kind + ":" + n);
    return n;
  };
  auto known = [&](const void* p) -> const std::string* {
    for (const auto& [q, n] : names)
      if (q == p) return &n;
    return nullptr;
  };
  auto algebra = [&](const AlgebraPtr& a) {
    for (const auto& [b, n] : anames)
      if (same_algebra(a, b)) return n;
    std::string n = fresh("algebra", a->name());
    anames.emplace_back(a, n);
    Json prods = Json::array();
    for (const auto& p : a->products()) prods.push_back(write_vec(p));
    algebras.push_back({{"name", n}, {"dim", a->dim()}, {"unit", write_vec(a->unit())}, {"products", prods}});
    return n;
  };
  auto bimodule = [&](const BimodulePtr& m) {
    if (auto n = known(m.get())) return *n;
    std::string ln = algebra(m->left_algebra()), rn = algebra(m->right_algebra());
    std::string n = fresh("bimodule", m->name());
    names.emplace_back(m.get(), n);
    bimodules.push_back({{"name", n},
                         {"left", ln},
                         {"right", rn},
                         {"dim", m->dim()},
                         {"left_actions", write_actions(m->left_actions())},
                         {"right_actions", write_actions(m->right_actions())}});
    return n;
  };
  auto coring = [&](const CoringPtr& c) {
    if (auto n = known(c.get())) return *n;
    std::string cn = bimodule(c->carrier());
    std::string n = fresh("coring", c->name());
    names.emplace_back(c.get(), n);
    Matrix lift(c->dim() * c->dim(), c->dim(), f);
    for (size_t i = 0; i < c->dim(); ++i) lift.set_column(i, c->coproduct_lift(i));
    corings.push_back({{"name", n}, {"carrier", cn}, {"coproduct", write_matrix(lift)}, {"counit", write_matrix(c->counit())}});
    return n;
  };
  auto comodule = [&](const ComodulePtr& m) {
    if (auto n = known(m.get())) return *n;
    std::string cn = coring(m->coring()), mn = bimodule(m->carrier());
    std::string n = fresh("comodule", m->name());
    names.emplace_back(m.get(), n);
    Matrix lift(m->dim() * m->coring()->dim(), m->dim(), f);
    for (size_t i = 0; i < m->dim(); ++i) lift.set_column(i, m->coaction_lift(i));
    comodules.push_back({{"name", n}, {"coring", cn}, {"carrier", mn}, {"coaction", write_matrix(lift)}});
    return n;
  };

  Json defaults;
  std::string cname = coring(fx.coring);
  (void)cname;
  defaults["sigma"] = comodule(fx.sigma);
  Json samples = Json::array();
  for (const auto& s : fx.samples) samples.push_back(comodule(s));
  defaults["samples"] = samples;

  Json extensions = Json::array();
  auto extension = [&](const CoringPtr& outer, const BimodulePtr& al, const Matrix& tau_ambient,
                       const std::optional<AlgebraMap>& split) {
    Json e{{"name", "ext"},
           {"inner", coring(fx.coring)},
           {"outer", coring(outer)},
           {"inner_al", bimodule(al)},
           {"tau", write_matrix(tau_ambient)}};
    if (split)
      e["split"] = {{"source", algebra(split->source)}, {"target", algebra(split->target)}, {"matrix", write_matrix(split->matrix)}};
    extensions.push_back(e);
    defaults["extension"] = "ext";
  };
  if (fx.ext) {
    const auto& ext = *fx.ext;
    Matrix lift(ext.inner->dim() * ext.outer->dim(), ext.inner->dim(), f);
    for (size_t i = 0; i < ext.inner->dim(); ++i) lift.set_column(i, ext.tau_lift(i));
    extension(ext.outer, ext.inner_al, lift, ext.split);
  } else if (fx.rejected) {
    extension(fx.rejected->outer, fx.rejected->inner_al, fx.rejected->tau_ambient, fx.rejected->split);
  }

  Json maps = Json::array();
  auto add_map = [&](const std::string& n, const Matrix& m) {
    maps.push_back({{"name", n}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", write_matrix(m)}});
  };
  if (fx.lambda) {
    add_map("lambda", *fx.lambda);
    defaults["j"] = "lambda";
  }
  if (fx.lambda_bar) add_map("lambda_bar", *fx.lambda_bar);
  if (fx.has_entwining && fx.lambda_bar) {
    add_map("jtilde", fx.entwining.jtilde(*fx.lambda_bar));
    defaults["jtilde"] = "jtilde";
  }

  doc["algebras"] = algebras;
  doc["bimodules"] = bimodules;
  doc["corings"] = corings;
  doc["comodules"] = comodules;
  doc["extensions"] = extensions;
  doc["maps"] = maps;
  doc["defaults"] = defaults;
  return doc;
}

namespace {

std::string try_build(const std::function<void()>& build) {
  try {
    build();
  } catch (const AxiomError& e) {
    return e.axiom();
  } catch (const StructuralError& e) {
    return std::string("structure: ") + e.what();
  } catch (const UsageError& e) {
    return std::string("usage: ") + e.what();
  }
  return "";
}

}  // namespace

std::vector<Perturbation> perturbation_sweep(const Workspace& ws, size_t count) {
  Field f = ws.field;
  // Each slot is a matrix of structure constants with a revalidation.
  struct Item {
    std::string block, name, part;
    Matrix data;
    std::function<void(const Matrix&)> check;
  };
  std::vector<Item> items;
  for (const auto& n : ws.algebras.order) {
    const auto& a = ws.algebras.items.at(n);
    if (!a) continue;
    const size_t d = a->dim();
    Matrix prods(d, d * d, f);
    for (size_t i = 0; i < d * d; ++i) prods.set_column(i, a->products()[i]);
    items.push_back({"algebra", n, "products", prods, [a, d, f, n](const Matrix& m) {
                       std::vector<Vec> p;
                       for (size_t i = 0; i < d * d; ++i) p.push_back(m.column(i));
                       FiniteAlgebra(n, f, d, p, a->unit()).validate();
                     }});
    Matrix unit(d, 1, f);
    unit.set_column(0, a->unit());
    items.push_back({"algebra", n, "unit", unit, [a, d, f, n](const Matrix& m) {
                       FiniteAlgebra(n, f, d, a->products(), m.column(0)).validate();
                     }});
  }
  for (const auto& n : ws.bimodules.order) {
    const auto& b = ws.bimodules.items.at(n);
    if (!b) continue;
    for (int side = 0; side < 2; ++side) {
      const auto& acts = side == 0 ? b->left_actions() : b->right_actions();
      for (size_t i = 0; i < acts.size(); ++i)
        items.push_back({"bimodule", n, (side == 0 ? "left action " : "right action ") + std::to_string(i), acts[i],
                         [b, side, i, n](const Matrix& m) {
                           auto la = b->left_actions(), ra = b->right_actions();
                           (side == 0 ? la : ra)[i] = m;
                           FBimodule(n, b->left_algebra(), b->right_algebra(), b->dim(), la, ra).validate();
                         }});
    }
  }
  for (const auto& n : ws.corings.order) {
    const auto& c = ws.corings.items.at(n);
    if (!c) continue;
    items.push_back({"coring", n, "coproduct", c->coproduct(), [c, n](const Matrix& m) {
                       Coring(n, c->carrier(), m, c->counit(), c->square_ptr());
                     }});
    items.push_back({"coring", n, "counit", c->counit(), [c, n](const Matrix& m) {
                       Coring(n, c->carrier(), c->coproduct(), m, c->square_ptr());
                     }});
  }
  for (const auto& n : ws.comodules.order) {
    const auto& m = ws.comodules.items.at(n);
    if (!m) continue;
    items.push_back({"comodule", n, "coaction", m->coaction(), [m, n](const Matrix& x) {
                       Comodule(n, m->coring(), m->carrier(), x, m->with_coring_ptr());
                     }});
  }
  for (const auto& n : ws.extensions.order) {
    const auto& e = ws.extensions.items.at(n);
    if (!e.ext) continue;
    const auto ext = *e.ext;
    items.push_back({"extension", n, "tau", ext.tau, [ext](const Matrix& x) {
                       extension_check(ext.inner, ext.outer, ext.inner_al, x, ext.split);
                     }});
  }
  size_t total = 0;
  for (const auto& it : items) total += it.data.rows() * it.data.cols();
  std::vector<Perturbation> out;
  if (total == 0) return out;
  for (size_t k = 0; k < count; ++k) {
    // with fewer entries than requested, later rounds add 2, 3, ...
    size_t idx = total >= count ? k * total / count : k % total;
    int64_t delta = total >= count ? 1 : 1 + static_cast<int64_t>(k / total);
    for (auto& it : items) {
      size_t sz = it.data.rows() * it.data.cols();
      if (idx >= sz) {
        idx -= sz;
        continue;
      }
      size_t r = idx / it.data.cols(), c = idx % it.data.cols();
      Matrix m = it.data;
      m(r, c) += f.from_int(delta);
      Perturbation p{it.block, it.name, it.part + " (" + std::to_string(r) + "," + std::to_string(c) + ") +" +
                                            std::to_string(delta), false, ""};
      p.axiom = try_build([&] { it.check(m); });
      p.rejected = !p.axiom.empty();
      out.push_back(p);
      break;
    }
  }
  return out;
}

}  // namespace corext
