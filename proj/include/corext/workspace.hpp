#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "corext/errors.hpp"
#include "corext/zoo.hpp"

namespace corext {

using Json = nlohmann::ordered_json;

inline constexpr const char* file_format = "corext/1";
inline constexpr const char* file_extension = ".corext.json";

template <class T>
struct NamedList {
  std::vector<std::string> order;
  std::map<std::string, T> items;

  bool has(const std::string& name) const { return items.count(name) > 0; }
  const T& at(const std::string& kind, const std::string& name) const;
  void add(const std::string& name, T value) {
    if (!has(name)) order.push_back(name);
    items[name] = std::move(value);
  }
};

struct ExtensionEntry {
  std::string inner, outer, inner_al;
  std::optional<CoringExtension> ext;  // absent when validation failed
};

// One failed validator, with the block that failed.
struct Failure {
  std::string block, name, axiom, detail;
};

struct Workspace {
  Field field;
  std::string description;
  NamedList<AlgebraPtr> algebras;
  NamedList<BimodulePtr> bimodules;
  NamedList<CoringPtr> corings;
  NamedList<ComodulePtr> comodules;
  NamedList<ExtensionEntry> extensions;
  NamedList<Matrix> maps;
  struct {
    std::string sigma, extension, j, jtilde;
    std::vector<std::string> samples;
  } defaults;
  size_t validated = 0;  // blocks that passed
  std::vector<Failure> failures;

  bool valid() const { return failures.empty(); }
};

// Scalars are written as "p/q" strings; residues without the modulus.
std::string scalar_text(const Scalar& s);

// ParseError on malformed input or unresolved names. Axiom failures are
// collected in failures; blocks depending on a failed one are skipped.
Workspace load_workspace(const Json& doc);
Workspace load_workspace_file(const std::string& path);

Json emit_fixture(const Fixture& fx);
// Two-space indentation, keys in insertion order.
std::string format_document(const Json& doc);

// A single structure constant changed by +1, in quotient coordinates for
// tensor-valued maps, then the owning block revalidated.
struct Perturbation {
  std::string block, name, entry;
  bool rejected = false;
  std::string axiom;
};
// count entries spread evenly over all structure constants of the valid
// blocks, in file order.
std::vector<Perturbation> perturbation_sweep(const Workspace& ws, size_t count = 20);

template <class T>
const T& NamedList<T>::at(const std::string& kind, const std::string& name) const {
  auto it = items.find(name);
  if (it == items.end()) throw UsageError("unknown " + kind + " '" + name + "'");
  return it->second;
}

}  // namespace corext
