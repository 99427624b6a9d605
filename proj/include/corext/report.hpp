#pragma once

#include <string>
#include <vector>

#include "corext/galois.hpp"
#include "corext/workspace.hpp"

namespace corext {

struct Check {
  std::string id;
  std::string verdict;
  std::string grade;  // certified, on-samples, inconclusive or empty
  bool ok = true;     // false: an axiom failed or a proved statement did not hold
  Json witnesses = Json::object();
  double ms = 0;
};

struct Report {
  std::string command, target;
  std::vector<Check> checks;

  bool ok() const;
  // Some check contradicted a proved statement.
  bool implementation_error() const;
  int exit_code() const { return ok() ? 0 : 1; }
  // Everything but the timings; identical input gives identical bytes.
  Json canonical() const;
  std::string hash() const;
  Json document() const;  // canonical body, timings and hash
  std::string text(size_t width) const;
};

std::string fnv1a_hex(const std::string& bytes);

struct CommandOptions {
  std::string sigma, extension, j, jtilde;
  std::string suite = "all";
  std::vector<std::string> samples;
};

// "trivial" as the extension name selects D = k.
inline constexpr const char* trivial_extension_name = "trivial";

Report run_validate(const Workspace& ws);
Report run_morita(const Workspace& ws, const CommandOptions& opts);
Report run_extension(const Workspace& ws, const CommandOptions& opts);
Report run_cleft(const Workspace& ws, const CommandOptions& opts);
Report run_galois(const Workspace& ws, const CommandOptions& opts);
// Suites: all, weak, strong, surjectivity, jJ, diamond, fgp, strictness.
Report run_theorems(const Workspace& ws, const CommandOptions& opts);

}  // namespace corext
