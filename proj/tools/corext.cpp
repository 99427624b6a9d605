#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "corext/report.hpp"

using namespace corext;

namespace {

size_t terminal_width() {
  if (const char* c = std::getenv("COLUMNS")) {
    char* end = nullptr;
    long v = std::strtol(c, &end, 10);
    if (end != c && v > 0) return static_cast<size_t>(v);
  }
  return 80;
}

int emit(const Report& r, bool json) {
  if (json)
    std::cout << format_document(r.document());
  else
    std::cout << r.text(terminal_width());
  return r.exit_code();
}

Report perturbation_report(const Workspace& ws, size_t count) {
  Report r;
  r.command = "perturb";
  r.target = ws.description;
  for (const auto& p : perturbation_sweep(ws, count)) {
    Check c;
    c.id = p.block + " " + p.name + " " + p.entry;
    c.verdict = p.rejected ? "rejected: " + p.axiom : "accepted";
    c.grade = "certified";
    c.ok = p.rejected;
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corext: exact checks for corings, comodules and their extensions"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Emit the report as JSON");

  std::string path;
  CommandOptions opts;
  std::string samples;
  size_t perturb = 0;
  auto with_names = [&](CLI::App* sub, bool ext) {
    sub->add_option("path", path, "Workspace file (" + std::string(file_extension) + ")")->required();
    sub->add_option("--sigma", opts.sigma, "Comodule Sigma (default from the file)");
    if (ext)
      sub->add_option("--extension", opts.extension,
                      "Extension name, or '" + std::string(trivial_extension_name) + "' for D = k");
    sub->add_option("--samples", samples, "Comma-separated comodule or module names for on-samples verdicts");
  };
  auto* validate = app.add_subcommand("validate", "Run every structural validator");
  validate->add_option("path", path, "Workspace file")->required();
  validate->add_option("--perturb", perturb, "Also run this many single-entry perturbations");
  auto* morita = app.add_subcommand("morita", "Morita contexts of Sigma");
  with_names(morita, true);
  auto* extension = app.add_subcommand("extension", "Extension context and its identities");
  with_names(extension, true);
  auto* cleft = app.add_subcommand("cleft", "Cleft data, Galois and normal basis verdicts");
  with_names(cleft, true);
  cleft->add_option("--j", opts.j, "Map D -> Sigma");
  cleft->add_option("--jtilde", opts.jtilde, "Map C -> Sigma*, as values in A or flattened functionals");
  auto* galois = app.add_subcommand("galois", "Canonical map and Galois verdict");
  with_names(galois, true);
  auto* theorems = app.add_subcommand("theorems", "Theorem verifiers");
  with_names(theorems, true);
  theorems->add_option("--suite", opts.suite, "all|weak|strong|surjectivity|jJ|diamond|fgp|strictness");
  theorems->add_option("--j", opts.j, "Map D -> Sigma for the cleft side");
  auto* zoo = app.add_subcommand("zoo", "Bundled fixtures");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "List fixture names");
  std::string fixture, field = "Q", out;
  auto* zoo_emit = zoo->add_subcommand("emit", "Write a fixture as a workspace file");
  zoo_emit->add_option("name", fixture, "Fixture name")->required();
  zoo_emit->add_option("--field", field, "Q or Fp, e.g. F7");
  zoo_emit->add_option("-o,--output", out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::stringstream ss(samples);
  for (std::string s; std::getline(ss, s, ',');)
    if (!s.empty()) opts.samples.push_back(s);

  try {
    if (zoo_list->parsed()) {
      for (const auto& n : fixture_names()) std::cout << n << "  " << make_fixture(n).description << "\n";
      return 0;
    }
    if (zoo_emit->parsed()) {
      std::string text = format_document(emit_fixture(make_fixture(fixture, Field::parse(field))));
      if (out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write '" + out + "'");
        f << text;
      }
      return 0;
    }
    Workspace ws = load_workspace_file(path);
    if (validate->parsed()) {
      Report r = run_validate(ws);
      int code = emit(r, json);
      if (perturb > 0) code = std::max(code, emit(perturbation_report(ws, perturb), json));
      return code;
    }
    if (morita->parsed()) return emit(run_morita(ws, opts), json);
    if (extension->parsed()) return emit(run_extension(ws, opts), json);
    if (cleft->parsed()) return emit(run_cleft(ws, opts), json);
    if (galois->parsed()) return emit(run_galois(ws, opts), json);
    if (theorems->parsed()) return emit(run_theorems(ws, opts), json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const AxiomError& e) {
    std::cerr << "axiom failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
