#include <cstdio>
#include <fstream>

#include "corext/report.hpp"
#include "doctest.h"

using namespace corext;

namespace {

Workspace round_trip(const std::string& name, Field f = Field::rationals()) {
  return load_workspace(Json::parse(format_document(emit_fixture(make_fixture(name, f)))));
}

Json minimal_doc() {
  auto doc = emit_fixture(make_fixture("E1"));
  return doc;
}

const Check* find(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.id.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

std::string temp_path(const std::string& stem) { return "/tmp/corext_test_" + stem + file_extension; }

}  // namespace

TEST_CASE("every fixture survives emit and load") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto fx = make_fixture(name);
    auto ws = round_trip(name);
    CHECK(ws.description == name + ": " + fx.description);
    CHECK(ws.comodules.has(ws.defaults.sigma));
    auto sigma = ws.comodules.at("comodule", ws.defaults.sigma);
    CHECK(sigma->dim() == fx.sigma->dim());
    // emitting twice gives the same bytes
    CHECK(format_document(emit_fixture(fx)) == format_document(emit_fixture(make_fixture(name))));
    if (fx.ext) {
      CHECK(ws.valid());
    } else {
      CHECK_FALSE(ws.valid());
      REQUIRE(ws.failures.size() >= 1);
      CHECK(ws.failures.front().block == "extension");
    }
  }
}

TEST_CASE("fixtures reduce mod 7") {
  for (const auto& name : {"E1", "E2", "E3", "E5"}) {
    CAPTURE(name);
    auto ws = round_trip(name, Field::parse("F7"));
    CHECK(ws.valid());
    CHECK(ws.field.to_string() == "F7");
  }
}

TEST_CASE("perturbations are rejected") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto ws = round_trip(name);
    auto sweep = perturbation_sweep(ws, 20);
    CHECK(sweep.size() == 20);
    for (const auto& p : sweep) {
      CAPTURE(p.block + " " + p.name + " " + p.entry);
      CHECK(p.rejected);
      CHECK_FALSE(p.axiom.empty());
    }
  }
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(load_workspace(Json::array()), ParseError);
  auto doc = minimal_doc();
  doc["format"] = "corext/0";
  CHECK_THROWS_AS(load_workspace(doc), ParseError);

  doc = minimal_doc();
  doc["algebras"][0]["unit"] = Json::array({"1", "0"});
  CHECK_THROWS_AS(load_workspace(doc), ParseError);

  doc = minimal_doc();
  doc["corings"][0]["carrier"] = "nowhere";
  CHECK_THROWS_AS(load_workspace(doc), ParseError);

  doc = minimal_doc();
  doc["algebras"][0]["unit"] = Json::array({Json(1.5)});
  CHECK_THROWS_AS(load_workspace(doc), ParseError);

  CHECK_THROWS_AS(load_workspace_file("/nonexistent/x.corext.json"), ParseError);
  auto empty = temp_path("empty");
  { std::ofstream(empty) << "  \n"; }
  CHECK_THROWS_AS(load_workspace_file(empty), ParseError);
  std::remove(empty.c_str());
}

TEST_CASE("axiom failure is collected and dependents skipped") {
  auto doc = minimal_doc();
  doc["algebras"][0]["unit"] = Json::array({"2"});
  auto ws = load_workspace(doc);
  REQUIRE_FALSE(ws.valid());
  CHECK(ws.failures.front().block == "algebra");
  bool skipped = false;
  for (const auto& f : ws.failures) skipped = skipped || f.axiom == "skipped";
  CHECK(skipped);
  auto r = run_validate(ws);
  CHECK_FALSE(r.ok());
  CHECK(r.exit_code() == 1);
}

TEST_CASE("reports are deterministic") {
  auto ws1 = round_trip("E2");
  auto ws2 = round_trip("E2");
  CommandOptions o;
  auto a = run_theorems(ws1, o);
  auto b = run_theorems(ws2, o);
  CHECK(a.hash() == b.hash());
  CHECK(a.canonical().dump() == b.canonical().dump());
  CHECK(a.hash().size() == 16);
  CHECK(a.document().contains("timings_ms"));
  CHECK_FALSE(a.canonical().contains("timings_ms"));
  // FNV-1a 64 of the empty string
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
}

TEST_CASE("command verdicts") {
  CommandOptions o;
  auto e2 = round_trip("E2");
  auto cleft = run_cleft(e2, o);
  CHECK(cleft.ok());
  auto c = find(cleft, "cleft");
  REQUIRE(c);
  CHECK(c->verdict.rfind("cleft;", 0) == 0);

  auto e5 = round_trip("E5");
  auto r5 = run_cleft(e5, o);
  auto w = find(r5, "cleft");
  REQUIRE(w);
  CHECK(w->verdict.rfind("weak-cleft", 0) == 0);

  auto e3 = round_trip("E3");
  CommandOptions t;
  t.extension = trivial_extension_name;
  auto r3 = run_cleft(e3, t);
  auto nc = find(r3, "cleft");
  REQUIRE(nc);
  CHECK(nc->verdict.rfind("not cleft", 0) == 0);

  auto g = run_galois(e3, o);
  CHECK(g.ok());

  CommandOptions bad;
  bad.suite = "nonsense";
  CHECK_THROWS_AS(run_theorems(e2, bad), UsageError);
  bad = {};
  bad.sigma = "nonsense";
  CHECK_THROWS_AS(run_morita(e2, bad), UsageError);
}

TEST_CASE("commands on a rejected extension") {
  auto e4 = round_trip("E4");
  CommandOptions o;
  CHECK(run_morita(e4, o).ok());
  CHECK_THROWS_AS(run_cleft(e4, o), AxiomError);
}

TEST_CASE("every command runs on every valid fixture") {
  for (const auto& name : fixture_names()) {
    auto ws = round_trip(name);
    if (!ws.valid()) continue;
    CAPTURE(name);
    CommandOptions o;
    for (auto* run : {run_morita, run_extension, run_cleft, run_galois, run_theorems}) {
      auto r = run(ws, o);
      CHECK_FALSE(r.implementation_error());
      CHECK(r.ok());
    }
    CHECK(run_validate(ws).ok());
  }
}
