#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "laxkit/laxkit.hpp"

using namespace laxkit;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(LAXKIT_FIXTURES) + "/" + name);
  REQUIRE(in);
  return json::parse(in);
}

std::string format_error_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("fixture systems load", "[json]") {
  const LoadedSystem a = system_from_json(load("small-bisim-a.json"));
  CHECK(a.diagnostics.ok());
  CHECK(a.system.size() == 3);
  CHECK(a.system.functor().describe() == "Pair(Const[5], PFin(Id))");
  // Encoding and decoding again is the identity.
  const LoadedSystem again = system_from_json(to_json(a.system));
  CHECK(again.system.transitions() == a.system.transitions());
  CHECK(again.system.states() == a.system.states());
  CHECK(to_json(again.system) == to_json(a.system));
}

TEST_CASE("lifting round-trip", "[json]") {
  for (const char* name : {"small-bisim-lifting.json", "weighted-ts-lifting.json", "hausdorff-left.json", "kantorovich.json"}) {
    const LiftingSpec l = lifting_from_json(load(name));
    CHECK(lifting_from_json(to_json(l)) == l);
  }
  const LiftingSpec generic = LiftingSpec::kantorovich_generic({"<>", "[]"}, Scalar(1, 4));
  CHECK(lifting_from_json(to_json(generic)) == generic);
  const LiftingSpec disc = LiftingSpec::discount(Scalar(1, 3), LiftingSpec::maybe(LiftingSpec::wasserstein()));
  CHECK(lifting_from_json(to_json(disc)) == disc);
}

TEST_CASE("certificates load in both forms", "[json]") {
  const LoadedSystem a = system_from_json(load("small-bisim-a.json"));
  const LoadedSystem b = system_from_json(load("small-bisim-b.json"));
  const Certificate sparse = certificate_from_json(load("small-bisim-cert.json"), a.system.states(), b.system.states());
  CHECK(sparse.kind == CertificateKind::Bisimulation);
  CHECK(sparse.relation(0, 0) == Scalar(1, 5));
  CHECK(sparse.relation(0, 1) == Scalar::one());
  json dense = {{"kind", "simulation"}, {"relation", to_json(sparse.relation)}};
  const Certificate d = certificate_from_json(dense, a.system.states(), b.system.states());
  CHECK(d.relation == sparse.relation);
  CHECK(d.kind == CertificateKind::Simulation);
  json bad = {{"entries", json::array({json::array({"a1", "zz", "0.2"})})}};
  CHECK(format_error_path([&] { certificate_from_json(bad, a.system.states(), b.system.states()); }).find("entries[0]") !=
        std::string::npos);
}

TEST_CASE("format errors carry paths", "[json]") {
  json sys = load("small-bisim-a.json");
  sys["alpha"]["a1"][0] = "0.5";
  CHECK(format_error_path([&] { system_from_json(sys); }) == "$.alpha.a1[0]");

  sys = load("small-bisim-a.json");
  sys["alpha"]["a1"][1][1] = "nowhere";
  CHECK(format_error_path([&] { system_from_json(sys); }) == "$.alpha.a1[1][1]");

  sys = load("small-bisim-a.json");
  sys["alpha"].erase("a2");
  CHECK(format_error_path([&] { system_from_json(sys); }) == "$.alpha");

  sys = load("small-bisim-a.json");
  sys["functor"]["left"]["metric"][0][1] = "2";
  CHECK(format_error_path([&] { system_from_json(sys); }).starts_with("$.functor.left.metric"));

  json lift = {{"kind", "pair-sum"}, {"weights", {"1/2"}}};
  CHECK(format_error_path([&] { lifting_from_json(lift); }) == "$.weights");
  CHECK(format_error_path([&] { lifting_from_json(json{{"kind", "warp"}}); }) == "$.kind");
}

TEST_CASE("distribution decoding", "[json]") {
  json sys = {{"functor", {{"kind", "dfin"}, {"sub", {{"kind", "id"}}}}},
              {"states", {"x", "y"}},
              {"alpha", {{"x", json::array({json::array({"x", "1/2"}), json::array({"y", "1/3"})})},
                         {"y", json::array({json::array({"y", 1})})}}}};
  const LoadedSystem loaded = system_from_json(sys);
  CHECK_FALSE(loaded.diagnostics.ok());
  sys["alpha"]["x"] = json::array({json::array({"x", "1/2"}), json::array({"x", "1/2"})});
  CHECK(format_error_path([&] { system_from_json(sys); }) == "$.alpha.x[1]");
}

TEST_CASE("duplicate set members warn", "[json]") {
  json sys = {{"functor", {{"kind", "pfin"}, {"sub", {{"kind", "id"}}}}},
              {"states", {"x"}},
              {"alpha", {{"x", {"x", "x"}}}}};
  const LoadedSystem loaded = system_from_json(sys);
  CHECK(loaded.diagnostics.ok());
  REQUIRE(loaded.diagnostics.items.size() == 1);
  CHECK(loaded.diagnostics.items[0].severity == Diagnostic::Severity::Warning);
  CHECK(loaded.system.alpha(0).items().size() == 1);
}

TEST_CASE("formula JSON", "[json]") {
  const Formula f = parse_formula("(<>(1/2) /\\ ~[](0.3)) (+) 1/4");
  CHECK(formula_from_json(to_json(f, nullptr)) == f);
  // Shared subformulas are written once.
  const Formula shared = parse_formula("<>(1/3)");
  const Formula twice = Formula::conj(shared, Formula::disj(shared, shared));
  const json j = to_json(twice, nullptr);
  CHECK(j.contains("defs"));
  CHECK(formula_from_json(j) == twice);
  CHECK(format_error_path([] { formula_from_json(json{{"op", "and"}, {"args", json::array()}}); }).starts_with("$"));
}

TEST_CASE("digests are stable", "[json]") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
  CHECK(digest("abc") != digest("abd"));
}
