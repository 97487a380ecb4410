// laxkit command-line front end.
//
// Exit codes: 0 success, 1 a verdict failed (certificate rejected, axiom
// counterexample found), 2 usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "laxkit/laxkit.hpp"

namespace {

using namespace laxkit;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::map<std::string, std::string> digests;

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    digests[path] = digest(text);
    return text;
  }

  json read_json(const std::string& path) {
    const std::string text = read(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw FormatError(path, std::string("malformed JSON: ") + e.what());
    }
  }
};

struct Options {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::size_t jobs = 1;
  std::vector<std::string> systems;
  std::string lifting;
  std::string functor;
  std::string cert;
  std::string tol;
  std::size_t max_iter = 100;
  bool trace = false;
  std::size_t trials = 500;
  std::size_t max_carrier = 5;
  std::vector<std::string> only_axioms;
  std::string formula;
  std::string state;
  std::string target;
  std::size_t rank = 1;
  bool witnesses = false;
};

std::string prefixed(const std::string& file, const FormatError& e) { return file + ": " + e.what(); }

Coalgebra load_system(Inputs& in, const std::string& path, std::ostream& err) {
  const json j = in.read_json(path);
  LoadedSystem loaded;
  try {
    loaded = system_from_json(j);
  } catch (const FormatError& e) {
    throw FormatError(e.path(), prefixed(path, e));
  }
  for (const auto& d : loaded.diagnostics.items) {
    err << path << ": " << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.path << ": "
        << d.message << "\n";
  }
  if (!loaded.diagnostics.ok()) throw UsageError(path + ": system is not well formed");
  return loaded.system;
}

/// A lifting file may carry its functor under "functor"; otherwise it is
/// inferred from the lifting where possible, or taken from --functor.
std::optional<FunctorSpec> infer_functor(const LiftingSpec& l) {
  switch (l.kind()) {
    case LiftingKind::Id: return FunctorSpec::id();
    case LiftingKind::Hausdorff:
      if (auto s = infer_functor(l.sub())) return FunctorSpec::pfin(*s);
      return std::nullopt;
    case LiftingKind::Kantorovich:
    case LiftingKind::Wasserstein:
      if (auto s = infer_functor(l.sub())) return FunctorSpec::dfin(*s);
      return std::nullopt;
    case LiftingKind::Maybe:
      if (auto s = infer_functor(l.sub())) return FunctorSpec::maybe(*s);
      return std::nullopt;
    case LiftingKind::PairSum:
    case LiftingKind::PairMax: {
      auto a = infer_functor(l.left());
      auto b = infer_functor(l.right());
      if (a && b) return FunctorSpec::pair(*a, *b);
      return std::nullopt;
    }
    case LiftingKind::Discount: return infer_functor(l.sub());
    default: return std::nullopt;
  }
}

struct LoadedLifting {
  std::optional<FunctorSpec> functor;
  std::optional<LiftingSpec> lifting;
};

LoadedLifting load_lifting(Inputs& in, const Options& o) {
  LoadedLifting out;
  if (!o.functor.empty()) {
    const json j = in.read_json(o.functor);
    try {
      out.functor = functor_from_json(j);
    } catch (const FormatError& e) {
      throw FormatError(e.path(), prefixed(o.functor, e));
    }
  }
  if (!o.lifting.empty()) {
    const json j = in.read_json(o.lifting);
    try {
      out.lifting = lifting_from_json(j);
      if (!out.functor) {
        if (const json* f = json_detail::optional_field(j, "functor")) out.functor = functor_from_json(*f, "$.functor");
      }
    } catch (const FormatError& e) {
      throw FormatError(e.path(), prefixed(o.lifting, e));
    }
  }
  return out;
}

Extension make_extension(const FunctorSpec& f, const std::optional<LiftingSpec>& l) {
  try {
    return l ? Extension(f, *l) : Extension(f);
  } catch (const StructureError& e) {
    throw UsageError(std::string("lifting does not fit the functor: ") + e.what());
  }
}

json header(const std::string& command, const Options& o, const Inputs& in) {
  json inputs = json::object();
  for (const auto& [path, d] : in.digests) inputs[path] = d;
  return {{"tool", "laxkit"}, {"version", version}, {"command", command}, {"seed", o.seed}, {"inputs", inputs}};
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string table(const FuzzyRel& r) {
  std::size_t w = 6;
  for (const auto& id : r.target().ids()) w = std::max(w, id.size() + 2);
  for (const auto& v : r.values()) w = std::max(w, v.str().size() + 2);
  std::size_t lw = 2;
  for (const auto& id : r.source().ids()) lw = std::max(lw, id.size() + 2);
  std::string out = pad("", lw);
  for (const auto& id : r.target().ids()) out += pad(id, w);
  out += "\n";
  for (std::size_t a = 0; a < r.rows(); ++a) {
    out += pad(r.source().id(a), lw);
    for (std::size_t b = 0; b < r.cols(); ++b) out += pad(r(a, b).str(), w);
    out += "\n";
  }
  return out;
}

struct Emit {
  const Options& o;
  std::ostream& out;

  void operator()(const json& report, const std::string& text) const {
    std::ostringstream buf;
    if (o.format == "table") {
      buf << text;
    } else {
      buf << report.dump(2) << "\n";
    }
    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + o.out + "'");
      f << buf.str();
    }
  }
};

std::pair<Coalgebra, Coalgebra> two_systems(Inputs& in, const Options& o, std::ostream& err) {
  if (o.systems.size() != 2) throw UsageError("expected --system twice");
  Coalgebra a = load_system(in, o.systems[0], err);
  Coalgebra b = load_system(in, o.systems[1], err);
  if (!(a.functor() == b.functor())) throw UsageError("the two systems have different functors");
  return {std::move(a), std::move(b)};
}

int cmd_dist(const Options& o, std::ostream& out, std::ostream& err) {
  Inputs in;
  auto [a, b] = two_systems(in, o, err);
  auto lift = load_lifting(in, o);
  const Extension ext = make_extension(a.functor(), lift.lifting);
  DistanceOptions opt;
  opt.max_iter = o.max_iter;
  opt.trace = o.trace;
  opt.jobs = o.jobs;
  if (!o.tol.empty()) {
    try {
      opt.tol = Scalar::parse(o.tol);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--tol: ") + e.what());
    }
  }
  const DistanceResult r = behavioural_distance(ext, a, b, opt);
  json report = header("dist", o, in);
  report["result"] = to_json(r, o.trace);
  std::ostringstream text;
  text << table(r.matrix) << "iterations " << r.iterations << ", residual " << r.residual.str()
       << (r.exact ? ", exact fixpoint" : r.converged ? ", converged within tolerance" : ", not converged");
  if (r.error_bound) text << ", error bound " << r.error_bound->str();
  text << "\n";
  Emit{o, out}(report, text.str());
  return 0;
}

int cmd_check_cert(const Options& o, std::ostream& out, std::ostream& err) {
  Inputs in;
  auto [a, b] = two_systems(in, o, err);
  auto lift = load_lifting(in, o);
  const Extension ext = make_extension(a.functor(), lift.lifting);
  if (o.cert.empty()) throw UsageError("--cert is required");
  const json cj = in.read_json(o.cert);
  Certificate cert;
  try {
    cert = certificate_from_json(cj, a.states(), b.states());
  } catch (const FormatError& e) {
    throw FormatError(e.path(), prefixed(o.cert, e));
  }
  const CertificateReport rep = check_certificate(ext, a, b, cert);
  json pairs = json::array();
  std::ostringstream text;
  for (const auto& p : rep.pairs) {
    const std::string& x = a.states().id(p.a);
    const std::string& y = b.states().id(p.b);
    pairs.push_back({{"a", x},
                     {"b", y},
                     {"direction", p.converse ? "converse" : "forward"},
                     {"bound", p.bound.str()},
                     {"lifted", p.lifted.str()},
                     {"slack", to_string(p.slack)},
                     {"tight", p.slack == 0}});
    text << pad(x + " " + y, 16) << pad(p.converse ? "converse" : "forward", 10) << "R=" << pad(p.bound.str(), 8)
         << "LR=" << pad(p.lifted.str(), 8) << "slack=" << to_string(p.slack) << (p.slack < 0 ? "  VIOLATED" : "")
         << "\n";
  }
  text << (rep.ok ? "verdict: ok\n" : "verdict: violated\n");
  json report = header("check-cert", o, in);
  report["result"] = {{"kind", cert.kind == CertificateKind::Bisimulation ? "bisimulation" : "simulation"},
                      {"verdict", rep.ok ? "ok" : "violated"},
                      {"pairs", pairs}};
  Emit{o, out}(report, text.str());
  return rep.ok ? 0 : 1;
}

int cmd_axioms(const Options& o, std::ostream& out, std::ostream&) {
  Inputs in;
  if (o.lifting.empty()) throw UsageError("--lifting is required");
  auto lift = load_lifting(in, o);
  std::optional<FunctorSpec> f = lift.functor;
  if (!f) f = infer_functor(*lift.lifting);
  if (!f) throw UsageError("cannot infer the functor of this lifting; pass --functor");
  const Extension ext = make_extension(*f, lift.lifting);
  AxiomConfig cfg;
  cfg.trials = o.trials;
  cfg.max_carrier = o.max_carrier;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  cfg.only = o.only_axioms;
  AxiomReport rep;
  try {
    rep = check_axioms(ext, cfg);
  } catch (const StructureError& e) {
    throw UsageError(e.what());
  }
  std::ostringstream text;
  for (const auto& a : rep.axioms) {
    text << pad(a.name, 22) << pad(a.ok() ? "pass" : "FAIL", 6) << a.passed << " passed, " << a.failed << " failed, "
         << a.skipped << " skipped\n";
    if (a.counterexample) text << "  counterexample (trial " << a.counterexample->trial << "): " << a.counterexample->detail << "\n";
  }
  json report = header("axioms", o, in);
  report["result"] = to_json(rep, *f);
  report["result"]["trials"] = cfg.trials;
  report["result"]["max_carrier"] = cfg.max_carrier;
  Emit{o, out}(report, text.str());
  return rep.ok() ? 0 : 1;
}

int cmd_logic_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Inputs in;
  if (o.systems.size() != 1) throw UsageError("expected exactly one --system");
  if (o.formula.empty()) throw UsageError("--formula is required");
  Coalgebra s = load_system(in, o.systems[0], err);
  auto lift = load_lifting(in, o);
  const Extension ext = make_extension(s.functor(), lift.lifting);
  const std::string text_in = in.read(o.formula);
  Formula phi;
  // The text grammar never starts with '{', so content decides when the extension does not.
  const auto first = text_in.find_first_not_of(" \t\r\n");
  const bool is_json = o.formula.ends_with(".json") || (first != std::string::npos && text_in[first] == '{');
  try {
    if (is_json) {
      json j;
      try {
        j = json::parse(text_in);
      } catch (const json::parse_error& e) {
        throw FormatError("$", std::string("malformed JSON: ") + e.what());
      }
      phi = formula_from_json(j, &s.functor());
    } else {
      phi = parse_formula(text_in);
    }
  } catch (const FormatError& e) {
    throw FormatError(e.path(), prefixed(o.formula, e));
  } catch (const ParseError& e) {
    throw UsageError(o.formula + ": " + e.what());
  }
  Evaluator eval(s, standard_modalities(ext.functor(), ext.lifting()), &ext);
  Predicate values;
  try {
    values = eval(phi);
  } catch (const StructureError& e) {
    throw UsageError(e.what());
  }
  json vals = json::object();
  std::ostringstream text;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (!o.state.empty() && s.states().id(x) != o.state) continue;
    vals[s.states().id(x)] = values[x].str();
    text << pad(s.states().id(x), 12) << values[x].str() << "\n";
  }
  if (!o.state.empty() && vals.empty()) throw UsageError("unknown state '" + o.state + "'");
  json report = header("logic eval", o, in);
  report["result"] = {{"rank", phi.rank()}, {"values", vals}};
  Emit{o, out}(report, text.str());
  return 0;
}

int cmd_logic_distance(const Options& o, std::ostream& out, std::ostream& err) {
  Inputs in;
  auto [a, b] = two_systems(in, o, err);
  auto lift = load_lifting(in, o);
  const Extension ext = make_extension(a.functor(), lift.lifting);
  const LogicalDistance ld = logical_distance(ext, a, b, o.rank);
  json report = header("logic distance", o, in);
  report["result"] = {{"rank", o.rank}, {"matrix", to_json(ld.matrix)}};
  if (o.witnesses) {
    json w = json::object();
    for (std::size_t y = 0; y < b.size(); ++y) w[b.states().id(y)] = to_json(ld.witnesses[y], &a.functor());
    report["result"]["witnesses"] = std::move(w);
  }
  Emit{o, out}(report, table(ld.matrix));
  return 0;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err) {
  Inputs in;
  if (o.systems.empty() || o.systems.size() > 2) throw UsageError("expected one or two --system");
  if (o.target.empty()) throw UsageError("--target is required");
  std::vector<Coalgebra> systems;
  for (const auto& p : o.systems) systems.push_back(load_system(in, p, err));
  Coalgebra joint = systems[0];
  std::size_t target = 0;
  if (systems.size() == 2) {
    if (!(systems[0].functor() == systems[1].functor())) throw UsageError("the two systems have different functors");
    Union u = disjoint_union(systems[0], systems[1]);
    auto idx = systems[1].states().index_of(o.target);
    if (!idx) throw UsageError("unknown target state '" + o.target + "' in the second system");
    target = u.right[*idx];
    joint = u.system;
  } else {
    auto idx = joint.states().index_of(o.target);
    if (!idx) throw UsageError("unknown target state '" + o.target + "'");
    target = *idx;
  }
  auto lift = load_lifting(in, o);
  const Extension ext = make_extension(joint.functor(), lift.lifting);
  Synthesizer synth(joint);
  const Formula phi = synth.formula(target, o.rank);
  Evaluator eval(joint, ModalitySet{}, &ext);
  const Predicate& v = eval(phi);
  json values = json::object();
  std::ostringstream text;
  for (std::size_t x = 0; x < joint.size(); ++x) {
    values[joint.states().id(x)] = v[x].str();
    text << pad(joint.states().id(x), 12) << v[x].str() << "\n";
  }
  const json fj = to_json(phi, &joint.functor());
  json report = header("synth", o, in);
  report["result"] = {{"target", joint.states().id(target)}, {"rank", o.rank}, {"formula", fj}, {"values", values}};
  if (!o.out.empty() && o.format == "json") {
    // --out receives the bare formula so it can be fed back to `logic eval`.
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f << fj.dump(2) << "\n";
    return 0;
  }
  Emit{o, out}(report, text.str());
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out, std::ostream&) {
  Inputs in;
  json report = header("catalog", o, in);
  json result = {{"functors", {"id", "const", "pfin", "dfin", "pair", "maybe"}},
                 {"liftings",
                  {"id", "const", "hausdorff", "kantorovich", "wasserstein", "pair-sum", "pair-max", "discount", "maybe",
                   "kantorovich-generic"}},
                 {"axioms", json::array()}};
  for (const auto& a : standard_axioms()) result["axioms"].push_back(a.name);
  std::ostringstream text;
  text << "functors: id const pfin dfin pair maybe\n"
          "liftings: id const hausdorff kantorovich wasserstein pair-sum pair-max discount maybe kantorovich-generic\n";
  auto lift = load_lifting(in, o);
  std::optional<FunctorSpec> f = lift.functor;
  if (!f && lift.lifting) f = infer_functor(*lift.lifting);
  if (f) {
    auto describe = [](const ModalitySet& set) {
      json out = json::array();
      for (const auto& m : set.all())
        out.push_back({{"name", m.name}, {"arity", m.arity}, {"dual", m.dual ? json(*m.dual) : json(nullptr)}});
      return out;
    };
    const ModalitySet fmods = functor_modalities(*f);
    result["functor"] = f->describe();
    result["functor_modalities"] = describe(fmods);
    text << "functor " << f->describe() << " modalities:";
    for (const auto& m : fmods.all()) text << " " << m.name;
    text << "\n";
    if (lift.lifting) {
      const Extension ext = make_extension(*f, lift.lifting);
      const ModalitySet std_mods = standard_modalities(*f, *lift.lifting);
      result["lifting_modalities"] = describe(std_mods);
      result["contraction_factor"] = to_string(ext.contraction_factor());
      text << "lifting modalities:";
      for (const auto& m : std_mods.all()) text << " " << m.name;
      text << "\ncontraction factor " << to_string(ext.contraction_factor()) << "\n";
    }
  }
  report["result"] = result;
  Emit{o, out}(report, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioural distances via fuzzy lax extensions"};
  app.set_version_flag("--version", std::string(laxkit::version));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed (LAXKIT_SEED overrides)");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    c->add_option("--out", o.out, "write the report to this file");
    c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--lifting", o.lifting, "lifting JSON (default: the functor's standard lifting)");
    c->add_option("--functor", o.functor, "functor JSON, when the lifting does not determine it");
  };

  auto* dist = app.add_subcommand("dist", "behavioural distance by fixpoint iteration");
  common(dist);
  dist->add_option("--system", o.systems, "system JSON (twice)")->required();
  dist->add_option("--tol", o.tol, "stop once the residual is at most this rational");
  dist->add_option("--max-iter", o.max_iter, "iteration cap");
  dist->add_flag("--trace", o.trace, "include every iterate");

  auto* cert = app.add_subcommand("check-cert", "check a (bi)simulation certificate");
  common(cert);
  cert->add_option("--system", o.systems, "system JSON (twice)")->required();
  cert->add_option("--cert", o.cert, "certificate JSON")->required();

  auto* ax = app.add_subcommand("axioms", "randomised lax-extension axiom checks");
  common(ax);
  ax->add_option("--trials", o.trials, "trials per axiom");
  ax->add_option("--max-carrier", o.max_carrier, "largest random carrier")->check(CLI::PositiveNumber);
  ax->add_option("--axiom", o.only_axioms, "restrict to these axioms");

  auto* logic = app.add_subcommand("logic", "quantitative modal logic");
  logic->require_subcommand(1);
  auto* leval = logic->add_subcommand("eval", "evaluate a formula on a system");
  common(leval);
  leval->add_option("--system", o.systems, "system JSON")->required();
  leval->add_option("--formula", o.formula, "formula file (.json or text)")->required();
  leval->add_option("--state", o.state, "report only this state");
  auto* ldist = logic->add_subcommand("distance", "rank-n logical distance with witnesses");
  common(ldist);
  ldist->add_option("--system", o.systems, "system JSON (twice)")->required();
  ldist->add_option("--rank", o.rank, "modal rank")->required();
  ldist->add_flag("--witnesses", o.witnesses, "include the witnessing formulas");

  auto* synth = app.add_subcommand("synth", "synthesise a distinguishing formula");
  common(synth);
  synth->add_option("--system", o.systems, "system JSON (once or twice)")->required();
  synth->add_option("--target", o.target, "target state")->required();
  synth->add_option("--rank", o.rank, "modal rank")->required();

  auto* catalog = app.add_subcommand("catalog", "list functors, liftings, modalities and axioms");
  common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (const char* env = std::getenv("LAXKIT_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: LAXKIT_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  try {
    if (dist->parsed()) return cmd_dist(o, std::cout, std::cerr);
    if (cert->parsed()) return cmd_check_cert(o, std::cout, std::cerr);
    if (ax->parsed()) return cmd_axioms(o, std::cout, std::cerr);
    if (leval->parsed()) return cmd_logic_eval(o, std::cout, std::cerr);
    if (ldist->parsed()) return cmd_logic_distance(o, std::cout, std::cerr);
    if (synth->parsed()) return cmd_synth(o, std::cout, std::cerr);
    if (catalog->parsed()) return cmd_catalog(o, std::cout, std::cerr);
  } catch (const laxkit::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const laxkit::StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const laxkit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
