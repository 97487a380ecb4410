// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are exact
// rational comparisons; the only tolerances are the ones pinned below.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "formula_gen.hpp"
#include "laxkit/laxkit.hpp"
#include "oracles.hpp"

using namespace laxkit;

namespace {

// Pinned limits.
constexpr double kExampleSeconds = 1.0;       // criterion 1
constexpr std::size_t kMaxFixpointSteps = 3;  // criterion 2
constexpr std::size_t kAxiomTrials = 500;     // criterion 3
constexpr std::size_t kAxiomCarrier = 5;
constexpr double kAxiomSeconds = 60.0;
constexpr int kDualityInstances = 200;  // criterion 4
constexpr std::size_t kDualitySupport = 3;
constexpr int kHausdorffInstances = 200;  // criterion 5
constexpr std::size_t kHausdorffSupport = 4;
constexpr int kGridInstances = 100;
const Scalar kGridStep(1, 16);
const Scalar kGridTolerance(1, 16);
constexpr int kSeparationRelations = 100;  // criterion 6
constexpr std::size_t kSeparationCarrier = 4;
constexpr int kWitnessPairs = 1000;
constexpr int kLogicSystems = 20;  // criterion 7
constexpr std::size_t kLogicStates = 6;
constexpr std::size_t kLogicRank = 5;
constexpr std::size_t kHorizon = 10;
constexpr std::size_t kLongRun = 60;
constexpr int kFormulas = 1000;  // criterion 8
constexpr std::size_t kFormulaDepth = 4;

constexpr std::uint64_t kSeed = 20240611;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 5) notes.push_back(what);
    }
  }
};

json load(const std::string& name) {
  std::ifstream in(std::string(LAXKIT_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return json::parse(in);
}

Coalgebra load_system(const std::string& name) {
  LoadedSystem s = system_from_json(load(name));
  if (!s.diagnostics.ok()) throw std::runtime_error(name + " is not well formed");
  return s.system;
}

struct Labelled {
  Coalgebra a = load_system("small-bisim-a.json");
  Coalgebra b = load_system("small-bisim-b.json");
  LiftingSpec lifting = lifting_from_json(load("small-bisim-lifting.json"));
  Extension ext{a.functor(), lifting};
  Certificate cert = certificate_from_json(load("small-bisim-cert.json"), a.states(), b.states());

  std::size_t ia(const char* id) const { return *a.states().index_of(id); }
  std::size_t ib(const char* id) const { return *b.states().index_of(id); }
};

Scalar q(const char* s) { return Scalar::parse(s); }

// 1. Worked example: certificate check reproduces the three lifted values.
Check worked_example() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const Labelled ex;
  const CertificateReport rep = check_certificate(ex.ext, ex.a, ex.b, ex.cert);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(rep.ok, "verdict is not ok");
  const std::tuple<const char*, const char*, const char*> expected[] = {
      {"a1", "b1", "1/5"}, {"a2", "b3", "1/10"}, {"a3", "b2", "1/20"}};
  for (const auto& [x, y, v] : expected) {
    bool found = false;
    for (const auto& p : rep.pairs) {
      if (p.converse || p.a != ex.ia(x) || p.b != ex.ib(y)) continue;
      found = true;
      c.require(p.lifted == q(v), std::string("LR at ") + x + "," + y + " = " + p.lifted.str() + ", expected " + v);
      c.require(p.slack == 0, std::string("pair ") + x + "," + y + " is not tight");
    }
    c.require(found, std::string("pair ") + x + "," + y + " not reported");
  }
  c.require(secs < kExampleSeconds, "took " + std::to_string(secs) + " s");
  return c;
}

// 2. Fixpoint engine on the same systems.
Check fixpoint_engine() {
  Check c;
  const Labelled ex;
  const DistanceResult r = behavioural_distance(ex.ext, ex.a, ex.b);
  c.require(r.exact, "no exact fixpoint");
  c.require(r.iterations <= kMaxFixpointSteps, "took " + std::to_string(r.iterations) + " iterations");
  c.require(r.matrix(ex.ia("a1"), ex.ib("b1")) == q("1/5"), "d(a1,b1) = " + r.matrix(ex.ia("a1"), ex.ib("b1")).str());
  const CertificateGap gap = least_certificate_gap(ex.ext, ex.a, ex.b, ex.cert);
  for (const auto& [x, y] : {std::pair{"a1", "b1"}, std::pair{"a2", "b3"}, std::pair{"a3", "b2"}}) {
    const Scalar g = gap.gap(ex.ia(x), ex.ib(y));
    c.require(g.is_zero(), std::string("gap at ") + x + "," + y + " = " + g.str());
  }
  return c;
}

// 3. Axiom suites.
Check axiom_suites() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> lax{"L1-monotone",  "L2-composition", "L3-graph",           "L3-graph-converse",
                                     "L4-diagonal",  "naturality",     "hemimetric-reflexive", "hemimetric-triangle"};
  AxiomConfig cfg;
  cfg.trials = kAxiomTrials;
  cfg.max_carrier = kAxiomCarrier;
  cfg.seed = kSeed;

  const FunctorSpec pfin = FunctorSpec::pfin(FunctorSpec::id());
  const FunctorSpec dfin = FunctorSpec::dfin(FunctorSpec::id());
  const json weighted = load("weighted-ts-lifting.json");
  struct Suite {
    std::string name;
    Extension ext;
    bool converse;
  };
  const std::vector<Suite> suites{
      {"hausdorff-sym", Extension(pfin, lifting_from_json(load("hausdorff-sym.json"))), true},
      {"kantorovich", Extension(dfin, lifting_from_json(load("kantorovich.json"))), false},
      {"wasserstein", Extension(dfin, lifting_from_json(load("wasserstein.json"))), false},
      {"weighted-ts", Extension(functor_from_json(weighted["functor"]), lifting_from_json(weighted)), false},
  };
  for (const auto& s : suites) {
    const AxiomReport rep = check_axioms(s.ext, cfg);
    for (const auto& name : lax) {
      const AxiomStats& st = rep.at(name);
      c.require(st.ok(), s.name + " fails " + name + ": " + (st.counterexample ? st.counterexample->detail : ""));
      c.require(st.passed >= kAxiomTrials / 2, s.name + " " + name + " had only " + std::to_string(st.passed) + " valid trials");
    }
    if (s.converse) c.require(rep.at("L0-converse").ok(), s.name + " fails L0");
  }
  const Extension left(pfin, lifting_from_json(load("hausdorff-left.json")));
  AxiomConfig l0 = cfg;
  l0.only = {"L0-converse"};
  const AxiomReport rep = check_axioms(left, l0);
  c.require(!rep.at("L0-converse").ok() && rep.at("L0-converse").counterexample.has_value(),
            "one-sided Hausdorff produced no L0 counterexample");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(secs <= kAxiomSeconds, "took " + std::to_string(secs) + " s");
  return c;
}

// 4. Kantorovich = Wasserstein, against vertex enumeration of the coupling polytope.
Check duality() {
  Check c;
  Rng rng(trial_seed(kSeed, 4));
  const FunctorSpec dfin = FunctorSpec::dfin(FunctorSpec::id());
  const Extension k(dfin, LiftingSpec::kantorovich()), w(dfin, LiftingSpec::wasserstein());
  for (int i = 0; i < kDualityInstances; ++i) {
    const Carrier a = random_carrier(rng, 1, 4, "a"), b = random_carrier(rng, 1, 4, "b");
    const FuzzyRel r = random_relation(rng, a, b);
    const Element mu = random_element(rng, dfin, a.size(), {3, kDualitySupport});
    const Element nu = random_element(rng, dfin, b.size(), {3, kDualitySupport});
    const Scalar kv = k.lift(r, mu, nu), wv = w.lift(r, mu, nu);
    const oracle::Q ref = oracle::transport_elements(oracle::to_matrix(r), mu, nu);
    c.require(kv == wv, "K = " + kv.str() + " but W = " + wv.str() + " on instance " + std::to_string(i));
    c.require(wv.value() == ref, "W = " + wv.str() + " but enumeration gives " + ref.get_str());
  }
  return c;
}

// 5. Hausdorff against set couplings; grid Kantorovich with <> against the left variant.
Check hausdorff() {
  Check c;
  Rng rng(trial_seed(kSeed, 5));
  const FunctorSpec pfin = FunctorSpec::pfin(FunctorSpec::id());
  const Extension h(pfin, LiftingSpec::hausdorff());
  for (int i = 0; i < kHausdorffInstances; ++i) {
    const Carrier a = random_carrier(rng, 1, 5, "a"), b = random_carrier(rng, 1, 5, "b");
    const FuzzyRel r = random_relation(rng, a, b);
    const Element u = random_element(rng, pfin, a.size(), {kHausdorffSupport, 3});
    const Element v = random_element(rng, pfin, b.size(), {kHausdorffSupport, 3});
    const oracle::Q ref = oracle::hausdorff_couplings(oracle::to_matrix(r), oracle::atoms(u), oracle::atoms(v), oracle::Side::Both);
    const Scalar hv = h.lift(r, u, v);
    c.require(hv.value() == ref, "H = " + hv.str() + " but couplings give " + ref.get_str());
  }
  const LiftingSpec grid = LiftingSpec::kantorovich_generic({"<>"}, kGridStep);
  const Extension g(pfin, grid);
  const Extension left(pfin, LiftingSpec::hausdorff(LiftingSpec::id(), HausdorffVariant::Left));
  c.require(kantorovich_grid_error_bound(pfin, grid) <= kGridTolerance, "grid error bound exceeds the tolerance");
  for (int i = 0; i < kGridInstances; ++i) {
    const Carrier a = random_carrier(rng, 1, 3, "a"), b = random_carrier(rng, 1, 3, "b");
    const FuzzyRel r = random_relation(rng, a, b);
    const Element u = random_element(rng, pfin, a.size()), v = random_element(rng, pfin, b.size());
    const Scalar exact = left.lift(r, u, v), approx = g.lift(r, u, v);
    c.require(abs_diff(exact, approx) <= kGridTolerance, "grid " + approx.str() + " vs " + exact.str());
  }
  return c;
}

// 6. Moss modalities recover the lifting: the separating witness is exact and
// no nonexpansive witness pair exceeds it.
Check main_theorem() {
  Check c;
  Rng rng(trial_seed(kSeed, 6));
  const Labelled ex;
  const FunctorSpec pfin = FunctorSpec::pfin(FunctorSpec::id());
  const std::vector<Extension> exts{Extension(pfin, LiftingSpec::hausdorff()), ex.ext};
  for (const auto& ext : exts) {
    const FunctorSpec& f = ext.functor();
    for (int i = 0; i < kSeparationRelations; ++i) {
      const Carrier a = random_carrier(rng, 1, kSeparationCarrier, "a"), b = random_carrier(rng, 1, kSeparationCarrier, "b");
      const FuzzyRel r = random_relation(rng, a, b);
      const Element t1 = random_element(rng, f, a.size()), t2 = random_element(rng, f, b.size());
      const Scalar target = ext.lift(r, t1, t2);
      // f_i is the column of R at the i-th base point of t2, g_i its companion.
      const Presentation p = presentation_of(f, t2);
      std::vector<Predicate> fs, gs;
      for (std::size_t col : p.base) {
        Predicate column(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) column[x] = r(x, col);
        gs.push_back(companion(r, column));
        fs.push_back(std::move(column));
      }
      const Scalar witness = ominus(moss_eval(ext, p.shape, fs, a, t1), moss_eval(ext, p.shape, gs, b, t2));
      c.require(witness == target, f.describe() + ": witness " + witness.str() + " but LR = " + target.str());
    }
    for (int i = 0; i < kWitnessPairs; ++i) {
      const Carrier a = random_carrier(rng, 1, kSeparationCarrier, "a"), b = random_carrier(rng, 1, kSeparationCarrier, "b");
      const FuzzyRel r = random_relation(rng, a, b);
      const Element t1 = random_element(rng, f, a.size()), t2 = random_element(rng, f, b.size());
      const std::size_t n = rng.between(1, 3);
      const Element shape = random_element(rng, f, n);
      std::vector<Predicate> fs, gs;
      for (std::size_t k = 0; k < n; ++k) {
        fs.push_back(random_predicate(rng, a.size()));
        Predicate g = companion(r, fs.back());
        if (rng.chance(1, 2))
          for (auto& v : g) v = std::max(v, rng.scalar());  // any pointwise larger g is still nonexpansive
        gs.push_back(std::move(g));
      }
      const Scalar value = ominus(moss_eval(ext, shape, fs, a, t1), moss_eval(ext, shape, gs, b, t2));
      const Scalar bound = ext.lift(r, t1, t2);
      c.require(value <= bound, f.describe() + ": witness pair reaches " + value.str() + " above LR = " + bound.str());
    }
  }
  return c;
}

// 7. Logical distance through synthesised formulas equals the fixpoint chain.
Check hennessy_milner() {
  Check c;
  Rng rng(trial_seed(kSeed, 7));
  const Labelled ex;
  const FunctorSpec& f = ex.a.functor();
  for (int i = 0; i < kLogicSystems; ++i) {
    const Coalgebra a = random_coalgebra(rng, f, 1, kLogicStates, "a");
    const Coalgebra b = random_coalgebra(rng, f, 1, kLogicStates, "b");
    const auto chain = fixpoint_chain(ex.ext, a, b, kHorizon);
    for (std::size_t n = 0; n <= kLogicRank; ++n) {
      const LogicalDistance ld = logical_distance(ex.ext, a, b, n);
      c.require(ld.matrix == chain[n], "rank " + std::to_string(n) + " differs from d_n on system " + std::to_string(i));
      // Re-evaluate every witness from scratch.
      Evaluator eval(ld.joint.system, ModalitySet{}, &ex.ext);
      for (std::size_t y = 0; y < b.size(); ++y) {
        const Formula& phi = ld.witnesses[y];
        c.require(phi.rank() <= n, "witness has rank " + std::to_string(phi.rank()));
        const Predicate& v = eval(phi);
        c.require(v[ld.joint.right[y]].is_zero(), "witness is not zero at its target");
        for (std::size_t x = 0; x < a.size(); ++x)
          c.require(ominus(v[ld.joint.left[x]], v[ld.joint.right[y]]) == ld.matrix(x, y), "witness gap differs from entry");
      }
    }
    // sup over ranks up to the horizon is d_horizon; it is within the reported bound of the limit.
    Scalar sup_gap;
    FuzzyRel sup = logical_distance(ex.ext, a, b, 0).matrix;
    for (std::size_t n = 1; n <= kHorizon; ++n) {
      const FuzzyRel m = logical_distance(ex.ext, a, b, n).matrix;
      sup = FuzzyRel::tabulate(a.states(), b.states(), [&](std::size_t x, std::size_t y) { return std::max(sup(x, y), m(x, y)); });
    }
    DistanceOptions opt;
    opt.max_iter = kHorizon;
    const DistanceResult at_horizon = behavioural_distance(ex.ext, a, b, opt);
    opt.max_iter = kLongRun;
    const DistanceResult limit = behavioural_distance(ex.ext, a, b, opt);
    c.require(at_horizon.error_bound.has_value(), "no error bound reported");
    const Scalar bound = at_horizon.error_bound.value_or(Scalar::zero());
    c.require(sup == at_horizon.matrix, "sup over ranks differs from d_" + std::to_string(kHorizon));
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        const Scalar gap = ominus(limit.matrix(x, y), sup(x, y));
        c.require(gap <= bound, "limit exceeds rank-" + std::to_string(kHorizon) + " sup by " + gap.str() + " > " + bound.str());
        if (limit.exact) c.require(limit.matrix(x, y) >= sup(x, y), "limit below the sup");
      }
  }
  return c;
}

// 8. Random formulas are nonexpansive, and negation is exact on {<>, []}.
Check logic_properties() {
  Check c;
  Rng rng(trial_seed(kSeed, 8));
  const Labelled ex;
  const FunctorSpec& f = ex.a.functor();
  const ModalitySet mods = standard_modalities(f, ex.lifting);
  c.require(mods.dual_closed(), "standard modalities are not dual-closed");
  const int per_system = 50;
  for (int s = 0; s < kFormulas / per_system; ++s) {
    const Coalgebra sys = random_coalgebra(rng, f, 2, kLogicStates, "s");
    DistanceOptions opt;
    opt.max_iter = kLongRun;
    const auto chain = fixpoint_chain(ex.ext, sys, sys, kFormulaDepth);
    const DistanceResult d = behavioural_distance(ex.ext, sys, sys, opt);
    Evaluator eval(sys, mods);
    for (int k = 0; k < per_system; ++k) {
      const Formula phi = testgen::random_formula(rng, mods, kFormulaDepth);
      const Predicate& v = eval(phi);
      const FuzzyRel& dn = chain.at(std::min(phi.rank(), kFormulaDepth));
      for (std::size_t x = 0; x < sys.size(); ++x)
        for (std::size_t y = 0; y < sys.size(); ++y) {
          const Scalar gap = ominus(v[x], v[y]);
          c.require(gap <= dn(x, y) && gap <= d.matrix(x, y), "formula gap " + gap.str() + " exceeds the distance");
        }
    }
  }
  const FunctorSpec pfin = FunctorSpec::pfin(FunctorSpec::id());
  const ModalitySet box_diamond({modal::diamond(), modal::box()});
  c.require(box_diamond.dual_closed(), "{<>, []} is not dual-closed");
  for (int s = 0; s < kFormulas / per_system; ++s) {
    const Coalgebra sys = random_coalgebra(rng, pfin, 1, kLogicStates, "s");
    Evaluator eval(sys, box_diamond);
    for (int k = 0; k < per_system; ++k) {
      const Formula phi = testgen::random_formula(rng, box_diamond, kFormulaDepth);
      const Predicate v = eval(phi);
      const Predicate& n = eval(Formula::neg(phi));
      for (std::size_t x = 0; x < sys.size(); ++x)
        c.require(n[x] == v[x].complement(), "negation gives " + n[x].str() + " for " + v[x].str());
    }
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"worked-example exactness", worked_example},
      {"fixpoint engine", fixpoint_engine},
      {"axiom suites", axiom_suites},
      {"Kantorovich-Wasserstein duality", duality},
      {"Hausdorff couplings and grid Kantorovich", hausdorff},
      {"Moss modalities recover the lifting", main_theorem},
      {"logical distance equals behavioural distance", hennessy_milner},
      {"logic properties", logic_properties},
  };
  std::printf("acceptance seed %llu\n", static_cast<unsigned long long>(kSeed));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.2f s)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs);
    for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
    all = all && c.ok;
  }
  return all ? 0 : 1;
}
