// Randomised checks of the lax-extension axioms for a concrete lifting.
//
// Every trial draws its own seed from (run seed, trial index), so reports are
// identical for any number of worker threads. Failing cases are shrunk
// greedily before being reported.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/lifting.hpp"
#include "laxkit/random.hpp"

namespace laxkit {

/// Raw data of one trial. Which entries are used depends on the axiom.
struct AxiomCase {
  std::vector<Carrier> carriers;
  std::vector<FuzzyRel> relations;
  std::vector<Element> elements;
  std::vector<std::vector<std::size_t>> maps;
  Scalar eps;
};

enum class Outcome { Holds, Fails, Invalid };

struct Verdict {
  Outcome outcome = Outcome::Holds;
  std::string detail;
};

struct Axiom {
  std::string name;
  std::function<AxiomCase(Rng&, const Extension&, std::size_t max_carrier)> generate;
  std::function<Verdict(const Extension&, const AxiomCase&)> check;
};

struct Counterexample {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  AxiomCase data;
  std::string detail;
};

struct AxiomStats {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::optional<Counterexample> counterexample;

  bool ok() const { return failed == 0; }
};

struct AxiomReport {
  std::vector<AxiomStats> axioms;

  const AxiomStats& at(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.name == name) return a;
    throw StructureError("no axiom named '" + name + "' in report");
  }
  bool ok() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomStats& a) { return a.ok(); });
  }
};

struct AxiomConfig {
  std::size_t max_carrier = 5;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::vector<std::string> only;  // empty: every axiom
};

namespace axioms_detail {

inline Element elem(Rng& rng, const Extension& ext, const Carrier& c) {
  return random_element(rng, ext.functor(), c.size());
}

inline Verdict holds() { return {}; }
inline Verdict invalid() { return {Outcome::Invalid, {}}; }
inline Verdict fails(std::string why) { return {Outcome::Fails, std::move(why)}; }

inline std::string show(const Scalar& s) { return s.str(); }

/// Greedy shrinking: snap relation entries to 0 or 1 and drop set members while
/// the case still fails. Each step reduces the number of non-crisp entries or
/// the size of an element, so the loop terminates.
inline AxiomCase shrink(const Axiom& ax, const Extension& ext, AxiomCase c, std::string& detail) {
  auto still_fails = [&](const AxiomCase& cand) {
    try {
      Verdict v = ax.check(ext, cand);
      if (v.outcome == Outcome::Fails) {
        detail = v.detail;
        return true;
      }
    } catch (const std::exception&) {
    }
    return false;
  };

  std::function<void(const Element&, std::vector<Element>&)> drops = [&](const Element& t, std::vector<Element>& out) {
    if (t.kind() == FunctorKind::PFin) {
      for (std::size_t i = 0; i < t.items().size(); ++i) {
        std::vector<Element> rest = t.items();
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(Element::set(std::move(rest)));
      }
    }
    for (std::size_t i = 0; i < t.items().size(); ++i) {
      std::vector<Element> inner;
      drops(t.items()[i], inner);
      for (auto& x : inner) {
        switch (t.kind()) {
          case FunctorKind::PFin: {
            std::vector<Element> items = t.items();
            items[i] = std::move(x);
            out.push_back(Element::set(std::move(items)));
            break;
          }
          case FunctorKind::Pair:
            out.push_back(i == 0 ? Element::pair(std::move(x), t.second()) : Element::pair(t.first(), std::move(x)));
            break;
          case FunctorKind::Maybe:
            out.push_back(Element::just(std::move(x)));
            break;
          case FunctorKind::DFin: {
            std::vector<std::pair<Element, Scalar>> entries;
            for (std::size_t k = 0; k < t.items().size(); ++k)
              entries.emplace_back(k == i ? x : t.items()[k], t.weights()[k]);
            out.push_back(Element::dist(std::move(entries)));
            break;
          }
          default:
            break;
        }
      }
    }
  };

  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < c.relations.size() && !progress; ++r) {
      const FuzzyRel& rel = c.relations[r];
      for (std::size_t a = 0; a < rel.rows() && !progress; ++a)
        for (std::size_t b = 0; b < rel.cols() && !progress; ++b)
          for (const Scalar& v : {Scalar::zero(), Scalar::one()}) {
            if (rel(a, b).is_zero() || rel(a, b).is_one()) break;
            AxiomCase cand = c;
            cand.relations[r] = rel.with(a, b, v);
            if (still_fails(cand)) {
              c = std::move(cand);
              progress = true;
              break;
            }
          }
    }
    for (std::size_t e = 0; e < c.elements.size() && !progress; ++e) {
      std::vector<Element> smaller;
      drops(c.elements[e], smaller);
      for (auto& s : smaller) {
        AxiomCase cand = c;
        cand.elements[e] = std::move(s);
        if (still_fails(cand)) {
          c = std::move(cand);
          progress = true;
          break;
        }
      }
    }
  }
  return c;
}

}  // namespace axioms_detail

/// The built-in axiom list, in report order.
inline std::vector<Axiom> standard_axioms() {
  using namespace axioms_detail;
  std::vector<Axiom> out;

  auto two_carriers = [](Rng& rng, std::size_t k) {
    return std::vector<Carrier>{random_carrier(rng, 1, k, "a"), random_carrier(rng, 1, k, "b")};
  };

  out.push_back({"L0-converse",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = two_carriers(rng, k);
                   c.relations = {random_relation(rng, c.carriers[0], c.carriers[1])};
                   c.elements = {elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[1])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   const Scalar lhs = ext.lift(converse(c.relations[0]), c.elements[1], c.elements[0]);
                   const Scalar rhs = ext.lift(c.relations[0], c.elements[0], c.elements[1]);
                   if (lhs == rhs) return holds();
                   return fails("L(R^op)(t2,t1) = " + show(lhs) + " but LR(t1,t2) = " + show(rhs));
                 }});

  out.push_back({"L1-monotone",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = two_carriers(rng, k);
                   FuzzyRel r1 = random_relation(rng, c.carriers[0], c.carriers[1]);
                   FuzzyRel r2 = FuzzyRel::tabulate(c.carriers[0], c.carriers[1], [&](std::size_t a, std::size_t b) {
                     if (!rng.chance(1, 2)) return r1(a, b);
                     return oplus(r1(a, b), rng.scalar());
                   });
                   c.relations = {std::move(r1), std::move(r2)};
                   c.elements = {elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[1])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   if (!leq(c.relations[0], c.relations[1])) return invalid();
                   const Scalar lo = ext.lift(c.relations[0], c.elements[0], c.elements[1]);
                   const Scalar hi = ext.lift(c.relations[1], c.elements[0], c.elements[1]);
                   if (lo <= hi) return holds();
                   return fails("R1 <= R2 but LR1 = " + show(lo) + " > LR2 = " + show(hi));
                 }});

  out.push_back({"L2-composition",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = {random_carrier(rng, 1, k, "a"), random_carrier(rng, 1, k, "b"),
                                 random_carrier(rng, 1, k, "c")};
                   c.relations = {random_relation(rng, c.carriers[0], c.carriers[1]),
                                  random_relation(rng, c.carriers[1], c.carriers[2])};
                   Element t1 = elem(rng, ext, c.carriers[0]);
                   Element t2;
                   if (rng.chance(1, 2)) {
                     // Route every point of t1 to its nearest partner, which tends to make the bound tight.
                     std::vector<std::size_t> g(c.carriers[0].size());
                     for (std::size_t a = 0; a < g.size(); ++a) {
                       std::size_t best = 0;
                       for (std::size_t b = 1; b < c.carriers[1].size(); ++b)
                         if (c.relations[0](a, b) < c.relations[0](a, best)) best = b;
                       g[a] = best;
                     }
                     t2 = apply_map(ext.functor(), g, t1);
                   } else {
                     t2 = elem(rng, ext, c.carriers[1]);
                   }
                   c.elements = {std::move(t1), std::move(t2), elem(rng, ext, c.carriers[2])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   const Scalar lhs = ext.lift(compose(c.relations[0], c.relations[1]), c.elements[0], c.elements[2]);
                   const Scalar a = ext.lift(c.relations[0], c.elements[0], c.elements[1]);
                   const Scalar b = ext.lift(c.relations[1], c.elements[1], c.elements[2]);
                   if (lhs <= oplus(a, b)) return holds();
                   return fails("L(R;S)(t1,t3) = " + show(lhs) + " > LR(t1,t2) (+) LS(t2,t3) = " + show(a) + " (+) " +
                                show(b));
                 }});

  auto graph_case = [=](Rng& rng, const Extension& ext, std::size_t k) {
    AxiomCase c;
    c.carriers = two_carriers(rng, k);
    c.maps = {random_map(rng, c.carriers[0].size(), c.carriers[1].size())};
    c.elements = {elem(rng, ext, c.carriers[0])};
    return c;
  };

  out.push_back({"L3-graph", graph_case, [](const Extension& ext, const AxiomCase& c) {
                   const FuzzyRel g = graph(c.carriers[0], c.carriers[1], c.maps[0]);
                   const Element& t = c.elements[0];
                   const Scalar v = ext.lift(g, t, apply_map(ext.functor(), c.maps[0], t));
                   if (v.is_zero()) return holds();
                   return fails("L(gr f)(t, Tf t) = " + show(v));
                 }});

  out.push_back({"L3-graph-converse", graph_case, [](const Extension& ext, const AxiomCase& c) {
                   const FuzzyRel g = converse(graph(c.carriers[0], c.carriers[1], c.maps[0]));
                   const Element& t = c.elements[0];
                   const Scalar v = ext.lift(g, apply_map(ext.functor(), c.maps[0], t), t);
                   if (v.is_zero()) return holds();
                   return fails("L(gr f^op)(Tf t, t) = " + show(v));
                 }});

  out.push_back({"L4-diagonal",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = {random_carrier(rng, 1, k, "a")};
                   c.eps = rng.scalar();
                   c.elements = {elem(rng, ext, c.carriers[0])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   const Scalar v = ext.lift(diagonal(c.carriers[0], c.eps), c.elements[0], c.elements[0]);
                   if (v <= c.eps) return holds();
                   return fails("L(diag_eps)(t,t) = " + show(v) + " > eps = " + show(c.eps));
                 }});

  out.push_back({"naturality",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = {random_carrier(rng, 1, k, "a"), random_carrier(rng, 1, k, "b"),
                                 random_carrier(rng, 1, k, "x"), random_carrier(rng, 1, k, "y")};
                   c.relations = {random_relation(rng, c.carriers[2], c.carriers[3])};
                   c.maps = {random_map(rng, c.carriers[0].size(), c.carriers[2].size()),
                             random_map(rng, c.carriers[1].size(), c.carriers[3].size())};
                   c.elements = {elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[1])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   const FuzzyRel pulled = reindex(c.relations[0], c.carriers[0], c.maps[0], c.carriers[1], c.maps[1]);
                   const Scalar lhs = ext.lift(pulled, c.elements[0], c.elements[1]);
                   const Scalar rhs = ext.lift(c.relations[0], apply_map(ext.functor(), c.maps[0], c.elements[0]),
                                               apply_map(ext.functor(), c.maps[1], c.elements[1]));
                   if (lhs == rhs) return holds();
                   return fails("L(R o (f x g))(t1,t2) = " + show(lhs) + " but LR(Tf t1, Tg t2) = " + show(rhs));
                 }});

  auto metric_case = [=](bool symmetric) {
    return [=](Rng& rng, const Extension& ext, std::size_t k) {
      AxiomCase c;
      c.carriers = {random_carrier(rng, 1, k, "x")};
      c.relations = {random_hemimetric(rng, c.carriers[0], symmetric)};
      c.elements = {elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[0])};
      return c;
    };
  };

  out.push_back({"hemimetric-reflexive", metric_case(false), [](const Extension& ext, const AxiomCase& c) {
                   if (!is_hemimetric(c.relations[0])) return invalid();
                   const Scalar v = ext.lift(c.relations[0], c.elements[0], c.elements[0]);
                   if (v.is_zero()) return holds();
                   return fails("Ld(t,t) = " + show(v));
                 }});

  out.push_back({"hemimetric-triangle", metric_case(false), [](const Extension& ext, const AxiomCase& c) {
                   if (!is_hemimetric(c.relations[0])) return invalid();
                   const FuzzyRel& d = c.relations[0];
                   const Scalar lhs = ext.lift(d, c.elements[0], c.elements[2]);
                   const Scalar a = ext.lift(d, c.elements[0], c.elements[1]);
                   const Scalar b = ext.lift(d, c.elements[1], c.elements[2]);
                   if (lhs <= oplus(a, b)) return holds();
                   return fails("Ld(t1,t3) = " + show(lhs) + " > " + show(a) + " (+) " + show(b));
                 }});

  out.push_back({"symmetry", metric_case(true), [](const Extension& ext, const AxiomCase& c) {
                   if (!is_pseudometric(c.relations[0])) return invalid();
                   const Scalar a = ext.lift(c.relations[0], c.elements[0], c.elements[1]);
                   const Scalar b = ext.lift(c.relations[0], c.elements[1], c.elements[0]);
                   if (a == b) return holds();
                   return fails("Ld(t1,t2) = " + show(a) + " but Ld(t2,t1) = " + show(b));
                 }});

  out.push_back({"nonexpansive",
                 [=](Rng& rng, const Extension& ext, std::size_t k) {
                   AxiomCase c;
                   c.carriers = two_carriers(rng, k);
                   FuzzyRel r1 = random_relation(rng, c.carriers[0], c.carriers[1]);
                   FuzzyRel r2 = FuzzyRel::tabulate(c.carriers[0], c.carriers[1], [&](std::size_t a, std::size_t b) {
                     return rng.chance(1, 2) ? r1(a, b) : rng.scalar();
                   });
                   c.relations = {std::move(r1), std::move(r2)};
                   c.elements = {elem(rng, ext, c.carriers[0]), elem(rng, ext, c.carriers[1])};
                   return c;
                 },
                 [](const Extension& ext, const AxiomCase& c) {
                   const Scalar a = ext.lift(c.relations[0], c.elements[0], c.elements[1]);
                   const Scalar b = ext.lift(c.relations[1], c.elements[0], c.elements[1]);
                   const Scalar bound = sup_distance(c.relations[0], c.relations[1]);
                   if (abs_diff(a, b) <= bound) return holds();
                   return fails("|LR1 - LR2| = " + show(abs_diff(a, b)) + " > sup|R1 - R2| = " + show(bound));
                 }});

  return out;
}

inline AxiomReport check_axioms(const Extension& ext, const AxiomConfig& config) {
  std::vector<Axiom> all = standard_axioms();
  std::vector<Axiom> axioms;
  std::vector<std::size_t> slot;  // position in the full list; keeps seeds stable under filtering
  for (std::size_t k = 0; k < all.size(); ++k)
    if (config.only.empty() || std::find(config.only.begin(), config.only.end(), all[k].name) != config.only.end()) {
      axioms.push_back(std::move(all[k]));
      slot.push_back(k);
    }
  for (const auto& name : config.only)
    if (std::none_of(axioms.begin(), axioms.end(), [&](const Axiom& a) { return a.name == name; }))
      throw StructureError("unknown axiom '" + name + "'");
  if (config.max_carrier == 0) throw StructureError("axiom check needs carriers of size at least 1");

  const std::size_t n_ax = axioms.size();
  const std::size_t stride_seed = all.size();
  std::vector<Verdict> verdicts(config.trials * n_ax);
  auto run = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t i = worker; i < config.trials; i += stride)
      for (std::size_t k = 0; k < n_ax; ++k) {
        Rng rng(trial_seed(config.seed, i * stride_seed + slot[k]));
        try {
          const AxiomCase c = axioms[k].generate(rng, ext, config.max_carrier);
          verdicts[i * n_ax + k] = axioms[k].check(ext, c);
        } catch (const std::exception& e) {
          verdicts[i * n_ax + k] = {Outcome::Fails, std::string("evaluation error: ") + e.what()};
        }
      }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.trials));
  if (jobs == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(run, w, jobs);
  }

  AxiomReport report;
  for (std::size_t k = 0; k < n_ax; ++k) {
    AxiomStats stats;
    stats.name = axioms[k].name;
    for (std::size_t i = 0; i < config.trials; ++i) {
      const Verdict& v = verdicts[i * n_ax + k];
      switch (v.outcome) {
        case Outcome::Holds: ++stats.passed; break;
        case Outcome::Invalid: ++stats.skipped; break;
        case Outcome::Fails:
          ++stats.failed;
          if (!stats.counterexample) {
            const std::uint64_t seed = trial_seed(config.seed, i * stride_seed + slot[k]);
            Rng rng(seed);
            std::string detail = v.detail;
            AxiomCase c = axioms_detail::shrink(axioms[k], ext, axioms[k].generate(rng, ext, config.max_carrier), detail);
            stats.counterexample = Counterexample{i, seed, std::move(c), std::move(detail)};
          }
          break;
      }
    }
    report.axioms.push_back(std::move(stats));
  }
  return report;
}

}  // namespace laxkit
