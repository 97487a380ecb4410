// Moss modalities derived from a lifting, distinguishing-formula synthesis and
// logical distance.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "laxkit/coalgebra.hpp"
#include "laxkit/distance.hpp"
#include "laxkit/formula.hpp"
#include "laxkit/functor.hpp"
#include "laxkit/lifting.hpp"

namespace laxkit {

/// t written as shape[i |-> base[i]] with shape over the positions 0..n-1.
struct Presentation {
  Element shape;
  std::vector<std::size_t> base;
};

inline Presentation presentation_of(const FunctorSpec& f, const Element& t) {
  Presentation p;
  p.base = base(t);
  const std::size_t top = p.base.empty() ? 0 : *std::max_element(p.base.begin(), p.base.end()) + 1;
  std::vector<std::size_t> position(top, 0);
  for (std::size_t i = 0; i < p.base.size(); ++i) position[p.base[i]] = i;
  p.shape = apply_map(f, position, t);
  return p;
}

/// Inverse of presentation_of.
inline Element instantiate(const FunctorSpec& f, const Presentation& p) { return apply_map(f, p.base, p.shape); }

/// The Moss modality of `ext` at `shape` (an element over 0..n-1), evaluated
/// at t in T X for predicates args[0..n-1] on X. It is L applied to the
/// elementhood matrix E(x, i) = args[i](x), compared against shape itself.
inline Scalar moss_eval(const Extension& ext, const Element& shape, std::span<const Predicate> args,
                        const Carrier& x, const Element& t) {
  for (std::size_t i : base(shape))
    if (i >= args.size()) throw StructureError("moss modality: shape refers to a missing argument");
  const std::size_t n = args.size();
  std::vector<Scalar> e(x.size() * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (args[i].size() != x.size()) throw StructureError("moss modality: argument does not match the carrier");
    for (std::size_t a = 0; a < x.size(); ++a) e[a * n + i] = args[i][a];
  }
  return ext.lift(FuzzyRel(x, Carrier::indices(n), std::move(e)), t, shape);
}

/// Builds phi^k_b: phi^0_b = 0 and phi^{k+1}_b = Delta(alpha(b) with every
/// successor b' replaced by phi^k_{b'}). On any state x of the system,
/// phi^n_b evaluates to d_n(x, b). Formulas are shared across levels.
class Synthesizer {
 public:
  explicit Synthesizer(const Coalgebra& system) : system_(system) {
    for (std::size_t b = 0; b < system.size(); ++b) presentations_.push_back(presentation_of(system.functor(), system.alpha(b)));
    levels_.push_back(std::vector<Formula>(system.size(), Formula::constant(Scalar::zero())));
  }

  const Formula& formula(std::size_t b, std::size_t k) {
    if (b >= system_.size()) throw StructureError("synthesis target out of range");
    while (levels_.size() <= k) {
      const auto& prev = levels_.back();
      std::vector<Formula> next;
      next.reserve(system_.size());
      for (std::size_t s = 0; s < system_.size(); ++s) {
        const Presentation& p = presentations_[s];
        std::vector<Formula> args;
        for (std::size_t succ : p.base) args.push_back(prev[succ]);
        next.push_back(Formula::moss(p.shape, std::move(args)));
      }
      levels_.push_back(std::move(next));
    }
    return levels_[k][b];
  }

 private:
  const Coalgebra& system_;
  std::vector<Presentation> presentations_;
  std::vector<std::vector<Formula>> levels_;
};

struct LogicalDistance {
  FuzzyRel matrix;
  Union joint;
  std::vector<Formula> witnesses;  // witnesses[b] is phi^n for state b of the second system
};

/// Rank-n logical distance of the Moss logic of `ext`, computed constructively:
/// entry (a, b) is [[phi^n_b]](a) (-) [[phi^n_b]](b) on the disjoint union.
inline LogicalDistance logical_distance(const Extension& ext, const Coalgebra& a, const Coalgebra& b, std::size_t n) {
  require_compatible(ext, a, b);
  LogicalDistance out;
  out.joint = disjoint_union(a, b);
  const Coalgebra& u = out.joint.system;
  Synthesizer synth(u);
  Evaluator eval(u, ModalitySet{}, &ext);
  std::vector<Scalar> values(a.size() * b.size());
  for (std::size_t y = 0; y < b.size(); ++y) {
    const std::size_t target = out.joint.right[y];
    const Formula& phi = synth.formula(target, n);
    out.witnesses.push_back(phi);
    const Predicate& v = eval(phi);
    for (std::size_t x = 0; x < a.size(); ++x) values[x * b.size() + y] = ominus(v[out.joint.left[x]], v[target]);
  }
  out.matrix = FuzzyRel(a.states(), b.states(), std::move(values));
  return out;
}

}  // namespace laxkit
