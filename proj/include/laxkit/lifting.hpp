// Fuzzy lax extensions: description grammar and evaluation.
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/functor.hpp"
#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/modality.hpp"
#include "laxkit/transport.hpp"

namespace laxkit {

enum class LiftingKind { Id, Const, Hausdorff, Kantorovich, Wasserstein, PairSum, PairMax, Discount, Maybe, KantorovichGeneric };

/// Symmetric keeps both sup-inf terms; Left keeps sup over the first set only, Right over the second.
enum class HausdorffVariant { Symmetric, Left, Right };

class LiftingSpec {
 public:
  LiftingSpec() : node_(std::make_shared<Node>()) {}

  static LiftingSpec id() { return LiftingSpec(); }
  static LiftingSpec constant() { return leaf(LiftingKind::Const); }

  static LiftingSpec hausdorff(LiftingSpec sub = id(), HausdorffVariant v = HausdorffVariant::Symmetric) {
    auto n = std::make_shared<Node>();
    n->kind = LiftingKind::Hausdorff;
    n->variant = v;
    n->subs = {std::move(sub)};
    return LiftingSpec(std::move(n));
  }
  static LiftingSpec kantorovich(LiftingSpec sub = id()) { return unary(LiftingKind::Kantorovich, std::move(sub)); }
  static LiftingSpec wasserstein(LiftingSpec sub = id()) { return unary(LiftingKind::Wasserstein, std::move(sub)); }
  static LiftingSpec maybe(LiftingSpec sub) { return unary(LiftingKind::Maybe, std::move(sub)); }

  static LiftingSpec pair_sum(Scalar w1, Scalar w2, LiftingSpec left, LiftingSpec right) {
    auto n = std::make_shared<Node>();
    n->kind = LiftingKind::PairSum;
    n->w1 = std::move(w1);
    n->w2 = std::move(w2);
    n->subs = {std::move(left), std::move(right)};
    return LiftingSpec(std::move(n));
  }

  static LiftingSpec pair_max(LiftingSpec left, LiftingSpec right) {
    auto n = std::make_shared<Node>();
    n->kind = LiftingKind::PairMax;
    n->subs = {std::move(left), std::move(right)};
    return LiftingSpec(std::move(n));
  }

  static LiftingSpec discount(Scalar lambda, LiftingSpec sub) {
    if (lambda.is_one()) throw StructureError("discount factor must be below 1");
    auto n = std::make_shared<Node>();
    n->kind = LiftingKind::Discount;
    n->w1 = std::move(lambda);
    n->subs = {std::move(sub)};
    return LiftingSpec(std::move(n));
  }

  /// Kantorovich lifting over named functor modalities, searched on a grid of step `step`.
  static LiftingSpec kantorovich_generic(std::vector<std::string> modalities, Scalar step) {
    if (step.is_zero()) throw StructureError("grid step must be positive");
    if (Rational(1 / step.value()).get_den() != 1) throw StructureError("grid step must be 1/N");
    auto n = std::make_shared<Node>();
    n->kind = LiftingKind::KantorovichGeneric;
    n->modalities = std::move(modalities);
    n->w1 = std::move(step);
    return LiftingSpec(std::move(n));
  }

  LiftingKind kind() const noexcept { return node_->kind; }
  HausdorffVariant variant() const noexcept { return node_->variant; }
  const LiftingSpec& sub() const { return node_->subs.at(0); }
  const LiftingSpec& left() const { return node_->subs.at(0); }
  const LiftingSpec& right() const { return node_->subs.at(1); }
  const Scalar& w1() const noexcept { return node_->w1; }
  const Scalar& w2() const noexcept { return node_->w2; }
  const Scalar& lambda() const noexcept { return node_->w1; }
  const Scalar& step() const noexcept { return node_->w1; }
  const std::vector<std::string>& modality_names() const noexcept { return node_->modalities; }

  friend bool operator==(const LiftingSpec& a, const LiftingSpec& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.variant == y.variant && x.w1 == y.w1 && x.w2 == y.w2 && x.modalities == y.modalities &&
           x.subs == y.subs;
  }

 private:
  struct Node {
    LiftingKind kind = LiftingKind::Id;
    HausdorffVariant variant = HausdorffVariant::Symmetric;
    Scalar w1;
    Scalar w2;
    std::vector<std::string> modalities;
    std::vector<LiftingSpec> subs;
  };

  explicit LiftingSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static LiftingSpec leaf(LiftingKind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return LiftingSpec(std::move(n));
  }
  static LiftingSpec unary(LiftingKind k, LiftingSpec sub) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->subs = {std::move(sub)};
    return LiftingSpec(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

/// The lifting used when none is given: Hausdorff on sets, Kantorovich on
/// distributions, equal-weight sum on pairs.
inline LiftingSpec default_lifting(const FunctorSpec& f) {
  switch (f.kind()) {
    case FunctorKind::Id: return LiftingSpec::id();
    case FunctorKind::Const: return LiftingSpec::constant();
    case FunctorKind::PFin: return LiftingSpec::hausdorff(default_lifting(f.sub()));
    case FunctorKind::DFin: return LiftingSpec::kantorovich(default_lifting(f.sub()));
    case FunctorKind::Maybe: return LiftingSpec::maybe(default_lifting(f.sub()));
    case FunctorKind::Pair:
      return LiftingSpec::pair_sum(Scalar(1, 2), Scalar(1, 2), default_lifting(f.left()), default_lifting(f.right()));
  }
  return LiftingSpec::id();
}

/// A lifting checked against a functor. Evaluation is a pure function of the
/// relation and the two elements.
class Extension {
 public:
  Extension(FunctorSpec functor, LiftingSpec lifting)
      : functor_(std::move(functor)), lifting_(std::move(lifting)), root_(bind(functor_, lifting_, "$")) {}

  explicit Extension(FunctorSpec functor) : Extension(functor, default_lifting(functor)) {}

  const FunctorSpec& functor() const noexcept { return functor_; }
  const LiftingSpec& lifting() const noexcept { return lifting_; }

  /// LR(t1, t2) for R: X -|-> Y, t1 in TX, t2 in TY.
  Scalar lift(const FuzzyRel& r, const Element& t1, const Element& t2) const { return eval(*root_, r, t1, t2); }

  /// Sup-norm Lipschitz constant of R |-> LR as certified by the combinators.
  const Rational& contraction_factor() const noexcept { return root_->contraction; }

  /// Largest value the lifting can produce.
  const Rational& range() const noexcept { return root_->range; }

 private:
  struct Bound {
    FunctorSpec functor;
    LiftingSpec lifting;
    std::vector<std::shared_ptr<const Bound>> subs;
    std::vector<Modality> modalities;
    Rational range = 1;
    Rational contraction = 1;
  };

  static std::shared_ptr<const Bound> bind(const FunctorSpec& f, const LiftingSpec& l, const std::string& path) {
    auto b = std::make_shared<Bound>();
    b->functor = f;
    b->lifting = l;
    auto mismatch = [&](const char* expected) {
      return StructureError(path + ": lifting expects a " + std::string(expected) + " functor, found " + f.describe());
    };
    switch (l.kind()) {
      case LiftingKind::Id:
        if (f.kind() != FunctorKind::Id) throw mismatch("identity");
        break;
      case LiftingKind::Const: {
        if (f.kind() != FunctorKind::Const) throw mismatch("constant");
        Rational top = 0;
        for (const auto& v : f.metric().values()) top = std::max(top, v.value());
        b->range = top;
        b->contraction = 0;
        break;
      }
      case LiftingKind::Hausdorff:
        if (f.kind() != FunctorKind::PFin) throw mismatch("finite powerset");
        b->subs.push_back(bind(f.sub(), l.sub(), path + ".sub"));
        b->range = 1;
        b->contraction = b->subs[0]->contraction;
        break;
      case LiftingKind::Kantorovich:
      case LiftingKind::Wasserstein:
        if (f.kind() != FunctorKind::DFin) throw mismatch("finite distribution");
        b->subs.push_back(bind(f.sub(), l.sub(), path + ".sub"));
        b->range = b->subs[0]->range;
        b->contraction = b->subs[0]->contraction;
        break;
      case LiftingKind::PairSum:
      case LiftingKind::PairMax: {
        if (f.kind() != FunctorKind::Pair) throw mismatch("pair");
        b->subs.push_back(bind(f.left(), l.left(), path + ".left"));
        b->subs.push_back(bind(f.right(), l.right(), path + ".right"));
        const Bound& x = *b->subs[0];
        const Bound& y = *b->subs[1];
        if (l.kind() == LiftingKind::PairSum) {
          b->range = l.w1().value() * x.range + l.w2().value() * y.range;
          b->contraction = l.w1().value() * x.contraction + l.w2().value() * y.contraction;
          if (b->range > 1) {
            throw StructureError(path + ": weighted sum can exceed 1 (w1*max(left) + w2*max(right) = " +
                                 to_string(b->range) + ")");
          }
        } else {
          b->range = std::max(x.range, y.range);
          b->contraction = std::max(x.contraction, y.contraction);
        }
        break;
      }
      case LiftingKind::Discount:
        b->subs.push_back(bind(f, l.sub(), path + ".sub"));
        b->range = l.lambda().value() * b->subs[0]->range;
        b->contraction = l.lambda().value() * b->subs[0]->contraction;
        break;
      case LiftingKind::Maybe:
        if (f.kind() != FunctorKind::Maybe) throw mismatch("maybe");
        b->subs.push_back(bind(f.sub(), l.sub(), path + ".sub"));
        b->range = 1;
        b->contraction = b->subs[0]->contraction;
        break;
      case LiftingKind::KantorovichGeneric: {
        ModalitySet available = functor_modalities(f);
        if (l.modality_names().empty()) throw StructureError(path + ": no modalities given");
        for (const auto& name : l.modality_names()) {
          const Modality* m = available.find(name);
          if (!m) throw StructureError(path + ": functor " + f.describe() + " has no modality '" + name + "'");
          if (m->arity > 1) throw StructureError(path + ": grid search supports modalities of arity at most 1");
          if (!m->monotone) throw StructureError(path + ": modality '" + name + "' is not monotone");
          b->modalities.push_back(*m);
        }
        b->range = 1;
        b->contraction = 1;
        break;
      }
    }
    return b;
  }

  static Scalar eval(const Bound& b, const FuzzyRel& r, const Element& t1, const Element& t2) {
    const LiftingSpec& l = b.lifting;
    if (t1.kind() != b.functor.kind() || t2.kind() != b.functor.kind()) {
      throw StructureError("lift: element does not match functor " + b.functor.describe());
    }
    switch (l.kind()) {
      case LiftingKind::Id:
        if (t1.atom() >= r.rows() || t2.atom() >= r.cols()) throw StructureError("lift: state outside the relation");
        return r(t1.atom(), t2.atom());
      case LiftingKind::Const:
        return b.functor.metric()(t1.atom(), t2.atom());
      case LiftingKind::Hausdorff:
        return hausdorff(*b.subs[0], l.variant(), r, t1, t2);
      case LiftingKind::Kantorovich:
      case LiftingKind::Wasserstein:
        return transport_value(*b.subs[0], l.kind() == LiftingKind::Kantorovich, r, t1, t2);
      case LiftingKind::PairSum: {
        const Scalar x = eval(*b.subs[0], r, t1.first(), t2.first());
        const Scalar y = eval(*b.subs[1], r, t1.second(), t2.second());
        return Scalar(Rational(l.w1().value() * x.value() + l.w2().value() * y.value()));
      }
      case LiftingKind::PairMax:
        return std::max(eval(*b.subs[0], r, t1.first(), t2.first()), eval(*b.subs[1], r, t1.second(), t2.second()));
      case LiftingKind::Discount:
        return l.lambda() * eval(*b.subs[0], r, t1, t2);
      case LiftingKind::Maybe:
        if (t1.is_nothing() && t2.is_nothing()) return Scalar::zero();
        if (t1.is_nothing() || t2.is_nothing()) return Scalar::one();
        return eval(*b.subs[0], r, t1.value(), t2.value());
      case LiftingKind::KantorovichGeneric:
        return grid_kantorovich(b, r, t1, t2);
    }
    throw std::logic_error("unknown lifting kind");
  }

  static Scalar hausdorff(const Bound& sub, HausdorffVariant v, const FuzzyRel& r, const Element& u,
                          const Element& w) {
    const auto& us = u.items();
    const auto& vs = w.items();
    std::vector<Scalar> cost;
    cost.reserve(us.size() * vs.size());
    for (const auto& x : us)
      for (const auto& y : vs) cost.push_back(eval(sub, r, x, y));
    Scalar forward = Scalar::zero();
    for (std::size_t i = 0; i < us.size(); ++i) {
      Scalar best = Scalar::one();
      for (std::size_t j = 0; j < vs.size(); ++j) best = std::min(best, cost[i * vs.size() + j]);
      forward = std::max(forward, best);
    }
    Scalar backward = Scalar::zero();
    for (std::size_t j = 0; j < vs.size(); ++j) {
      Scalar best = Scalar::one();
      for (std::size_t i = 0; i < us.size(); ++i) best = std::min(best, cost[i * vs.size() + j]);
      backward = std::max(backward, best);
    }
    switch (v) {
      case HausdorffVariant::Symmetric: return std::max(forward, backward);
      case HausdorffVariant::Left: return forward;
      case HausdorffVariant::Right: return backward;
    }
    return forward;
  }

  static Scalar transport_value(const Bound& sub, bool dual, const FuzzyRel& r, const Element& mu,
                                const Element& nu) {
    std::vector<Rational> supply, demand;
    for (const auto& w : mu.weights()) supply.push_back(w.value());
    for (const auto& w : nu.weights()) demand.push_back(w.value());
    std::vector<std::vector<Rational>> cost(mu.items().size());
    for (std::size_t i = 0; i < mu.items().size(); ++i)
      for (const auto& y : nu.items()) cost[i].push_back(eval(sub, r, mu.items()[i], y).value());
    const TransportPlan plan = solve_transport(supply, demand, cost);
    if (!dual) return Scalar(plan.cost);
    const DualWitness w = dual_witness(plan, cost);
    Rational value = 0;
    for (std::size_t i = 0; i < supply.size(); ++i) value += supply[i] * w.f[i];
    for (std::size_t j = 0; j < demand.size(); ++j) value -= demand[j] * w.g[j];
    if (value != plan.cost) throw std::logic_error("transport: dual value differs from primal optimum");
    return Scalar(value);
  }

  static Scalar grid_kantorovich(const Bound& b, const FuzzyRel& r, const Element& t1, const Element& t2) {
    Scalar best = Scalar::zero();
    const auto support = base(t1);
    const Rational step = b.lifting.step().value();
    const long levels = Rational(1 / step).get_num().get_si();
    for (const auto& m : b.modalities) {
      if (m.arity == 0) {
        best = std::max(best, ominus(m(t1, {}), m(t2, {})));
        continue;
      }
      std::vector<long> digits(support.size(), 0);
      std::vector<Predicate> f(1, Predicate(r.rows(), Scalar::zero()));
      std::vector<Predicate> g(1);
      for (;;) {
        for (std::size_t k = 0; k < support.size(); ++k) f[0][support[k]] = Scalar(Rational(step * digits[k]));
        g[0] = companion(r, f[0]);
        best = std::max(best, ominus(m(t1, f), m(t2, g)));
        std::size_t k = 0;
        while (k < digits.size() && digits[k] == levels) digits[k++] = 0;
        if (k == digits.size()) break;
        ++digits[k];
      }
    }
    return best;
  }

  FunctorSpec functor_;
  LiftingSpec lifting_;
  std::shared_ptr<const Bound> root_;
};

/// Largest error of the grid search relative to the exact Kantorovich value.
inline Scalar kantorovich_grid_error_bound(const FunctorSpec& f, const LiftingSpec& l) {
  if (l.kind() != LiftingKind::KantorovichGeneric) throw StructureError("not a grid Kantorovich lifting");
  ModalitySet available = functor_modalities(f);
  for (const auto& name : l.modality_names()) {
    const Modality& m = available.at(name);
    if (!m.nonexpansive) {
      throw StructureError("modality '" + name + "' is not nonexpansive, so snapping to the grid has no error bound");
    }
  }
  return l.step();
}

/// A modality family whose every member maps nonexpansive pairs for the
/// lifted relation to values at most the lifted distance. Used as the logic's
/// signature when no Moss modalities are wanted.
inline ModalitySet standard_modalities(const FunctorSpec& f, const LiftingSpec& l) {
  switch (l.kind()) {
    case LiftingKind::Id:
      return {};
    case LiftingKind::Const:
      return const_modalities(f);
    case LiftingKind::Hausdorff: {
      if (l.sub().kind() != LiftingKind::Id) return {};
      switch (l.variant()) {
        case HausdorffVariant::Symmetric: return ModalitySet({modal::diamond(), modal::box()});
        case HausdorffVariant::Left: {
          auto d = modal::diamond();
          d.dual.reset();
          return ModalitySet({d});
        }
        case HausdorffVariant::Right: {
          auto b = modal::box();
          b.dual.reset();
          return ModalitySet({b});
        }
      }
      return {};
    }
    case LiftingKind::Kantorovich:
    case LiftingKind::Wasserstein:
      if (l.sub().kind() != LiftingKind::Id) return {};
      return ModalitySet({modal::expectation()});
    case LiftingKind::PairMax: {
      ModalitySet out = modal::project(standard_modalities(f.left(), l.left()), "fst", false);
      out.append(modal::project(standard_modalities(f.right(), l.right()), "snd", true));
      return out;
    }
    case LiftingKind::PairSum: {
      ModalitySet out = modal::affine(standard_modalities(f.left(), l.left()), "fst", l.w1(),
                                      [](const Element& t) -> const Element& { return t.first(); });
      out.append(modal::affine(standard_modalities(f.right(), l.right()), "snd", l.w2(),
                               [](const Element& t) -> const Element& { return t.second(); }));
      return out;
    }
    case LiftingKind::Discount:
      return modal::affine(standard_modalities(f, l.sub()), "dis", l.lambda(),
                           [](const Element& t) -> const Element& { return t; });
    case LiftingKind::Maybe:
      return modal::maybe(standard_modalities(f.sub(), l.sub()));
    case LiftingKind::KantorovichGeneric: {
      ModalitySet available = functor_modalities(f);
      std::vector<Modality> out;
      for (const auto& name : l.modality_names()) {
        Modality m = available.at(name);
        if (m.dual && std::find(l.modality_names().begin(), l.modality_names().end(), *m.dual) ==
                          l.modality_names().end())
          m.dual.reset();
        out.push_back(std::move(m));
      }
      return ModalitySet(std::move(out));
    }
  }
  return {};
}

}  // namespace laxkit
