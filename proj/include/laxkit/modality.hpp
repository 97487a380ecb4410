// Fuzzy predicate liftings ("modalities") and the registry of built-in ones.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/functor.hpp"

namespace laxkit {

/// lambda_X : ([0,1]^X)^n -> [0,1]^(TX), evaluated at a single element.
struct Modality {
  using Eval = std::function<Scalar(const Element&, std::span<const Predicate>)>;

  std::string name;
  std::size_t arity = 1;
  bool monotone = true;
  bool nonexpansive = true;
  std::optional<std::string> dual;
  Eval eval;

  Scalar operator()(const Element& t, std::span<const Predicate> args) const {
    if (args.size() != arity) {
      throw StructureError("modality " + name + " expects " + std::to_string(arity) + " arguments, got " +
                           std::to_string(args.size()));
    }
    return eval(t, args);
  }
};

class ModalitySet {
 public:
  ModalitySet() = default;
  explicit ModalitySet(std::vector<Modality> mods) : mods_(std::move(mods)) {}

  const std::vector<Modality>& all() const noexcept { return mods_; }
  std::size_t size() const noexcept { return mods_.size(); }
  bool empty() const noexcept { return mods_.empty(); }

  const Modality* find(const std::string& name) const {
    for (const auto& m : mods_)
      if (m.name == name) return &m;
    return nullptr;
  }

  const Modality& at(const std::string& name) const {
    if (auto* m = find(name)) return *m;
    throw StructureError("unknown modality '" + name + "'");
  }

  /// Every modality has a registered dual.
  bool dual_closed() const {
    return std::all_of(mods_.begin(), mods_.end(), [&](const Modality& m) { return m.dual && find(*m.dual); });
  }

  void append(const ModalitySet& other) { mods_.insert(mods_.end(), other.mods_.begin(), other.mods_.end()); }

 private:
  std::vector<Modality> mods_;
};

namespace modal {

inline Modality diamond() {
  return {"<>", 1, true, true, "[]", [](const Element& t, std::span<const Predicate> f) {
            Scalar best = Scalar::zero();
            for (const auto& x : t.items()) best = std::max(best, f[0].at(x.atom()));
            return best;
          }};
}

inline Modality box() {
  return {"[]", 1, true, true, "<>", [](const Element& t, std::span<const Predicate> f) {
            Scalar best = Scalar::one();
            for (const auto& x : t.items()) best = std::min(best, f[0].at(x.atom()));
            return best;
          }};
}

inline Modality expectation() {
  return {"E", 1, true, true, "E", [](const Element& t, std::span<const Predicate> f) {
            Rational sum = 0;
            for (std::size_t i = 0; i < t.items().size(); ++i)
              sum += t.weights()[i].value() * f[0].at(t.items()[i].atom()).value();
            return Scalar::clamp(sum);
          }};
}

/// Renames a family, keeping dual links consistent.
inline ModalitySet rename(const ModalitySet& set, const std::function<std::string(const std::string&)>& fn) {
  std::vector<Modality> out;
  for (auto m : set.all()) {
    m.name = fn(m.name);
    if (m.dual) m.dual = fn(*m.dual);
    out.push_back(std::move(m));
  }
  return ModalitySet(std::move(out));
}

/// Lifts a family along a projection of Pair, named "<prefix>.<name>".
inline ModalitySet project(const ModalitySet& set, const std::string& prefix, bool second) {
  std::vector<Modality> out;
  for (const auto& m : set.all()) {
    Modality p = m;
    p.name = prefix + "." + m.name;
    if (m.dual) p.dual = prefix + "." + *m.dual;
    p.eval = [inner = m.eval, second](const Element& t, std::span<const Predicate> f) {
      return inner(second ? t.second() : t.first(), f);
    };
    out.push_back(std::move(p));
  }
  return ModalitySet(std::move(out));
}

/// For each x: "<p>.x" = w * x and "<p>~x" = (1 - w) + w * x. The dual of
/// "<p>.x" is "<p>~dual(x)", so dual-closed families stay dual-closed.
inline ModalitySet affine(const ModalitySet& set, const std::string& prefix, const Scalar& w,
                          const std::function<const Element&(const Element&)>& select) {
  std::vector<Modality> out;
  const Rational shift = 1 - w.value();
  for (const auto& m : set.all()) {
    Modality lo = m;
    lo.name = prefix + "." + m.name;
    lo.dual = m.dual ? std::optional<std::string>(prefix + "~" + *m.dual) : std::nullopt;
    lo.eval = [inner = m.eval, w, select](const Element& t, std::span<const Predicate> f) {
      return w * inner(select(t), f);
    };
    Modality hi = m;
    hi.name = prefix + "~" + m.name;
    hi.dual = m.dual ? std::optional<std::string>(prefix + "." + *m.dual) : std::nullopt;
    hi.eval = [inner = m.eval, w, shift, select](const Element& t, std::span<const Predicate> f) {
      return Scalar(Rational(shift + (w * inner(select(t), f)).value()));
    };
    out.push_back(std::move(lo));
    out.push_back(std::move(hi));
  }
  return ModalitySet(std::move(out));
}

/// Extends a family from G to Maybe G. A self-dual x splits into "<x>" (0 on
/// nothing) and "[x]" (1 on nothing); in a dual pair the first-listed member is
/// 0 on nothing and its dual 1; a modality without dual is 0 on nothing.
inline ModalitySet maybe(const ModalitySet& set) {
  std::vector<Modality> out;
  std::vector<std::string> seen;
  auto wrap = [](const Modality& m, Scalar on_nothing) {
    Modality w = m;
    w.eval = [inner = m.eval, on_nothing](const Element& t, std::span<const Predicate> f) {
      return t.is_nothing() ? on_nothing : inner(t.value(), f);
    };
    return w;
  };
  for (const auto& m : set.all()) {
    if (m.dual && *m.dual == m.name) {
      Modality d = wrap(m, Scalar::zero());
      d.name = "<" + m.name + ">";
      d.dual = "[" + m.name + "]";
      Modality b = wrap(m, Scalar::one());
      b.name = "[" + m.name + "]";
      b.dual = "<" + m.name + ">";
      out.push_back(std::move(d));
      out.push_back(std::move(b));
      continue;
    }
    const bool dual_first = m.dual && std::find(seen.begin(), seen.end(), *m.dual) != seen.end();
    out.push_back(wrap(m, dual_first ? Scalar::one() : Scalar::zero()));
    seen.push_back(m.name);
  }
  return ModalitySet(std::move(out));
}

}  // namespace modal

/// Label read-outs for a Const functor: "@m" = d(label, m); when the label
/// metric is symmetric also "@m'" = 1 - d(label, m), dual to "@m".
inline ModalitySet const_modalities(const FunctorSpec& f) {
  std::vector<Modality> out;
  const bool symmetric = converse(f.metric()) == f.metric();
  for (std::size_t m = 0; m < f.labels().size(); ++m) {
    const std::string id = f.labels().id(m);
    FuzzyRel metric = f.metric();
    Modality at{"@" + id, 0, true, true, std::nullopt,
                [metric, m](const Element& t, std::span<const Predicate>) { return metric(t.atom(), m); }};
    if (symmetric) {
      at.dual = "@" + id + "'";
      Modality co{"@" + id + "'", 0, true, true, "@" + id,
                  [metric, m](const Element& t, std::span<const Predicate>) { return metric(t.atom(), m).complement(); }};
      out.push_back(std::move(at));
      out.push_back(std::move(co));
    } else {
      out.push_back(std::move(at));
    }
  }
  return ModalitySet(std::move(out));
}

/// Modalities intrinsic to a functor, independent of any chosen lifting.
inline ModalitySet functor_modalities(const FunctorSpec& f) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return {};
    case FunctorKind::Const:
      return const_modalities(f);
    case FunctorKind::PFin:
      if (f.sub().kind() == FunctorKind::Id) return ModalitySet({modal::diamond(), modal::box()});
      return {};
    case FunctorKind::DFin:
      if (f.sub().kind() == FunctorKind::Id) return ModalitySet({modal::expectation()});
      return {};
    case FunctorKind::Maybe:
      return modal::maybe(functor_modalities(f.sub()));
    case FunctorKind::Pair: {
      ModalitySet out = modal::project(functor_modalities(f.left()), "fst", false);
      out.append(modal::project(functor_modalities(f.right()), "snd", true));
      return out;
    }
  }
  return {};
}

}  // namespace laxkit
