// Finitary functors built from a small grammar, and their elements.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/carrier.hpp"
#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/scalar.hpp"

namespace laxkit {

enum class FunctorKind { Id, Const, PFin, DFin, Pair, Maybe };

inline const char* functor_kind_name(FunctorKind k) {
  switch (k) {
    case FunctorKind::Id: return "id";
    case FunctorKind::Const: return "const";
    case FunctorKind::PFin: return "pfin";
    case FunctorKind::DFin: return "dfin";
    case FunctorKind::Pair: return "pair";
    case FunctorKind::Maybe: return "maybe";
  }
  return "?";
}

/// Grammar node: Id | Const(labels, hemimetric) | PFin F | DFin F | Pair(F, G) | Maybe F.
class FunctorSpec {
 public:
  FunctorSpec() : node_(std::make_shared<Node>()) {}

  static FunctorSpec id() { return FunctorSpec(); }

  static FunctorSpec constant(Carrier labels, FuzzyRel metric) {
    if (!(metric.source() == labels) || !(metric.target() == labels)) {
      throw StructureError("const functor: metric must be indexed by the label set on both sides");
    }
    if (!is_hemimetric(metric)) throw StructureError("const functor: label metric is not a hemimetric");
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Const;
    n->labels = std::move(labels);
    n->metric = std::move(metric);
    return FunctorSpec(std::move(n));
  }

  static FunctorSpec pfin(FunctorSpec sub) { return unary(FunctorKind::PFin, std::move(sub)); }
  static FunctorSpec dfin(FunctorSpec sub) { return unary(FunctorKind::DFin, std::move(sub)); }
  static FunctorSpec maybe(FunctorSpec sub) { return unary(FunctorKind::Maybe, std::move(sub)); }

  static FunctorSpec pair(FunctorSpec left, FunctorSpec right) {
    auto n = std::make_shared<Node>();
    n->kind = FunctorKind::Pair;
    n->subs = {std::move(left), std::move(right)};
    return FunctorSpec(std::move(n));
  }

  FunctorKind kind() const noexcept { return node_->kind; }
  const FunctorSpec& sub() const { return node_->subs.at(0); }
  const FunctorSpec& left() const { return node_->subs.at(0); }
  const FunctorSpec& right() const { return node_->subs.at(1); }
  const Carrier& labels() const noexcept { return node_->labels; }
  const FuzzyRel& metric() const noexcept { return node_->metric; }

  friend bool operator==(const FunctorSpec& a, const FunctorSpec& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.kind == y.kind && x.labels == y.labels && x.metric == y.metric && x.subs == y.subs;
  }

  std::string describe() const {
    switch (kind()) {
      case FunctorKind::Id: return "Id";
      case FunctorKind::Const: return "Const[" + std::to_string(labels().size()) + "]";
      case FunctorKind::PFin: return "PFin(" + sub().describe() + ")";
      case FunctorKind::DFin: return "DFin(" + sub().describe() + ")";
      case FunctorKind::Maybe: return "Maybe(" + sub().describe() + ")";
      case FunctorKind::Pair: return "Pair(" + left().describe() + ", " + right().describe() + ")";
    }
    return "?";
  }

 private:
  struct Node {
    FunctorKind kind = FunctorKind::Id;
    Carrier labels;
    FuzzyRel metric;
    std::vector<FunctorSpec> subs;
  };

  explicit FunctorSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static FunctorSpec unary(FunctorKind k, FunctorSpec sub) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->subs = {std::move(sub)};
    return FunctorSpec(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

/// An element of T X in canonical form. States and labels are positions in
/// their carriers; sets are sorted and duplicate-free; distributions are
/// sorted by support point with merged weights.
class Element {
 public:
  Element() = default;

  static Element state(std::size_t x) { return Element(FunctorKind::Id, x); }
  static Element label(std::size_t l) { return Element(FunctorKind::Const, l); }

  static Element set(std::vector<Element> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    Element e(FunctorKind::PFin, 0);
    e.items_ = std::move(items);
    return e;
  }

  /// Merges repeated support points. Does not check that the mass is one.
  static Element dist(std::vector<std::pair<Element, Scalar>> entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Element e(FunctorKind::DFin, 0);
    for (auto& [item, w] : entries) {
      if (!e.items_.empty() && e.items_.back() == item) {
        e.weights_.back() = Scalar(Rational(e.weights_.back().value() + w.value()));
      } else {
        e.items_.push_back(std::move(item));
        e.weights_.push_back(std::move(w));
      }
    }
    return e;
  }

  static Element pair(Element l, Element r) {
    Element e(FunctorKind::Pair, 0);
    e.items_ = {std::move(l), std::move(r)};
    return e;
  }

  static Element nothing() { return Element(FunctorKind::Maybe, 0); }

  static Element just(Element x) {
    Element e(FunctorKind::Maybe, 0);
    e.items_ = {std::move(x)};
    return e;
  }

  FunctorKind kind() const noexcept { return kind_; }
  std::size_t atom() const noexcept { return atom_; }
  const std::vector<Element>& items() const noexcept { return items_; }
  const std::vector<Scalar>& weights() const noexcept { return weights_; }
  const Element& first() const { return items_.at(0); }
  const Element& second() const { return items_.at(1); }
  bool is_nothing() const noexcept { return kind_ == FunctorKind::Maybe && items_.empty(); }
  const Element& value() const { return items_.at(0); }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element&, const Element&) = default;

 private:
  Element(FunctorKind k, std::size_t atom) : kind_(k), atom_(atom) {}

  FunctorKind kind_ = FunctorKind::Id;
  std::size_t atom_ = 0;
  std::vector<Element> items_;
  std::vector<Scalar> weights_;
};

/// T f for f given as an index table.
inline Element apply_map(const FunctorSpec& spec, std::span<const std::size_t> f, const Element& t) {
  if (t.kind() != spec.kind()) throw StructureError("apply_map: element does not match functor " + spec.describe());
  switch (spec.kind()) {
    case FunctorKind::Id:
      if (t.atom() >= f.size()) throw StructureError("apply_map: state outside the map's domain");
      return Element::state(f[t.atom()]);
    case FunctorKind::Const:
      return t;
    case FunctorKind::PFin: {
      std::vector<Element> items;
      items.reserve(t.items().size());
      for (const auto& x : t.items()) items.push_back(apply_map(spec.sub(), f, x));
      return Element::set(std::move(items));
    }
    case FunctorKind::DFin: {
      std::vector<std::pair<Element, Scalar>> entries;
      entries.reserve(t.items().size());
      for (std::size_t i = 0; i < t.items().size(); ++i)
        entries.emplace_back(apply_map(spec.sub(), f, t.items()[i]), t.weights()[i]);
      return Element::dist(std::move(entries));
    }
    case FunctorKind::Pair:
      return Element::pair(apply_map(spec.left(), f, t.first()), apply_map(spec.right(), f, t.second()));
    case FunctorKind::Maybe:
      return t.is_nothing() ? t : Element::just(apply_map(spec.sub(), f, t.value()));
  }
  throw StructureError("apply_map: unknown functor");
}

namespace detail {
inline void collect_base(const Element& t, std::vector<std::size_t>& out) {
  if (t.kind() == FunctorKind::Id) {
    if (std::find(out.begin(), out.end(), t.atom()) == out.end()) out.push_back(t.atom());
    return;
  }
  for (const auto& x : t.items()) collect_base(x, out);
}
}  // namespace detail

/// States occurring in t, in order of first occurrence.
inline std::vector<std::size_t> base(const Element& t) {
  std::vector<std::size_t> out;
  detail::collect_base(t, out);
  return out;
}

/// Appends one message per typing problem of t against spec over a carrier of
/// n states. DFin masses are checked exactly.
inline void element_errors(const FunctorSpec& spec, const Element& t, std::size_t n, const std::string& path,
                           std::vector<std::string>& out) {
  if (t.kind() != spec.kind()) {
    out.push_back(path + ": expected " + functor_kind_name(spec.kind()) + " element, found " +
                  functor_kind_name(t.kind()));
    return;
  }
  switch (spec.kind()) {
    case FunctorKind::Id:
      if (t.atom() >= n) out.push_back(path + ": state index " + std::to_string(t.atom()) + " out of range");
      return;
    case FunctorKind::Const:
      if (t.atom() >= spec.labels().size()) out.push_back(path + ": label index out of range");
      return;
    case FunctorKind::PFin:
      for (std::size_t i = 0; i < t.items().size(); ++i)
        element_errors(spec.sub(), t.items()[i], n, path + "[" + std::to_string(i) + "]", out);
      return;
    case FunctorKind::DFin: {
      Rational mass = 0;
      for (std::size_t i = 0; i < t.items().size(); ++i) {
        element_errors(spec.sub(), t.items()[i], n, path + "[" + std::to_string(i) + "]", out);
        if (t.weights()[i].is_zero())
          out.push_back(path + "[" + std::to_string(i) + "]: probability must be positive");
        mass += t.weights()[i].value();
      }
      if (mass != 1) out.push_back(path + ": probabilities sum to " + to_string(mass) + ", expected 1");
      return;
    }
    case FunctorKind::Pair:
      if (t.items().size() != 2) {
        out.push_back(path + ": pair needs two components");
        return;
      }
      element_errors(spec.left(), t.first(), n, path + ".0", out);
      element_errors(spec.right(), t.second(), n, path + ".1", out);
      return;
    case FunctorKind::Maybe:
      if (!t.is_nothing()) element_errors(spec.sub(), t.value(), n, path, out);
      return;
  }
}

inline bool well_typed(const FunctorSpec& spec, const Element& t, std::size_t n) {
  std::vector<std::string> errs;
  element_errors(spec, t, n, "$", errs);
  return errs.empty();
}

}  // namespace laxkit
