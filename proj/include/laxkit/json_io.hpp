// JSON encodings of relations, functors, systems, liftings, certificates and formulas.
//
// Rationals are written as "p/q" strings. On input, strings may also be exact
// decimals, and JSON numbers are re-read from their text so "0.2" is 1/5.
#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "laxkit/axioms.hpp"
#include "laxkit/coalgebra.hpp"
#include "laxkit/distance.hpp"
#include "laxkit/formula.hpp"
#include "laxkit/functor.hpp"
#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/lifting.hpp"

namespace laxkit {

using json = nlohmann::json;

/// Malformed input, located by a JSON path such as "$.alpha.a1[0]".
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

namespace json_detail {

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const json* optional_field(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path, "expected an array");
  return j;
}

}  // namespace json_detail

inline Rational rational_from_json(const json& j, const std::string& path) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw FormatError(path, "expected a rational as \"p/q\", decimal string or number");
  }
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw FormatError(path, e.what());
  }
}

inline Scalar scalar_from_json(const json& j, const std::string& path) {
  Rational r = rational_from_json(j, path);
  if (r < 0 || r > 1) throw FormatError(path, "value " + to_string(r) + " outside [0,1]");
  return Scalar(r);
}

inline json to_json(const Scalar& s) { return s.str(); }
inline json to_json(const Rational& r) { return to_string(r); }

inline Carrier carrier_from_json(const json& j, const std::string& path) {
  std::vector<std::string> ids;
  json_detail::array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) ids.push_back(json_detail::str(j[i], path + "[" + std::to_string(i) + "]"));
  try {
    return Carrier(std::move(ids));
  } catch (const StructureError& e) {
    throw FormatError(path, e.what());
  }
}

inline json to_json(const Carrier& c) { return c.ids(); }

inline std::vector<Scalar> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  json_detail::array(j, path);
  if (j.size() != rows) throw FormatError(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  std::vector<Scalar> values;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    json_detail::array(j[r], rp);
    if (j[r].size() != cols)
      throw FormatError(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(j[r].size()));
    for (std::size_t c = 0; c < cols; ++c) values.push_back(scalar_from_json(j[r][c], rp + "[" + std::to_string(c) + "]"));
  }
  return values;
}

inline FuzzyRel relation_from_json(const json& j, const std::string& path = "$") {
  Carrier source = carrier_from_json(json_detail::field(j, "source", path), path + ".source");
  Carrier target = carrier_from_json(json_detail::field(j, "target", path), path + ".target");
  auto values = matrix_from_json(json_detail::field(j, "values", path), source.size(), target.size(), path + ".values");
  return FuzzyRel(std::move(source), std::move(target), std::move(values));
}

inline json to_json(const FuzzyRel& r) {
  json rows = json::array();
  for (std::size_t a = 0; a < r.rows(); ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < r.cols(); ++b) row.push_back(r(a, b).str());
    rows.push_back(std::move(row));
  }
  return {{"source", to_json(r.source())}, {"target", to_json(r.target())}, {"values", std::move(rows)}};
}

inline FunctorSpec functor_from_json(const json& j, const std::string& path = "$") {
  const std::string kind = json_detail::str(json_detail::field(j, "kind", path), path + ".kind");
  auto sub = [&](const char* key) { return functor_from_json(json_detail::field(j, key, path), path + "." + key); };
  if (kind == "id") return FunctorSpec::id();
  if (kind == "pfin") return FunctorSpec::pfin(sub("sub"));
  if (kind == "dfin") return FunctorSpec::dfin(sub("sub"));
  if (kind == "maybe") return FunctorSpec::maybe(sub("sub"));
  if (kind == "pair") return FunctorSpec::pair(sub("left"), sub("right"));
  if (kind == "const") {
    Carrier labels = carrier_from_json(json_detail::field(j, "labels", path), path + ".labels");
    auto values = matrix_from_json(json_detail::field(j, "metric", path), labels.size(), labels.size(), path + ".metric");
    try {
      return FunctorSpec::constant(labels, FuzzyRel(labels, labels, std::move(values)));
    } catch (const StructureError& e) {
      throw FormatError(path + ".metric", e.what());
    }
  }
  throw FormatError(path + ".kind", "unknown functor kind '" + kind + "'");
}

inline json to_json(const FunctorSpec& f) {
  switch (f.kind()) {
    case FunctorKind::Id: return {{"kind", "id"}};
    case FunctorKind::Const: {
      json m = to_json(f.metric());
      return {{"kind", "const"}, {"labels", to_json(f.labels())}, {"metric", m["values"]}};
    }
    case FunctorKind::PFin: return {{"kind", "pfin"}, {"sub", to_json(f.sub())}};
    case FunctorKind::DFin: return {{"kind", "dfin"}, {"sub", to_json(f.sub())}};
    case FunctorKind::Maybe: return {{"kind", "maybe"}, {"sub", to_json(f.sub())}};
    case FunctorKind::Pair: return {{"kind", "pair"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
  }
  return {};
}

/// Decodes an element. Id leaves are state ids (strings) or positions (integers).
inline Element element_from_json(const FunctorSpec& f, const json& j, const Carrier& states, const std::string& path,
                                 Diagnostics* diags = nullptr) {
  switch (f.kind()) {
    case FunctorKind::Id: {
      if (j.is_number_unsigned()) {
        const auto i = j.get<std::size_t>();
        if (i >= states.size()) throw FormatError(path, "position " + std::to_string(i) + " out of range");
        return Element::state(i);
      }
      const std::string id = json_detail::str(j, path);
      auto i = states.index_of(id);
      if (!i) throw FormatError(path, "unknown state '" + id + "'");
      return Element::state(*i);
    }
    case FunctorKind::Const: {
      const std::string id = json_detail::str(j, path);
      auto i = f.labels().index_of(id);
      if (!i) throw FormatError(path, "unknown label '" + id + "'");
      return Element::label(*i);
    }
    case FunctorKind::PFin: {
      json_detail::array(j, path);
      std::vector<Element> items;
      for (std::size_t i = 0; i < j.size(); ++i) {
        Element e = element_from_json(f.sub(), j[i], states, path + "[" + std::to_string(i) + "]", diags);
        if (std::find(items.begin(), items.end(), e) != items.end()) {
          if (diags) diags->warning(path + "[" + std::to_string(i) + "]", "duplicate set member removed");
          continue;
        }
        items.push_back(std::move(e));
      }
      return Element::set(std::move(items));
    }
    case FunctorKind::DFin: {
      json_detail::array(j, path);
      std::vector<std::pair<Element, Scalar>> entries;
      for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ip = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) throw FormatError(ip, "expected [element, probability]");
        Element e = element_from_json(f.sub(), j[i][0], states, ip + "[0]", diags);
        for (const auto& [prev, w] : entries)
          if (prev == e) throw FormatError(ip, "support point listed twice");
        entries.emplace_back(std::move(e), scalar_from_json(j[i][1], ip + "[1]"));
      }
      try {
        return Element::dist(std::move(entries));
      } catch (const StructureError& e) {
        throw FormatError(path, e.what());
      }
    }
    case FunctorKind::Pair:
      if (!j.is_array() || j.size() != 2) throw FormatError(path, "expected a two-element array");
      return Element::pair(element_from_json(f.left(), j[0], states, path + "[0]", diags),
                           element_from_json(f.right(), j[1], states, path + "[1]", diags));
    case FunctorKind::Maybe:
      if (j.is_null()) return Element::nothing();
      return Element::just(element_from_json(f.sub(), j, states, path, diags));
  }
  throw FormatError(path, "unsupported functor");
}

/// Encodes an element; Id leaves become state ids, or positions when `states` is null.
inline json to_json(const FunctorSpec& f, const Element& t, const Carrier* states) {
  switch (f.kind()) {
    case FunctorKind::Id: return states ? json(states->id(t.atom())) : json(t.atom());
    case FunctorKind::Const: return f.labels().id(t.atom());
    case FunctorKind::PFin: {
      json out = json::array();
      for (const auto& x : t.items()) out.push_back(to_json(f.sub(), x, states));
      return out;
    }
    case FunctorKind::DFin: {
      json out = json::array();
      for (std::size_t i = 0; i < t.items().size(); ++i)
        out.push_back(json::array({to_json(f.sub(), t.items()[i], states), t.weights()[i].str()}));
      return out;
    }
    case FunctorKind::Pair: return json::array({to_json(f.left(), t.first(), states), to_json(f.right(), t.second(), states)});
    case FunctorKind::Maybe: return t.is_nothing() ? json(nullptr) : to_json(f.sub(), t.value(), states);
  }
  return {};
}

struct LoadedSystem {
  Coalgebra system;
  Diagnostics diagnostics;  // warnings from decoding plus validation results
};

inline LoadedSystem system_from_json(const json& j, const std::string& path = "$") {
  LoadedSystem out;
  FunctorSpec f = functor_from_json(json_detail::field(j, "functor", path), path + ".functor");
  Carrier states = carrier_from_json(json_detail::field(j, "states", path), path + ".states");
  const json& alpha = json_detail::field(j, "alpha", path);
  if (!alpha.is_object()) throw FormatError(path + ".alpha", "expected an object keyed by state id");
  for (const auto& [key, value] : alpha.items())
    if (!states.index_of(key)) throw FormatError(path + ".alpha." + key, "not a declared state");
  std::vector<Element> transitions;
  for (const auto& id : states.ids()) {
    auto it = alpha.find(id);
    if (it == alpha.end()) throw FormatError(path + ".alpha", "no transition for state '" + id + "'");
    transitions.push_back(element_from_json(f, *it, states, path + ".alpha." + id, &out.diagnostics));
  }
  out.system = Coalgebra(std::move(f), std::move(states), std::move(transitions));
  for (auto& d : validate(out.system).items) out.diagnostics.items.push_back(std::move(d));
  return out;
}

inline json to_json(const Coalgebra& c) {
  json alpha = json::object();
  for (std::size_t a = 0; a < c.size(); ++a) alpha[c.states().id(a)] = to_json(c.functor(), c.alpha(a), &c.states());
  return {{"functor", to_json(c.functor())}, {"states", to_json(c.states())}, {"alpha", std::move(alpha)}};
}

inline LiftingSpec lifting_from_json(const json& j, const std::string& path = "$") {
  const std::string kind = json_detail::str(json_detail::field(j, "kind", path), path + ".kind");
  auto sub = [&](const char* key) -> LiftingSpec {
    if (const json* s = json_detail::optional_field(j, key)) return lifting_from_json(*s, path + "." + key);
    return LiftingSpec::id();
  };
  try {
    if (kind == "id") return LiftingSpec::id();
    if (kind == "const") return LiftingSpec::constant();
    if (kind == "hausdorff") {
      HausdorffVariant v = HausdorffVariant::Symmetric;
      if (const json* var = json_detail::optional_field(j, "variant")) {
        const std::string name = json_detail::str(*var, path + ".variant");
        if (name == "left") {
          v = HausdorffVariant::Left;
        } else if (name == "right") {
          v = HausdorffVariant::Right;
        } else if (name != "sym") {
          throw FormatError(path + ".variant", "expected sym, left or right");
        }
      }
      return LiftingSpec::hausdorff(sub("sub"), v);
    }
    if (kind == "kantorovich") return LiftingSpec::kantorovich(sub("sub"));
    if (kind == "wasserstein") return LiftingSpec::wasserstein(sub("sub"));
    if (kind == "maybe") return LiftingSpec::maybe(sub("sub"));
    if (kind == "pair-max") return LiftingSpec::pair_max(sub("left"), sub("right"));
    if (kind == "pair-sum") {
      const json& w = json_detail::field(j, "weights", path);
      if (!w.is_array() || w.size() != 2) throw FormatError(path + ".weights", "expected two weights");
      return LiftingSpec::pair_sum(scalar_from_json(w[0], path + ".weights[0]"),
                                   scalar_from_json(w[1], path + ".weights[1]"), sub("left"), sub("right"));
    }
    if (kind == "discount") {
      return LiftingSpec::discount(scalar_from_json(json_detail::field(j, "lambda", path), path + ".lambda"), sub("sub"));
    }
    if (kind == "kantorovich-generic") {
      const json& m = json_detail::array(json_detail::field(j, "modalities", path), path + ".modalities");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < m.size(); ++i)
        names.push_back(json_detail::str(m[i], path + ".modalities[" + std::to_string(i) + "]"));
      return LiftingSpec::kantorovich_generic(std::move(names),
                                              scalar_from_json(json_detail::field(j, "step", path), path + ".step"));
    }
  } catch (const StructureError& e) {
    throw FormatError(path, e.what());
  }
  throw FormatError(path + ".kind", "unknown lifting kind '" + kind + "'");
}

inline json to_json(const LiftingSpec& l) {
  switch (l.kind()) {
    case LiftingKind::Id: return {{"kind", "id"}};
    case LiftingKind::Const: return {{"kind", "const"}};
    case LiftingKind::Hausdorff: {
      const char* v = l.variant() == HausdorffVariant::Symmetric ? "sym" : l.variant() == HausdorffVariant::Left ? "left" : "right";
      return {{"kind", "hausdorff"}, {"variant", v}, {"sub", to_json(l.sub())}};
    }
    case LiftingKind::Kantorovich: return {{"kind", "kantorovich"}, {"sub", to_json(l.sub())}};
    case LiftingKind::Wasserstein: return {{"kind", "wasserstein"}, {"sub", to_json(l.sub())}};
    case LiftingKind::Maybe: return {{"kind", "maybe"}, {"sub", to_json(l.sub())}};
    case LiftingKind::PairMax: return {{"kind", "pair-max"}, {"left", to_json(l.left())}, {"right", to_json(l.right())}};
    case LiftingKind::PairSum:
      return {{"kind", "pair-sum"},
              {"weights", json::array({l.w1().str(), l.w2().str()})},
              {"left", to_json(l.left())},
              {"right", to_json(l.right())}};
    case LiftingKind::Discount: return {{"kind", "discount"}, {"lambda", l.lambda().str()}, {"sub", to_json(l.sub())}};
    case LiftingKind::KantorovichGeneric:
      return {{"kind", "kantorovich-generic"}, {"modalities", l.modality_names()}, {"step", l.step().str()}};
  }
  return {};
}

/// Certificates give either a dense "relation" ({source, target, values}, in
/// any order of the two systems' states) or sparse "entries" [[a, b, value], ...]
/// with every other pair at 1.
inline Certificate certificate_from_json(const json& j, const Carrier& a, const Carrier& b, const std::string& path = "$") {
  Certificate cert;
  if (const json* k = json_detail::optional_field(j, "kind")) {
    const std::string kind = json_detail::str(*k, path + ".kind");
    if (kind == "simulation") {
      cert.kind = CertificateKind::Simulation;
    } else if (kind == "bisimulation") {
      cert.kind = CertificateKind::Bisimulation;
    } else {
      throw FormatError(path + ".kind", "expected simulation or bisimulation");
    }
  }
  std::vector<Scalar> values(a.size() * b.size(), Scalar::one());
  if (const json* rel = json_detail::optional_field(j, "relation")) {
    FuzzyRel r = relation_from_json(*rel, path + ".relation");
    if (r.rows() != a.size() || r.cols() != b.size())
      throw FormatError(path + ".relation", "carriers do not match the two systems");
    for (std::size_t x = 0; x < r.rows(); ++x) {
      auto ia = a.index_of(r.source().id(x));
      if (!ia) throw FormatError(path + ".relation.source", "unknown state '" + r.source().id(x) + "'");
      for (std::size_t y = 0; y < r.cols(); ++y) {
        auto ib = b.index_of(r.target().id(y));
        if (!ib) throw FormatError(path + ".relation.target", "unknown state '" + r.target().id(y) + "'");
        values[*ia * b.size() + *ib] = r(x, y);
      }
    }
  } else if (const json* entries = json_detail::optional_field(j, "entries")) {
    json_detail::array(*entries, path + ".entries");
    for (std::size_t i = 0; i < entries->size(); ++i) {
      const std::string ip = path + ".entries[" + std::to_string(i) + "]";
      const json& e = (*entries)[i];
      if (!e.is_array() || e.size() != 3) throw FormatError(ip, "expected [state, state, value]");
      auto ia = a.index_of(json_detail::str(e[0], ip + "[0]"));
      auto ib = b.index_of(json_detail::str(e[1], ip + "[1]"));
      if (!ia) throw FormatError(ip + "[0]", "unknown state");
      if (!ib) throw FormatError(ip + "[1]", "unknown state");
      values[*ia * b.size() + *ib] = scalar_from_json(e[2], ip + "[2]");
    }
  } else {
    throw FormatError(path, "certificate needs 'relation' or 'entries'");
  }
  cert.relation = FuzzyRel(a, b, std::move(values));
  return cert;
}

// Formulas. A node is {"op": ..., ...}; shared subformulas may be hoisted into
// a top-level {"defs": [...], "root": ...} wrapper and referenced as {"ref": k}.

namespace json_detail {

inline Formula formula_node(const json& j, const FunctorSpec* f, const std::vector<Formula>& defs, const std::string& path) {
  if (const json* r = optional_field(j, "ref")) {
    if (!r->is_number_unsigned() || r->get<std::size_t>() >= defs.size())
      throw FormatError(path + ".ref", "reference to an undefined node");
    return defs[r->get<std::size_t>()];
  }
  const std::string op = str(field(j, "op", path), path + ".op");
  auto arg = [&]() { return formula_node(field(j, "arg", path), f, defs, path + ".arg"); };
  auto args = [&]() {
    std::vector<Formula> out;
    const json* a = optional_field(j, "args");
    if (!a) return out;
    array(*a, path + ".args");
    for (std::size_t i = 0; i < a->size(); ++i)
      out.push_back(formula_node((*a)[i], f, defs, path + ".args[" + std::to_string(i) + "]"));
    return out;
  };
  auto value = [&]() { return scalar_from_json(field(j, "value", path), path + ".value"); };
  auto two = [&](bool conj) {
    auto a = args();
    if (a.size() != 2) throw FormatError(path + ".args", "expected two operands");
    return conj ? Formula::conj(a[0], a[1]) : Formula::disj(a[0], a[1]);
  };
  if (op == "const") return Formula::constant(value());
  if (op == "minus") return Formula::minus(arg(), value());
  if (op == "plus") return Formula::plus(arg(), value());
  if (op == "and") return two(true);
  if (op == "or") return two(false);
  if (op == "neg") return Formula::neg(arg());
  if (op == "modal") return Formula::modal(str(field(j, "name", path), path + ".name"), args());
  if (op == "moss") {
    if (!f) throw FormatError(path, "Moss formulas need the functor to decode their shape");
    auto a = args();
    const Carrier positions = Carrier::indices(a.size(), 0);
    Element shape = element_from_json(*f, field(j, "shape", path), positions, path + ".shape");
    return Formula::moss(std::move(shape), std::move(a));
  }
  throw FormatError(path + ".op", "unknown operator '" + op + "'");
}

}  // namespace json_detail

/// `functor` is needed only for Moss formulas.
inline Formula formula_from_json(const json& j, const FunctorSpec* functor = nullptr, const std::string& path = "$") {
  std::vector<Formula> defs;
  if (const json* d = json_detail::optional_field(j, "defs")) {
    json_detail::array(*d, path + ".defs");
    for (std::size_t i = 0; i < d->size(); ++i)
      defs.push_back(json_detail::formula_node((*d)[i], functor, defs, path + ".defs[" + std::to_string(i) + "]"));
    return json_detail::formula_node(json_detail::field(j, "root", path), functor, defs, path + ".root");
  }
  return json_detail::formula_node(j, functor, defs, path);
}

/// Encodes with sharing: every node reachable more than once is emitted once in "defs".
inline json to_json(const Formula& root, const FunctorSpec* functor = nullptr) {
  std::unordered_map<const void*, std::size_t> uses;
  std::function<void(const Formula&)> count = [&](const Formula& f) {
    if (uses[f.identity()]++ > 0) return;
    for (const auto& a : f.args()) count(a);
  };
  count(root);

  json defs = json::array();
  std::unordered_map<const void*, std::size_t> ids;
  std::function<json(const Formula&, bool)> encode = [&](const Formula& f, bool top) -> json {
    if (!top) {
      if (auto it = ids.find(f.identity()); it != ids.end()) return {{"ref", it->second}};
    }
    json args = json::array();
    for (const auto& a : f.args()) args.push_back(encode(a, false));
    json node;
    switch (f.op()) {
      case FormulaOp::Const: node = {{"op", "const"}, {"value", f.value().str()}}; break;
      case FormulaOp::Minus: node = {{"op", "minus"}, {"arg", args[0]}, {"value", f.value().str()}}; break;
      case FormulaOp::Plus: node = {{"op", "plus"}, {"arg", args[0]}, {"value", f.value().str()}}; break;
      case FormulaOp::And: node = {{"op", "and"}, {"args", args}}; break;
      case FormulaOp::Or: node = {{"op", "or"}, {"args", args}}; break;
      case FormulaOp::Neg: node = {{"op", "neg"}, {"arg", args[0]}}; break;
      case FormulaOp::Modal: node = {{"op", "modal"}, {"name", f.name()}, {"args", args}}; break;
      case FormulaOp::Moss:
        if (!functor) throw StructureError("encoding a Moss formula needs its functor");
        node = {{"op", "moss"}, {"shape", to_json(*functor, f.shape(), nullptr)}, {"args", args}};
        break;
    }
    if (!top && uses[f.identity()] > 1) {
      ids.emplace(f.identity(), defs.size());
      defs.push_back(std::move(node));
      return {{"ref", defs.size() - 1}};
    }
    return node;
  };
  json root_node = encode(root, true);
  if (defs.empty()) return root_node;
  return {{"defs", std::move(defs)}, {"root", std::move(root_node)}};
}

inline json to_json(const DistanceResult& r, bool with_trace) {
  json out = {{"matrix", to_json(r.matrix)},
              {"iterations", r.iterations},
              {"residual", r.residual.str()},
              {"converged", r.converged},
              {"exact", r.exact},
              {"error_bound", r.error_bound ? json(r.error_bound->str()) : json(nullptr)}};
  if (with_trace) {
    json trace = json::array();
    for (const auto& d : r.trace) trace.push_back(to_json(d)["values"]);
    out["trace"] = std::move(trace);
  }
  return out;
}

inline json to_json(const Counterexample& c, const FunctorSpec& f) {
  json carriers = json::array();
  for (const auto& x : c.data.carriers) carriers.push_back(to_json(x));
  json rels = json::array();
  for (const auto& r : c.data.relations) rels.push_back(to_json(r));
  json elems = json::array();
  for (const auto& e : c.data.elements) elems.push_back(to_json(f, e, nullptr));
  json out = {{"trial", c.trial}, {"seed", c.seed}, {"detail", c.detail}, {"carriers", carriers},
              {"relations", rels}, {"elements", elems}};
  if (!c.data.maps.empty()) out["maps"] = c.data.maps;
  if (!c.data.eps.is_zero()) out["eps"] = c.data.eps.str();
  return out;
}

inline json to_json(const AxiomReport& rep, const FunctorSpec& f) {
  json axioms = json::array();
  for (const auto& a : rep.axioms) {
    json entry = {{"axiom", a.name}, {"passed", a.passed}, {"failed", a.failed}, {"skipped", a.skipped}};
    if (a.counterexample) entry["counterexample"] = to_json(*a.counterexample, f);
    axioms.push_back(std::move(entry));
  }
  return {{"ok", rep.ok()}, {"axioms", std::move(axioms)}};
}

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace laxkit
