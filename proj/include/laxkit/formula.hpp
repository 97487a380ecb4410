// Quantitative modal formulas: AST, text syntax, negation and evaluation.
//
// Text grammar (loosest first):
//   formula := conj ("\/" conj)*
//   conj    := shift ("/\" shift)*
//   shift   := atom (("(+)" | "(-)") const)*
//   atom    := const | "~" atom | "(" formula ")" | NAME [ "(" [formula ("," formula)*] ")" ]
// Constants are p/q or finite decimals. Moss formulas have no text form.
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "laxkit/coalgebra.hpp"
#include "laxkit/functor.hpp"
#include "laxkit/lifting.hpp"
#include "laxkit/modality.hpp"

namespace laxkit {

enum class FormulaOp { Const, Minus, Plus, And, Or, Modal, Moss, Neg };

/// Immutable, shared formula DAG.
class Formula {
 public:
  Formula() : Formula(constant(Scalar::zero())) {}

  static Formula constant(Scalar c) { return make(FormulaOp::Const, std::move(c), {}, {}, {}); }
  static Formula minus(Formula sub, Scalar c) { return make(FormulaOp::Minus, std::move(c), {}, {std::move(sub)}, {}); }
  static Formula plus(Formula sub, Scalar c) { return make(FormulaOp::Plus, std::move(c), {}, {std::move(sub)}, {}); }
  static Formula conj(Formula l, Formula r) { return make(FormulaOp::And, {}, {}, {std::move(l), std::move(r)}, {}); }
  static Formula disj(Formula l, Formula r) { return make(FormulaOp::Or, {}, {}, {std::move(l), std::move(r)}, {}); }
  static Formula neg(Formula sub) { return make(FormulaOp::Neg, {}, {}, {std::move(sub)}, {}); }
  static Formula modal(std::string name, std::vector<Formula> args) {
    return make(FormulaOp::Modal, {}, std::move(name), std::move(args), {});
  }

  /// Delta applied to `shape`, an element over the positions 0..args.size()-1.
  static Formula moss(Element shape, std::vector<Formula> args) {
    for (std::size_t x : base(shape))
      if (x >= args.size()) throw StructureError("moss formula: element refers to a missing argument");
    return make(FormulaOp::Moss, {}, {}, std::move(args), std::move(shape));
  }

  FormulaOp op() const noexcept { return node_->op; }
  const Scalar& value() const noexcept { return node_->value; }
  const std::string& name() const noexcept { return node_->name; }
  const std::vector<Formula>& args() const noexcept { return node_->args; }
  const Formula& arg(std::size_t i = 0) const { return node_->args.at(i); }
  const Element& shape() const noexcept { return node_->shape; }
  std::size_t rank() const noexcept { return node_->rank; }

  /// Node identity, used for memoisation over shared subformulas.
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    return x.op == y.op && x.value == y.value && x.name == y.name && x.shape == y.shape && x.args == y.args;
  }

 private:
  struct Node {
    FormulaOp op = FormulaOp::Const;
    Scalar value;
    std::string name;
    std::vector<Formula> args;
    Element shape;
    std::size_t rank = 0;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(FormulaOp op, Scalar value, std::string name, std::vector<Formula> args, Element shape) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->value = std::move(value);
    n->name = std::move(name);
    n->args = std::move(args);
    n->shape = std::move(shape);
    std::size_t r = 0;
    for (const auto& a : n->args) r = std::max(r, a.rank());
    n->rank = (op == FormulaOp::Modal || op == FormulaOp::Moss) ? r + 1 : r;
    return Formula(std::move(n));
  }

  std::shared_ptr<const Node> node_;
};

namespace formula_detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = disjunction();
    skip();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) throw ParseError(pos_, "expected '" + std::string(tok) + "'");
  }

  static bool digit(char c) { return c >= '0' && c <= '9'; }
  static bool alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
  static bool name_start(char c) { return alpha(c) || c == '<' || c == '[' || c == '@'; }
  static bool name_char(char c) {
    return alpha(c) || digit(c) || c == '<' || c == '>' || c == '[' || c == ']' || c == '.' || c == '@' ||
           c == '\'' || c == '~';
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (eat("\\/")) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = shifted();
    while (eat("/\\")) f = Formula::conj(std::move(f), shifted());
    return f;
  }

  Formula shifted() {
    Formula f = atom();
    for (;;) {
      if (eat("(+)")) {
        f = Formula::plus(std::move(f), constant());
      } else if (eat("(-)")) {
        f = Formula::minus(std::move(f), constant());
      } else {
        return f;
      }
    }
  }

  Scalar constant() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/') && pos_ + 1 < text_.size() &&
        digit(text_[pos_ + 1])) {
      ++pos_;
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    }
    if (pos_ == start) throw ParseError(start, "expected a constant");
    try {
      return Scalar::parse(text_.substr(start, pos_ - start));
    } catch (const StructureError& e) {
      throw ParseError(start, e.what());
    } catch (const ParseError& e) {
      throw ParseError(start, "malformed constant");
    }
  }

  Formula atom() {
    skip();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (digit(c)) return Formula::constant(constant());
    if (c == '~') {
      ++pos_;
      return Formula::neg(atom());
    }
    if (c == '(') {
      ++pos_;
      Formula f = disjunction();
      expect(")");
      return f;
    }
    if (name_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      std::vector<Formula> args;
      // A "(" directly after the name opens the argument list, unless it starts "(+)" or "(-)".
      skip();
      if (pos_ < text_.size() && text_[pos_] == '(' && text_.substr(pos_, 3) != "(+)" && text_.substr(pos_, 3) != "(-)") {
        ++pos_;
        if (!eat(")")) {
          args.push_back(disjunction());
          while (eat(",")) args.push_back(disjunction());
          expect(")");
        }
      }
      return Formula::modal(std::move(name), std::move(args));
    }
    throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace formula_detail

inline Formula parse_formula(std::string_view text) { return formula_detail::Parser(text).parse(); }

/// Fully parenthesised text form. Throws for Moss formulas, which have none.
inline std::string print(const Formula& f) {
  switch (f.op()) {
    case FormulaOp::Const: return f.value().str();
    case FormulaOp::Minus: return "(" + print(f.arg()) + " (-) " + f.value().str() + ")";
    case FormulaOp::Plus: return "(" + print(f.arg()) + " (+) " + f.value().str() + ")";
    case FormulaOp::And: return "(" + print(f.arg(0)) + " /\\ " + print(f.arg(1)) + ")";
    case FormulaOp::Or: return "(" + print(f.arg(0)) + " \\/ " + print(f.arg(1)) + ")";
    case FormulaOp::Neg: return "~" + print(f.arg());
    case FormulaOp::Modal: {
      std::string out = f.name() + "(";
      for (std::size_t i = 0; i < f.args().size(); ++i) out += (i ? ", " : "") + print(f.args()[i]);
      return out + ")";
    }
    case FormulaOp::Moss: throw StructureError("Moss formulas have no text form; use JSON");
  }
  return {};
}

/// Pushes negation to the constants by De Morgan, using modality duals.
inline Formula negate(const Formula& f, const ModalitySet& mods) {
  switch (f.op()) {
    case FormulaOp::Const: return Formula::constant(f.value().complement());
    case FormulaOp::Minus: return Formula::plus(negate(f.arg(), mods), f.value());
    case FormulaOp::Plus: return Formula::minus(negate(f.arg(), mods), f.value());
    case FormulaOp::And: return Formula::disj(negate(f.arg(0), mods), negate(f.arg(1), mods));
    case FormulaOp::Or: return Formula::conj(negate(f.arg(0), mods), negate(f.arg(1), mods));
    case FormulaOp::Neg: return f.arg();
    case FormulaOp::Modal: {
      const Modality& m = mods.at(f.name());
      if (!m.dual) throw StructureError("cannot negate: modality '" + f.name() + "' has no dual");
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(negate(a, mods));
      return Formula::modal(*m.dual, std::move(args));
    }
    case FormulaOp::Moss: throw StructureError("cannot negate a Moss formula");
  }
  return f;
}

/// Evaluates formulas on every state of one system at once, memoising shared
/// subformulas. Named modalities come from `mods`; Moss formulas use `ext`.
class Evaluator {
 public:
  Evaluator(const Coalgebra& system, ModalitySet mods, const Extension* ext = nullptr)
      : system_(system), mods_(std::move(mods)), ext_(ext) {}

  const Predicate& operator()(const Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    Predicate v = compute(f);
    keep_.push_back(f);
    return memo_.emplace(f.identity(), std::move(v)).first->second;
  }

  Scalar at(const Formula& f, std::size_t state) { return (*this)(f).at(state); }

  const ModalitySet& modalities() const noexcept { return mods_; }

 private:
  Predicate compute(const Formula& f) {
    const std::size_t n = system_.size();
    Predicate out(n);
    switch (f.op()) {
      case FormulaOp::Const:
        std::fill(out.begin(), out.end(), f.value());
        return out;
      case FormulaOp::Minus:
      case FormulaOp::Plus: {
        const Predicate& s = (*this)(f.arg());
        for (std::size_t x = 0; x < n; ++x)
          out[x] = f.op() == FormulaOp::Plus ? oplus(s[x], f.value()) : ominus(s[x], f.value());
        return out;
      }
      case FormulaOp::And:
      case FormulaOp::Or: {
        const Predicate l = (*this)(f.arg(0));
        const Predicate& r = (*this)(f.arg(1));
        for (std::size_t x = 0; x < n; ++x) out[x] = f.op() == FormulaOp::And ? std::min(l[x], r[x]) : std::max(l[x], r[x]);
        return out;
      }
      case FormulaOp::Neg:
        return (*this)(negate(f.arg(), mods_));
      case FormulaOp::Modal: {
        const Modality& m = mods_.at(f.name());
        if (m.arity != f.args().size()) {
          throw StructureError("modality '" + f.name() + "' takes " + std::to_string(m.arity) + " arguments, got " +
                               std::to_string(f.args().size()));
        }
        std::vector<Predicate> args;
        for (const auto& a : f.args()) args.push_back((*this)(a));
        for (std::size_t x = 0; x < n; ++x) out[x] = m(system_.alpha(x), args);
        return out;
      }
      case FormulaOp::Moss: {
        if (!ext_) throw StructureError("Moss formulas need a lifting to evaluate");
        const std::size_t k = f.args().size();
        std::vector<Scalar> e(n * k);
        for (std::size_t i = 0; i < k; ++i) {
          const Predicate& p = (*this)(f.args()[i]);
          for (std::size_t x = 0; x < n; ++x) e[x * k + i] = p[x];
        }
        const FuzzyRel elementhood(system_.states(), Carrier::indices(k), std::move(e));
        for (std::size_t x = 0; x < n; ++x) out[x] = ext_->lift(elementhood, system_.alpha(x), f.shape());
        return out;
      }
    }
    return out;
  }

  const Coalgebra& system_;
  ModalitySet mods_;
  const Extension* ext_;
  std::unordered_map<const void*, Predicate> memo_;
  std::vector<Formula> keep_;  // keeps memo keys alive
};

}  // namespace laxkit
