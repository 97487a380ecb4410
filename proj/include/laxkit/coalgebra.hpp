// Finite coalgebras (A, alpha: A -> TA), validation and disjoint unions.
#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/carrier.hpp"
#include "laxkit/functor.hpp"

namespace laxkit {

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  std::string path;
  std::string message;
};

struct Diagnostics {
  std::vector<Diagnostic> items;

  bool ok() const {
    for (const auto& d : items)
      if (d.severity == Diagnostic::Severity::Error) return false;
    return true;
  }
  void error(std::string path, std::string message) {
    items.push_back({Diagnostic::Severity::Error, std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    items.push_back({Diagnostic::Severity::Warning, std::move(path), std::move(message)});
  }
};

class Coalgebra {
 public:
  Coalgebra() = default;

  Coalgebra(FunctorSpec functor, Carrier states, std::vector<Element> alpha)
      : functor_(std::move(functor)), states_(std::move(states)), alpha_(std::move(alpha)) {
    if (alpha_.size() != states_.size()) throw StructureError("transition map is not total");
  }

  const FunctorSpec& functor() const noexcept { return functor_; }
  const Carrier& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  const Element& alpha(std::size_t a) const { return alpha_.at(a); }
  const std::vector<Element>& transitions() const noexcept { return alpha_; }

 private:
  FunctorSpec functor_;
  Carrier states_;
  std::vector<Element> alpha_;
};

inline Diagnostics validate(const Coalgebra& c) {
  Diagnostics diags;
  for (std::size_t a = 0; a < c.size(); ++a) {
    std::vector<std::string> errs;
    element_errors(c.functor(), c.alpha(a), c.size(), "alpha." + c.states().id(a), errs);
    for (auto& e : errs) {
      auto colon = e.find(": ");
      diags.error(e.substr(0, colon), e.substr(colon + 2));
    }
  }
  return diags;
}

inline void require_valid(const Coalgebra& c, const char* what) {
  auto diags = validate(c);
  if (!diags.ok()) {
    const auto& d = diags.items.front();
    throw StructureError(std::string(what) + ": " + d.path + ": " + d.message);
  }
}

struct Union {
  Coalgebra system;
  std::vector<std::size_t> left;   // injection of the first summand
  std::vector<std::size_t> right;  // injection of the second summand
};

/// Coproduct of two systems over the same functor. Ids are kept when the two
/// carriers are disjoint; otherwise every id gets a "#1" / "#2" suffix.
inline Union disjoint_union(const Coalgebra& c1, const Coalgebra& c2) {
  if (!(c1.functor() == c2.functor())) throw StructureError("disjoint_union: functors differ");
  bool clash = false;
  for (const auto& id : c2.states().ids())
    if (c1.states().index_of(id)) clash = true;

  std::vector<std::string> ids;
  ids.reserve(c1.size() + c2.size());
  for (const auto& id : c1.states().ids()) ids.push_back(clash ? id + "#1" : id);
  for (const auto& id : c2.states().ids()) ids.push_back(clash ? id + "#2" : id);

  Union u;
  u.left.resize(c1.size());
  std::iota(u.left.begin(), u.left.end(), std::size_t{0});
  u.right.resize(c2.size());
  std::iota(u.right.begin(), u.right.end(), c1.size());

  std::vector<Element> alpha;
  alpha.reserve(ids.size());
  for (const auto& t : c1.transitions()) alpha.push_back(apply_map(c1.functor(), u.left, t));
  for (const auto& t : c2.transitions()) alpha.push_back(apply_map(c2.functor(), u.right, t));
  u.system = Coalgebra(c1.functor(), Carrier(std::move(ids)), std::move(alpha));
  return u;
}

}  // namespace laxkit
