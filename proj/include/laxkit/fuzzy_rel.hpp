// Fuzzy relations R: A x B -> [0,1] and their algebra.
//
// Convention: 0 means "fully related", 1 means "unrelated". Composition is
// (R;S)(a,c) = min_b R(a,b) (+) S(b,c) with the truncated sum, so the
// diagonal (0 on the diagonal, 1 elsewhere) is its unit. Empty infima are 1
// and empty suprema are 0.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/carrier.hpp"
#include "laxkit/scalar.hpp"

namespace laxkit {

/// A [0,1]-valued table over a carrier, i.e. a fuzzy predicate.
using Predicate = std::vector<Scalar>;

class FuzzyRel {
 public:
  FuzzyRel() = default;

  FuzzyRel(Carrier source, Carrier target, Scalar fill = Scalar::one())
      : source_(std::move(source)), target_(std::move(target)),
        values_(source_.size() * target_.size(), fill) {}

  FuzzyRel(Carrier source, Carrier target, std::vector<Scalar> values)
      : source_(std::move(source)), target_(std::move(target)), values_(std::move(values)) {
    if (values_.size() != source_.size() * target_.size()) {
      throw StructureError("relation has " + std::to_string(values_.size()) + " entries, expected " +
                           std::to_string(source_.size()) + "x" + std::to_string(target_.size()));
    }
  }

  template <class Fn>
  static FuzzyRel tabulate(Carrier source, Carrier target, Fn&& fn) {
    std::vector<Scalar> values;
    values.reserve(source.size() * target.size());
    for (std::size_t a = 0; a < source.size(); ++a)
      for (std::size_t b = 0; b < target.size(); ++b) values.push_back(fn(a, b));
    return FuzzyRel(std::move(source), std::move(target), std::move(values));
  }

  const Carrier& source() const noexcept { return source_; }
  const Carrier& target() const noexcept { return target_; }
  std::size_t rows() const noexcept { return source_.size(); }
  std::size_t cols() const noexcept { return target_.size(); }
  const std::vector<Scalar>& values() const noexcept { return values_; }

  const Scalar& operator()(std::size_t a, std::size_t b) const { return values_[a * cols() + b]; }

  /// Copy with one entry replaced.
  FuzzyRel with(std::size_t a, std::size_t b, Scalar v) const {
    FuzzyRel copy = *this;
    copy.values_.at(a * cols() + b) = std::move(v);
    return copy;
  }

  friend bool operator==(const FuzzyRel&, const FuzzyRel&) = default;

 private:
  Carrier source_;
  Carrier target_;
  std::vector<Scalar> values_;
};

inline void require_same_carriers(const FuzzyRel& r, const FuzzyRel& s, const char* what) {
  if (!(r.source() == s.source()) || !(r.target() == s.target())) {
    throw StructureError(std::string(what) + ": carrier mismatch");
  }
}

/// Entrywise R <= S.
inline bool leq(const FuzzyRel& r, const FuzzyRel& s) {
  require_same_carriers(r, s, "leq");
  for (std::size_t i = 0; i < r.values().size(); ++i)
    if (r.values()[i] > s.values()[i]) return false;
  return true;
}

inline FuzzyRel compose(const FuzzyRel& r, const FuzzyRel& s) {
  if (!(r.target() == s.source())) throw StructureError("compose: middle carriers differ");
  const std::size_t middle = r.cols();
  return FuzzyRel::tabulate(r.source(), s.target(), [&](std::size_t a, std::size_t c) {
    Scalar best = Scalar::one();
    for (std::size_t b = 0; b < middle; ++b) best = std::min(best, oplus(r(a, b), s(b, c)));
    return best;
  });
}

inline FuzzyRel converse(const FuzzyRel& r) {
  return FuzzyRel::tabulate(r.target(), r.source(), [&](std::size_t b, std::size_t a) { return r(a, b); });
}

/// The eps-graph of f: A -> B, given as an index table.
inline FuzzyRel graph(const Carrier& a, const Carrier& b, std::span<const std::size_t> f,
                      const Scalar& eps = Scalar::zero()) {
  if (f.size() != a.size()) throw StructureError("graph: map is not total on its domain");
  for (std::size_t x : f)
    if (x >= b.size()) throw StructureError("graph: map leaves its codomain");
  return FuzzyRel::tabulate(a, b, [&](std::size_t x, std::size_t y) { return f[x] == y ? eps : Scalar::one(); });
}

/// The eps-diagonal of a carrier.
inline FuzzyRel diagonal(const Carrier& a, const Scalar& eps = Scalar::zero()) {
  return FuzzyRel::tabulate(a, a, [&](std::size_t x, std::size_t y) { return x == y ? eps : Scalar::one(); });
}

/// R o (f x g), i.e. (x, y) |-> R(f(x), g(y)).
inline FuzzyRel reindex(const FuzzyRel& r, const Carrier& a, std::span<const std::size_t> f, const Carrier& b,
                        std::span<const std::size_t> g) {
  if (f.size() != a.size() || g.size() != b.size()) throw StructureError("reindex: maps not total");
  for (std::size_t x : f)
    if (x >= r.rows()) throw StructureError("reindex: left map leaves the relation's source");
  for (std::size_t y : g)
    if (y >= r.cols()) throw StructureError("reindex: right map leaves the relation's target");
  return FuzzyRel::tabulate(a, b, [&](std::size_t x, std::size_t y) { return r(f[x], g[y]); });
}

inline void require_square(const FuzzyRel& d, const char* what) {
  if (!(d.source() == d.target())) throw StructureError(std::string(what) + ": relation is not an endorelation");
}

/// Reflexivity (d <= diagonal) plus the triangle inequality (d <= d;d).
inline bool is_hemimetric(const FuzzyRel& d) {
  require_square(d, "is_hemimetric");
  return leq(d, diagonal(d.source())) && leq(d, compose(d, d));
}

inline bool is_pseudometric(const FuzzyRel& d) { return is_hemimetric(d) && converse(d) == d; }

/// R[f](b) = sup_a f(a) (-) R(a,b): the least g making (f, g) R-nonexpansive.
inline Predicate companion(const FuzzyRel& r, std::span<const Scalar> f) {
  if (f.size() != r.rows()) throw StructureError("companion: predicate does not match the relation's source");
  Predicate g(r.cols(), Scalar::zero());
  for (std::size_t b = 0; b < r.cols(); ++b)
    for (std::size_t a = 0; a < r.rows(); ++a) g[b] = std::max(g[b], ominus(f[a], r(a, b)));
  return g;
}

/// f(a) - g(b) <= R(a,b) for all a, b.
inline bool is_nonexpansive_pair(const FuzzyRel& r, std::span<const Scalar> f, std::span<const Scalar> g) {
  if (f.size() != r.rows() || g.size() != r.cols()) throw StructureError("nonexpansive pair: size mismatch");
  for (std::size_t a = 0; a < r.rows(); ++a)
    for (std::size_t b = 0; b < r.cols(); ++b)
      if (ominus(f[a], g[b]) > r(a, b)) return false;
  return true;
}

/// A pair (f, g) checked against R at construction.
class NonexpansivePair {
 public:
  NonexpansivePair(const FuzzyRel& r, Predicate f, Predicate g) : f_(std::move(f)), g_(std::move(g)) {
    if (!is_nonexpansive_pair(r, f_, g_)) throw StructureError("pair is not nonexpansive for the relation");
  }

  const Predicate& f() const noexcept { return f_; }
  const Predicate& g() const noexcept { return g_; }

 private:
  Predicate f_;
  Predicate g_;
};

inline Scalar sup_distance(std::span<const Scalar> f, std::span<const Scalar> g) {
  if (f.size() != g.size()) throw StructureError("sup_distance: size mismatch");
  Scalar best;
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, abs_diff(f[i], g[i]));
  return best;
}

inline Scalar sup_distance(const FuzzyRel& r, const FuzzyRel& s) {
  require_same_carriers(r, s, "sup_distance");
  return sup_distance(r.values(), s.values());
}

}  // namespace laxkit
