// Reproducible random instances for property checks.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "laxkit/coalgebra.hpp"
#include "laxkit/functor.hpp"
#include "laxkit/fuzzy_rel.hpp"

namespace laxkit {

/// Seed for trial `index` of a run seeded with `seed` (splitmix64 finaliser),
/// so trial outcomes do not depend on how trials are scheduled.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// mt19937_64 with library-independent helpers: std::uniform_int_distribution
/// is implementation-defined, so it is avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

  Scalar scalar() {
    static constexpr unsigned long dens[] = {2, 3, 4, 5, 6, 8, 10};
    const unsigned long den = dens[below(std::size(dens))];
    return Scalar(static_cast<long>(below(den + 1)), den);
  }

 private:
  std::mt19937_64 engine_;
};

inline Carrier random_carrier(Rng& rng, std::size_t min_size, std::size_t max_size, const std::string& prefix) {
  const std::size_t n = rng.between(min_size, max_size);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return Carrier(std::move(ids));
}

inline FuzzyRel random_relation(Rng& rng, const Carrier& a, const Carrier& b) {
  return FuzzyRel::tabulate(a, b, [&](std::size_t, std::size_t) {
    if (rng.chance(1, 8)) return Scalar::one();
    if (rng.chance(1, 8)) return Scalar::zero();
    return rng.scalar();
  });
}

inline Predicate random_predicate(Rng& rng, std::size_t n) {
  Predicate p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(rng.scalar());
  return p;
}

inline std::vector<std::size_t> random_map(Rng& rng, std::size_t from, std::size_t to) {
  std::vector<std::size_t> f(from);
  for (auto& x : f) x = rng.below(to);
  return f;
}

/// Least hemimetric below a random matrix (closure under the triangle inequality).
inline FuzzyRel random_hemimetric(Rng& rng, const Carrier& x, bool symmetric = false) {
  const std::size_t n = x.size();
  std::vector<Scalar> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = i == j ? Scalar::zero() : rng.scalar();
  if (symmetric)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) d[j * n + i] = d[i * n + j];
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], oplus(d[i * n + k], d[k * n + j]));
  return FuzzyRel(x, x, std::move(d));
}

/// A random well-typed element of F X with |X| = n >= 1. Sets have at most
/// `max_set` members before deduplication; distributions at most `max_support` points.
struct ElementShape {
  std::size_t max_set = 3;
  std::size_t max_support = 3;
};

inline Element random_element(Rng& rng, const FunctorSpec& f, std::size_t n, ElementShape shape = {}) {
  switch (f.kind()) {
    case FunctorKind::Id:
      return Element::state(rng.below(n));
    case FunctorKind::Const:
      return Element::label(rng.below(f.labels().size()));
    case FunctorKind::PFin: {
      std::vector<Element> items;
      const std::size_t k = rng.between(0, shape.max_set);
      for (std::size_t i = 0; i < k; ++i) items.push_back(random_element(rng, f.sub(), n, shape));
      return Element::set(std::move(items));
    }
    case FunctorKind::DFin: {
      const std::size_t k = rng.between(1, shape.max_support);
      std::vector<Element> items;
      for (std::size_t i = 0; i < k; ++i) items.push_back(random_element(rng, f.sub(), n, shape));
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      std::vector<long> raw;
      long total = 0;
      for (std::size_t i = 0; i < items.size(); ++i) {
        raw.push_back(static_cast<long>(rng.between(1, 6)));
        total += raw.back();
      }
      std::vector<std::pair<Element, Scalar>> entries;
      for (std::size_t i = 0; i < items.size(); ++i)
        entries.emplace_back(std::move(items[i]), Scalar(raw[i], static_cast<unsigned long>(total)));
      return Element::dist(std::move(entries));
    }
    case FunctorKind::Pair:
      return Element::pair(random_element(rng, f.left(), n, shape), random_element(rng, f.right(), n, shape));
    case FunctorKind::Maybe:
      if (rng.chance(1, 4)) return Element::nothing();
      return Element::just(random_element(rng, f.sub(), n, shape));
  }
  return Element::state(0);
}

inline Coalgebra random_coalgebra(Rng& rng, const FunctorSpec& f, std::size_t min_states, std::size_t max_states,
                                  const std::string& prefix = "s", ElementShape shape = {}) {
  Carrier states = random_carrier(rng, min_states, max_states, prefix);
  std::vector<Element> alpha;
  for (std::size_t i = 0; i < states.size(); ++i) alpha.push_back(random_element(rng, f, states.size(), shape));
  return Coalgebra(f, std::move(states), std::move(alpha));
}

}  // namespace laxkit
