// Behavioural distance: the Kleene chain d_{n+1} = L d_n o (alpha x beta),
// certificate checking and certificate gaps.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "laxkit/coalgebra.hpp"
#include "laxkit/fuzzy_rel.hpp"
#include "laxkit/lifting.hpp"

namespace laxkit {

/// LR o (alpha x beta): entry (a, b) is LR(alpha(a), beta(b)). `jobs` > 1 splits rows over threads.
inline FuzzyRel lift_image(const Extension& ext, const Coalgebra& a, const Coalgebra& b, const FuzzyRel& r,
                           std::size_t jobs = 1) {
  if (!(r.source() == a.states()) || !(r.target() == b.states()))
    throw StructureError("relation carriers do not match the systems");
  std::vector<Scalar> values(a.size() * b.size());
  auto run = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t x = worker; x < a.size(); x += stride)
      for (std::size_t y = 0; y < b.size(); ++y) values[x * b.size() + y] = ext.lift(r, a.alpha(x), b.alpha(y));
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, a.size()));
  if (jobs == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(run, w, jobs);
  }
  return FuzzyRel(a.states(), b.states(), std::move(values));
}

inline void require_compatible(const Extension& ext, const Coalgebra& a, const Coalgebra& b) {
  if (!(a.functor() == ext.functor()) || !(b.functor() == ext.functor()))
    throw StructureError("systems and lifting are over different functors");
  require_valid(a, "first system");
  require_valid(b, "second system");
}

/// d_0, ..., d_n.
inline std::vector<FuzzyRel> fixpoint_chain(const Extension& ext, const Coalgebra& a, const Coalgebra& b,
                                            std::size_t n, std::size_t jobs = 1) {
  require_compatible(ext, a, b);
  std::vector<FuzzyRel> chain{FuzzyRel(a.states(), b.states(), Scalar::zero())};
  for (std::size_t k = 0; k < n; ++k) chain.push_back(lift_image(ext, a, b, chain.back(), jobs));
  return chain;
}

struct DistanceOptions {
  std::optional<Scalar> tol;  // stop once the residual is at most tol
  std::size_t max_iter = 100;
  bool trace = false;
  std::size_t jobs = 1;
};

struct DistanceResult {
  FuzzyRel matrix;
  std::size_t iterations = 0;   // number of applications of the lifting
  Scalar residual;              // sup-norm of the last step
  bool converged = false;
  bool exact = false;           // last step changed nothing
  std::optional<Scalar> error_bound;  // bound on d^L - matrix, when the lifting contracts
  std::vector<FuzzyRel> trace;  // d_0, d_1, ... when requested
};

/// Iterates from d_0 = 0. The matrix is always a lower bound of the least
/// fixpoint. With contraction factor k < 1 the distance to it is at most
/// residual * k / (1 - k); otherwise only the residual is known.
inline DistanceResult behavioural_distance(const Extension& ext, const Coalgebra& a, const Coalgebra& b,
                                           const DistanceOptions& opt = {}) {
  require_compatible(ext, a, b);
  DistanceResult res;
  FuzzyRel d(a.states(), b.states(), Scalar::zero());
  if (opt.trace) res.trace.push_back(d);
  while (res.iterations < opt.max_iter) {
    FuzzyRel next = lift_image(ext, a, b, d, opt.jobs);
    ++res.iterations;
    res.residual = sup_distance(next, d);
    d = std::move(next);
    if (opt.trace) res.trace.push_back(d);
    if (res.residual.is_zero()) {
      res.exact = true;
      res.converged = true;
      break;
    }
    if (opt.tol && res.residual <= *opt.tol) {
      res.converged = true;
      break;
    }
  }
  if (a.size() == 0 || b.size() == 0) {
    res.exact = true;
    res.converged = true;
  }
  const Rational& k = ext.contraction_factor();
  if (res.exact) {
    res.error_bound = Scalar::zero();
  } else if (k < 1) {
    res.error_bound = Scalar::clamp(res.residual.value() * k / (1 - k));
  }
  res.matrix = std::move(d);
  return res;
}

enum class CertificateKind { Simulation, Bisimulation };

struct Certificate {
  FuzzyRel relation;
  CertificateKind kind = CertificateKind::Simulation;
};

struct PairCheck {
  std::size_t a = 0;
  std::size_t b = 0;
  bool converse = false;  // checked as part of R^op being a simulation
  Scalar bound;           // R(a, b)
  Scalar lifted;          // LR(alpha(a), beta(b)), or L(R^op)(beta(b), alpha(a))
  Rational slack;         // bound - lifted
};

struct CertificateReport {
  bool ok = true;
  std::vector<PairCheck> pairs;
};

/// Checks LR o (alpha x beta) <= R on the pairs with R(a, b) < 1 (the others
/// hold trivially); a bisimulation also checks R^op against (beta, alpha).
inline CertificateReport check_certificate(const Extension& ext, const Coalgebra& a, const Coalgebra& b,
                                           const Certificate& cert) {
  require_compatible(ext, a, b);
  const FuzzyRel& r = cert.relation;
  if (!(r.source() == a.states()) || !(r.target() == b.states()))
    throw StructureError("certificate carriers do not match the systems");
  CertificateReport rep;
  auto record = [&](std::size_t x, std::size_t y, bool conv, Scalar lifted) {
    PairCheck p{x, y, conv, r(x, y), std::move(lifted), 0};
    p.slack = p.bound.value() - p.lifted.value();
    if (p.slack < 0) rep.ok = false;
    rep.pairs.push_back(std::move(p));
  };
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      if (!r(x, y).is_one()) record(x, y, false, ext.lift(r, a.alpha(x), b.alpha(y)));
  if (cert.kind == CertificateKind::Bisimulation) {
    const FuzzyRel rc = converse(r);
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y)
        if (!r(x, y).is_one()) record(x, y, true, ext.lift(rc, b.alpha(y), a.alpha(x)));
  }
  return rep;
}

struct CertificateGap {
  FuzzyRel gap;  // R - d, entrywise; non-negative for sound certificates
  Scalar sup;
  DistanceResult distance;
};

/// Entrywise R - d^L, using `opt` to compute d^L. Throws when an entry is
/// negative, since an accepted certificate always dominates the least fixpoint.
inline CertificateGap least_certificate_gap(const Extension& ext, const Coalgebra& a, const Coalgebra& b,
                                            const Certificate& cert, const DistanceOptions& opt = {}) {
  CertificateGap g;
  g.distance = behavioural_distance(ext, a, b, opt);
  const FuzzyRel& d = g.distance.matrix;
  const FuzzyRel& r = cert.relation;
  require_same_carriers(r, d, "certificate gap");
  std::vector<Scalar> values;
  for (std::size_t i = 0; i < r.values().size(); ++i) {
    if (r.values()[i] < d.values()[i]) {
      throw StructureError("certificate lies below the computed distance at (" +
                           r.source().id(i / r.cols()) + ", " + r.target().id(i % r.cols()) + ")");
    }
    values.push_back(ominus(r.values()[i], d.values()[i]));
    g.sup = std::max(g.sup, values.back());
  }
  g.gap = FuzzyRel(r.source(), r.target(), std::move(values));
  return g;
}

}  // namespace laxkit
