#include <catch_amalgamated.hpp>

#include "laxkit/laxkit.hpp"
#include "oracles.hpp"

using namespace laxkit;

namespace {

std::vector<Rational> masses(Rng& rng, std::size_t n) {
  std::vector<Rational> w(n);
  Rational total = 0;
  for (auto& x : w) {
    x = static_cast<long>(rng.between(1, 6));
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

TEST_CASE("single coupling", "[transport]") {
  const std::vector<Rational> supply{Rational(1, 2), Rational(1, 2)}, demand{Rational(1)};
  const std::vector<std::vector<Rational>> cost{{Rational(1, 5)}, {Rational(3, 5)}};
  const TransportPlan p = solve_transport(supply, demand, cost);
  CHECK(p.cost == Rational(2, 5));
  CHECK(p.flow[0][0] == Rational(1, 2));
}

TEST_CASE("simplex matches vertex enumeration", "[transport]") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng.between(1, 4), n = rng.between(1, 4);
    const auto supply = masses(rng, m), demand = masses(rng, n);
    std::vector<std::vector<Rational>> cost(m, std::vector<Rational>(n));
    for (auto& row : cost)
      for (auto& c : row) c = rng.scalar().value();
    const TransportPlan p = solve_transport(supply, demand, cost);
    CHECK(p.cost == oracle::transport_vertices(supply, demand, cost));

    // Plan is feasible and its cost is what it claims.
    Rational total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(p.flow[i][j] >= 0);
        row += p.flow[i][j];
        total += p.flow[i][j] * cost[i][j];
      }
      CHECK(row == supply[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      Rational col = 0;
      for (std::size_t i = 0; i < m; ++i) col += p.flow[i][j];
      CHECK(col == demand[j]);
    }
    CHECK(total == p.cost);

    // Potentials are dual feasible and tight, and the normalised witness stays in [0,1].
    Rational dual = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(p.u[i] + p.v[j] <= cost[i][j]);
    for (std::size_t i = 0; i < m; ++i) dual += supply[i] * p.u[i];
    for (std::size_t j = 0; j < n; ++j) dual += demand[j] * p.v[j];
    CHECK(dual == p.cost);
    const DualWitness w = dual_witness(p, cost);
    Rational value = 0;
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(w.f[i] >= 0);
      CHECK(w.f[i] <= 1);
      value += supply[i] * w.f[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(w.g[j] >= 0);
      CHECK(w.g[j] <= 1);
      value -= demand[j] * w.g[j];
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(w.f[i] - w.g[j] <= cost[i][j]);
    CHECK(value == p.cost);
  }
}

TEST_CASE("unbalanced problems are rejected", "[transport]") {
  const std::vector<Rational> supply{Rational(1)}, demand{Rational(1, 2)};
  const std::vector<std::vector<Rational>> cost{{Rational(0)}};
  CHECK_THROWS(solve_transport(supply, demand, cost));
}
