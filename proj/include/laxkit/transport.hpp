// Exact transportation simplex over rationals.
//
// Northwest-corner start, potentials from the basis tree, Bland's rule for
// both the entering and the leaving cell. The basis always has m+n-1 cells,
// some of which may carry zero flow.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "laxkit/scalar.hpp"

namespace laxkit {

struct TransportPlan {
  Rational cost;
  std::vector<std::vector<Rational>> flow;  // m x n
  std::vector<Rational> u;                  // row potentials
  std::vector<Rational> v;                  // column potentials, u_i + v_j <= c_ij
};

namespace detail {

struct Cell {
  std::size_t i;
  std::size_t j;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Path in the basis tree from node `from` to node `to`; rows are 0..m-1, columns m..m+n-1.
// Returns the basic cells along the path in order.
inline std::vector<Cell> tree_path(const std::vector<Cell>& basis, std::size_t m, std::size_t n, std::size_t from,
                                   std::size_t to) {
  const std::size_t nodes = m + n;
  std::vector<std::vector<std::size_t>> adj(nodes);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    adj[basis[k].i].push_back(k);
    adj[m + basis[k].j].push_back(k);
  }
  std::vector<std::optional<std::size_t>> via(nodes);
  std::vector<bool> seen(nodes, false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    if (x == to) break;
    for (std::size_t k : adj[x]) {
      std::size_t y = x < m ? m + basis[k].j : basis[k].i;
      if (!seen[y]) {
        seen[y] = true;
        via[y] = k;
        stack.push_back(y);
      }
    }
  }
  if (!seen[to]) throw std::logic_error("transport: basis is not a spanning tree");
  std::vector<Cell> path;
  for (std::size_t x = to; x != from;) {
    const Cell& c = basis[*via[x]];
    path.push_back(c);
    x = x < m ? m + c.j : c.i;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Minimises sum c_ij x_ij subject to row sums `supply` and column sums `demand`.
/// Both sides must be non-empty and have equal, positive total.
inline TransportPlan solve_transport(std::span<const Rational> supply, std::span<const Rational> demand,
                                     const std::vector<std::vector<Rational>>& cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  if (m == 0 || n == 0) throw StructureError("transport: empty marginal");
  if (cost.size() != m) throw StructureError("transport: cost matrix has wrong row count");
  for (const auto& row : cost)
    if (row.size() != n) throw StructureError("transport: cost matrix has wrong column count");
  Rational total_s = 0, total_d = 0;
  for (const auto& s : supply) total_s += s;
  for (const auto& d : demand) total_d += d;
  if (total_s != total_d) throw StructureError("transport: marginals have different mass");

  std::vector<std::vector<Rational>> x(m, std::vector<Rational>(n, 0));
  std::vector<std::vector<bool>> is_basic(m, std::vector<bool>(n, false));
  std::vector<detail::Cell> basis;

  {
    std::vector<Rational> s(supply.begin(), supply.end());
    std::vector<Rational> d(demand.begin(), demand.end());
    std::size_t i = 0, j = 0;
    for (;;) {
      Rational q = std::min(s[i], d[j]);
      x[i][j] = q;
      is_basic[i][j] = true;
      basis.push_back({i, j});
      s[i] -= q;
      d[j] -= q;
      if (i == m - 1 && j == n - 1) break;
      if (s[i] == 0 && i < m - 1) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  std::vector<Rational> u(m), v(n);
  for (;;) {
    // Potentials: u_i + v_j = c_ij on the basis, u_0 = 0.
    std::vector<bool> u_set(m, false), v_set(n, false);
    u[0] = 0;
    u_set[0] = true;
    for (bool progress = true; progress;) {
      progress = false;
      for (const auto& c : basis) {
        if (u_set[c.i] && !v_set[c.j]) {
          v[c.j] = cost[c.i][c.j] - u[c.i];
          v_set[c.j] = true;
          progress = true;
        } else if (!u_set[c.i] && v_set[c.j]) {
          u[c.i] = cost[c.i][c.j] - v[c.j];
          u_set[c.i] = true;
          progress = true;
        }
      }
    }

    std::optional<detail::Cell> entering;
    for (std::size_t i = 0; i < m && !entering; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_basic[i][j] && cost[i][j] - u[i] - v[j] < 0) {
          entering = detail::Cell{i, j};
          break;
        }
    if (!entering) break;

    // Cycle: entering cell (+), then the tree path from its column back to its row, alternating - and +.
    auto path = detail::tree_path(basis, m, n, m + entering->j, entering->i);
    std::optional<std::size_t> leave_pos;
    for (std::size_t k = 0; k < path.size(); k += 2) {
      const auto& c = path[k];
      if (!leave_pos) {
        leave_pos = k;
        continue;
      }
      const auto& best = path[*leave_pos];
      const Rational& a = x[c.i][c.j];
      const Rational& b = x[best.i][best.j];
      if (a < b || (a == b && (c.i < best.i || (c.i == best.i && c.j < best.j)))) leave_pos = k;
    }
    const detail::Cell leaving = path[*leave_pos];
    const Rational theta = x[leaving.i][leaving.j];
    x[entering->i][entering->j] += theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto& c = path[k];
      if (k % 2 == 0) {
        x[c.i][c.j] -= theta;
      } else {
        x[c.i][c.j] += theta;
      }
    }
    is_basic[leaving.i][leaving.j] = false;
    is_basic[entering->i][entering->j] = true;
    std::replace(basis.begin(), basis.end(), leaving, *entering);
  }

  TransportPlan plan;
  plan.cost = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) plan.cost += cost[i][j] * x[i][j];
  plan.flow = std::move(x);
  plan.u = std::move(u);
  plan.v = std::move(v);
  return plan;
}

/// An optimal dual pair (f, g) with values in [0,1] and f(i) - g(j) <= c_ij,
/// assuming every cost lies in [0,1]. E_supply f - E_demand g equals the optimum.
struct DualWitness {
  std::vector<Rational> f;
  std::vector<Rational> g;
};

inline DualWitness dual_witness(const TransportPlan& plan, const std::vector<std::vector<Rational>>& cost) {
  const std::size_t m = plan.u.size();
  const std::size_t n = plan.v.size();
  DualWitness w;
  w.f = plan.u;
  Rational top = *std::max_element(w.f.begin(), w.f.end());
  for (auto& x : w.f) x += 1 - top;
  w.g.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational best = w.f[0] - cost[0][j];
    for (std::size_t i = 1; i < m; ++i) best = std::max(best, Rational(w.f[i] - cost[i][j]));
    w.g[j] = best;
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational best = 1;
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, Rational(w.g[j] + cost[i][j]));
    w.f[i] = best;
  }
  return w;
}

}  // namespace laxkit
