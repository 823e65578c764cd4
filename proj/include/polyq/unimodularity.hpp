#pragma once

// Total unimodularity (two independent exhaustive tests), incidence and
// network matrices of graphs, and the polyhedra they make integral.

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polyq/model.hpp"

namespace polyq {

/// Directed graph on nodes 0..nodes-1. Arc order fixes the column order of
/// the incidence matrix; parallel arcs are allowed, loops are not.
struct Digraph {
  Index nodes = 0;
  std::vector<std::pair<Index, Index>> arcs;

  void validate() const {
    for (const auto& [u, v] : arcs) {
      if (u >= nodes || v >= nodes) throw DimensionError("digraph: arc endpoint out of range");
      if (u == v) throw PreconditionError("digraph: self-loop at node " + std::to_string(u + 1));
    }
  }
};

/// Undirected simple graph on nodes 0..nodes-1; edge order fixes the column
/// order of the incidence matrix.
struct Graph {
  Index nodes = 0;
  std::vector<std::pair<Index, Index>> edges;

  void validate() const {
    std::set<std::pair<Index, Index>> seen;
    for (const auto& [u, v] : edges) {
      if (u >= nodes || v >= nodes) throw DimensionError("graph: edge endpoint out of range");
      if (u == v) throw PreconditionError("graph: self-loop at node " + std::to_string(u + 1));
      if (!seen.insert(std::minmax(u, v)).second)
        throw PreconditionError("graph: parallel edge {" + std::to_string(u + 1) + ", " + std::to_string(v + 1) + "}");
    }
  }
};

struct Submatrix {
  std::vector<Index> rows;
  std::vector<Index> cols;
  Rational det;

  friend bool operator==(const Submatrix&, const Submatrix&) = default;
};

struct TUVerdict {
  bool is_tu = true;
  /// Determinant test: the first square submatrix whose determinant is not
  /// in {-1, 0, 1} (a 1x1 one for a bad entry).
  std::optional<Submatrix> violating_submatrix;
  /// Ghouila-Houri test: a subset of rows (or columns) with no signing whose
  /// sum lies in {-1, 0, 1}^k.
  std::optional<std::vector<Index>> unsignable_subset;
  bool subset_is_columns = false;
};

namespace detail {

inline bool unit_entry(const Rational& x) { return x == 0 || x == 1 || x == -1; }

}  // namespace detail

/// Checks every square submatrix, ordered by size, then row set, then column
/// set; reports the first whose determinant is outside {-1, 0, 1}.
inline TUVerdict is_tu_determinant(const RatMatrix& a, const Limits& limits = {}) {
  TUVerdict out;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!detail::unit_entry(a(i, j))) {
        out.is_tu = false;
        out.violating_submatrix = Submatrix{{i}, {j}, a(i, j)};
        return out;
      }
    }
  }
  const Index top = std::min(a.rows(), a.cols());
  Integer count = 0;
  for (Index k = 2; k <= top; ++k) count += binomial(a.rows(), k) * binomial(a.cols(), k);
  if (count > Integer(static_cast<unsigned long>(limits.max_subsets)))
    throw ResourceError("is_tu_determinant: " + count.get_str() + " submatrices exceed the cap");
  for (Index k = 2; k <= top && out.is_tu; ++k) {
    for_each_subset(a.rows(), k, [&](std::span<const Index> rs) {
      return for_each_subset(a.cols(), k, [&](std::span<const Index> cs) {
        Rational d = determinant(a.submatrix(rs, cs));
        if (detail::unit_entry(d)) return true;
        out.is_tu = false;
        out.violating_submatrix = Submatrix{{rs.begin(), rs.end()}, {cs.begin(), cs.end()}, d};
        return false;
      });
    });
  }
  return out;
}

/// A is TU iff every subset I of rows splits into I+ and I- with
/// sum_{I+} A_i - sum_{I-} A_i in {-1, 0, 1}^n. Runs on the columns instead
/// when there are fewer of them; subsets are ordered by size, then
/// lexicographically.
inline TUVerdict is_tu_ghouila_houri(const RatMatrix& a, const Limits& limits = {}) {
  const bool by_columns = a.cols() < a.rows();
  const RatMatrix m = by_columns ? a.transpose() : a;
  const Index k = m.rows();
  // sum over subset sizes s of C(k, s) 2^(s-1) signings
  Integer signings;
  mpz_ui_pow_ui(signings.get_mpz_t(), 3, k);
  signings = (signings - 1) / 2;
  if (signings > Integer(static_cast<unsigned long>(limits.max_subsets)))
    throw ResourceError("is_tu_ghouila_houri: " + signings.get_str() + " signings exceed the cap");
  TUVerdict out;
  out.subset_is_columns = by_columns;
  for (Index size = 1; size <= k && out.is_tu; ++size) {
    for_each_subset(k, size, [&](std::span<const Index> subset) {
      // The first line keeps sign +; flipping all signs gives the same test.
      for (std::size_t signs = 0; signs < (std::size_t{1} << (size - 1)); ++signs) {
        bool ok = true;
        for (Index j = 0; j < m.cols() && ok; ++j) {
          Rational s = m(subset[0], j);
          for (Index t = 1; t < size; ++t) {
            if ((signs >> (t - 1)) & 1) {
              s -= m(subset[t], j);
            } else {
              s += m(subset[t], j);
            }
          }
          ok = detail::unit_entry(s);
        }
        if (ok) return true;
      }
      out.is_tu = false;
      out.unsignable_subset = std::vector<Index>(subset.begin(), subset.end());
      return false;
    });
  }
  return out;
}

/// Rows are nodes, columns arcs: -1 at the tail, +1 at the head.
inline RatMatrix node_arc_incidence(const Digraph& d) {
  d.validate();
  RatMatrix m(d.nodes, d.arcs.size());
  for (Index j = 0; j < d.arcs.size(); ++j) {
    m(d.arcs[j].first, j) = -1;
    m(d.arcs[j].second, j) = 1;
  }
  return m;
}

/// Rows are nodes, columns edges: 1 at both ends.
inline RatMatrix node_edge_incidence(const Graph& g) {
  g.validate();
  RatMatrix m(g.nodes, g.edges.size());
  for (Index j = 0; j < g.edges.size(); ++j) {
    m(g.edges[j].first, j) = 1;
    m(g.edges[j].second, j) = 1;
  }
  return m;
}

struct BipartiteResult {
  bool bipartite = true;
  std::vector<Index> side_s;
  std::vector<Index> side_t;
  /// Nodes of an odd cycle in cyclic order, starting at its smallest node.
  std::vector<Index> odd_cycle;
};

/// Breadth-first 2-colouring; each component's smallest node goes to S.
inline BipartiteResult is_bipartite(const Graph& g) {
  g.validate();
  std::vector<std::vector<Index>> adj(g.nodes);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  std::vector<int> colour(g.nodes, -1);
  std::vector<Index> parent(g.nodes), depth(g.nodes, 0);
  BipartiteResult out;
  for (Index root = 0; root < g.nodes; ++root) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    parent[root] = root;
    std::deque<Index> queue{root};
    while (!queue.empty()) {
      Index u = queue.front();
      queue.pop_front();
      for (Index v : adj[u]) {
        if (colour[v] < 0) {
          colour[v] = 1 - colour[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        } else if (colour[v] == colour[u]) {
          std::vector<Index> up{u}, down{v};
          Index x = u, y = v;
          while (x != y) {
            if (depth[x] >= depth[y]) {
              x = parent[x];
              up.push_back(x);
            } else {
              y = parent[y];
              down.push_back(y);
            }
          }
          down.pop_back();
          std::vector<Index> cycle = up;
          cycle.insert(cycle.end(), down.rbegin(), down.rend());
          std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
          if (cycle.size() > 2 && cycle[1] > cycle.back()) std::reverse(cycle.begin() + 1, cycle.end());
          out.bipartite = false;
          out.odd_cycle = std::move(cycle);
          return out;
        }
      }
    }
  }
  for (Index v = 0; v < g.nodes; ++v) (colour[v] == 0 ? out.side_s : out.side_t).push_back(v);
  return out;
}

/// Rows are the tree arcs (in the given order), columns all arcs of d: entry
/// +1 / -1 when the tree path from the tail to the head of the column arc
/// uses the row arc forward / backward.
inline RatMatrix network_matrix(const Digraph& d, const std::vector<Index>& tree_arcs) {
  d.validate();
  if (tree_arcs.size() + 1 != d.nodes)
    throw PreconditionError("network_matrix: a spanning tree needs exactly |V| - 1 arcs");
  // adjacency: (neighbour, tree row, +1 when walking the arc forward)
  std::vector<std::vector<std::tuple<Index, Index, int>>> adj(d.nodes);
  std::set<Index> used;
  for (Index r = 0; r < tree_arcs.size(); ++r) {
    Index id = tree_arcs[r];
    if (id >= d.arcs.size()) throw DimensionError("network_matrix: tree arc index out of range");
    if (!used.insert(id).second) throw PreconditionError("network_matrix: repeated tree arc");
    auto [u, v] = d.arcs[id];
    adj[u].emplace_back(v, r, 1);
    adj[v].emplace_back(u, r, -1);
  }
  // Root the tree at node 0; a cycle or a second component shows up as an
  // unreached node since the arc count is already |V| - 1.
  std::vector<Index> parent(d.nodes, d.nodes), via(d.nodes), depth(d.nodes, 0);
  std::vector<int> dir(d.nodes, 0);
  std::vector<bool> seen(d.nodes, false);
  if (d.nodes > 0) {
    seen[0] = true;
    std::deque<Index> queue{0};
    while (!queue.empty()) {
      Index u = queue.front();
      queue.pop_front();
      for (const auto& [v, r, s] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        parent[v] = u;
        via[v] = r;
        dir[v] = s;  // walking u -> v
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("network_matrix: the tree arcs do not form a spanning tree");
  RatMatrix n(tree_arcs.size(), d.arcs.size());
  for (Index j = 0; j < d.arcs.size(); ++j) {
    Index x = d.arcs[j].first, y = d.arcs[j].second;
    while (x != y) {
      if (depth[x] >= depth[y]) {
        // walking x -> parent(x) reverses the recorded direction
        n(via[x], j) += -dir[x];
        x = parent[x];
      } else {
        n(via[y], j) += dir[y];
        y = parent[y];
      }
    }
  }
  return n;
}

/// {x in R^E : sum_{e ∋ v} x_e <= 1 for every node v, x >= 0}: degree rows in
/// node order, then nonnegativity in edge order.
inline HRep matching_polytope_bipartite(const Graph& g) {
  BipartiteResult b = is_bipartite(g);
  if (!b.bipartite) throw PreconditionError("matching_polytope_bipartite: the graph has an odd cycle");
  RatMatrix inc = node_edge_incidence(g);
  const Index e = g.edges.size();
  HRep h(e);
  for (Index v = 0; v < g.nodes; ++v) h.inequalities.push_back({inc.row_vector(v), Rational(1)});
  for (Index j = 0; j < e; ++j) h.inequalities.push_back({scaled(unit_vector(e, j), -1), Rational(0)});
  return h;
}

/// {x in R^A : inc(D) x = 0, lower <= x <= upper}: upper rows, then lower
/// rows, in arc order; one conservation equation per node.
inline HRep circulation_polytope(const Digraph& d, const RatVector& lower, const RatVector& upper) {
  RatMatrix inc = node_arc_incidence(d);
  const Index m = d.arcs.size();
  if (lower.size() != m || upper.size() != m) throw DimensionError("circulation_polytope: bound length mismatch");
  for (Index j = 0; j < m; ++j) {
    if (!is_integer(lower[j]) || !is_integer(upper[j]))
      throw PreconditionError("circulation_polytope: bounds must be integral");
    if (lower[j] > upper[j])
      throw PreconditionError("circulation_polytope: lower bound exceeds upper bound on arc " + std::to_string(j + 1));
  }
  HRep h(m);
  for (Index j = 0; j < m; ++j) h.inequalities.push_back({unit_vector(m, j), upper[j]});
  for (Index j = 0; j < m; ++j) h.inequalities.push_back({scaled(unit_vector(m, j), -1), Rational(-lower[j])});
  for (Index v = 0; v < d.nodes; ++v) h.equations.push_back({inc.row_vector(v), Rational(0)});
  return h;
}

}  // namespace polyq
