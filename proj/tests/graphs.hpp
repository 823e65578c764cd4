#pragma once

// Graph generators and brute-force graph facts for the tests.

#include <algorithm>
#include <random>
#include <vector>

#include "polyq/unimodularity.hpp"

namespace graphs {

using polyq::Digraph;
using polyq::Graph;
using polyq::Index;
using polyq::RatVector;

/// Complete bipartite graph with sides {0..a-1} and {a..a+b-1}; edges in
/// lexicographic order.
inline Graph complete_bipartite(Index a, Index b) {
  Graph g{a + b, {}};
  for (Index u = 0; u < a; ++u)
    for (Index v = 0; v < b; ++v) g.edges.push_back({u, a + v});
  return g;
}

inline Graph path(Index nodes) {
  Graph g{nodes, {}};
  for (Index v = 0; v + 1 < nodes; ++v) g.edges.push_back({v, v + 1});
  return g;
}

inline Graph cycle(Index nodes) {
  Graph g = path(nodes);
  g.edges.push_back({0, nodes - 1});
  return g;
}

/// Every simple graph on `nodes` nodes, one per subset of the node pairs.
inline std::vector<Graph> all_graphs(Index nodes) {
  std::vector<std::pair<Index, Index>> pairs;
  for (Index u = 0; u < nodes; ++u)
    for (Index v = u + 1; v < nodes; ++v) pairs.push_back({u, v});
  std::vector<Graph> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    Graph g{nodes, {}};
    for (Index k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1) g.edges.push_back(pairs[k]);
    out.push_back(std::move(g));
  }
  return out;
}

/// Characteristic vectors of all matchings (edge sets with pairwise disjoint
/// ends), sorted.
inline std::vector<RatVector> matching_vectors(const Graph& g) {
  const Index e = g.edges.size();
  std::vector<RatVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << e); ++mask) {
    std::vector<int> degree(g.nodes, 0);
    bool ok = true;
    RatVector x = polyq::zeros(e);
    for (Index k = 0; k < e && ok; ++k) {
      if (!((mask >> k) & 1)) continue;
      x[k] = 1;
      ok = ++degree[g.edges[k].first] == 1 && ++degree[g.edges[k].second] == 1;
    }
    if (ok) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Odd cycle exists iff some 2-colouring of the nodes fails on an edge for
/// every colouring; brute force over all colourings.
inline bool bipartite_by_colourings(const Graph& g) {
  for (std::size_t mask = 0; mask < (std::size_t{1} << g.nodes); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges) ok = ok && (((mask >> u) & 1) != ((mask >> v) & 1));
    if (ok) return true;
  }
  return false;
}

struct TreeInstance {
  Digraph d;
  std::vector<Index> tree;
};

/// Random spanning tree with random arc orientations on `nodes` nodes plus
/// `extra` random non-loop arcs; tree arcs are shuffled into the arc list.
inline TreeInstance random_tree_instance(std::mt19937& rng, Index nodes, Index extra) {
  TreeInstance t;
  t.d.nodes = nodes;
  std::vector<std::pair<Index, Index>> tree_arcs;
  for (Index v = 1; v < nodes; ++v) {
    Index u = std::uniform_int_distribution<Index>(0, v - 1)(rng);
    tree_arcs.push_back(rng() % 2 ? std::make_pair(u, v) : std::make_pair(v, u));
  }
  std::vector<std::pair<Index, Index>> arcs = tree_arcs;
  for (Index k = 0; k < extra; ++k) {
    Index u = rng() % nodes, v = rng() % nodes;
    if (u == v) v = (v + 1) % nodes;
    arcs.push_back({u, v});
  }
  std::vector<Index> order(arcs.size());
  for (Index i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  t.d.arcs.resize(arcs.size());
  std::vector<Index> position(arcs.size());
  for (Index i = 0; i < order.size(); ++i) {
    t.d.arcs[i] = arcs[order[i]];
    position[order[i]] = i;
  }
  for (Index k = 0; k < tree_arcs.size(); ++k) t.tree.push_back(position[k]);
  return t;
}

}  // namespace graphs
