#pragma once

// The rolling scheme (odd edges only), its components, and the breadth-first
// unfolding of a component's universal cover.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "coxroll/error.hpp"
#include "coxroll/reduction.hpp"
#include "coxroll/roots.hpp"
#include "coxroll/scheme.hpp"

namespace coxroll {

/// Scheme graph split by label parity. A chamber rolls over a hyperedge only
/// when its label is odd.
struct RollingScheme {
  SchemeGraph base;
  std::vector<SchemeEdge> kept;     // odd finite labels
  std::vector<SchemeEdge> removed;  // even or infinite labels

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(base.node_count));
    for (const auto& e : kept) {
      adj[e.i].push_back(e.j);
      adj[e.j].push_back(e.i);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }
};

inline RollingScheme rolling_scheme(const CoxeterMatrix& m) {
  RollingScheme rs{scheme_graph(m), {}, {}};
  for (const auto& e : rs.base.edges) (is_odd_label(e.label) ? rs.kept : rs.removed).push_back(e);
  return rs;
}

struct Component {
  std::vector<int> facets;        // sorted
  std::vector<SchemeEdge> edges;  // induced kept edges
  int cycle_rank = 0;             // E - V + 1

  bool contains(int facet) const { return std::binary_search(facets.begin(), facets.end(), facet); }

  std::vector<int> neighbours(int facet) const {
    std::vector<int> out;
    for (const auto& e : edges) {
      if (e.i == facet) out.push_back(e.j);
      if (e.j == facet) out.push_back(e.i);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int label(int a, int b) const {
    for (const auto& e : edges)
      if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return e.label;
    throw DomainError("facets are not adjacent in the component");
  }
};

/// Components in order of their smallest facet.
inline std::vector<Component> components(const RollingScheme& rs) {
  const int n = rs.base.node_count;
  auto adj = rs.adjacency();
  std::vector<int> seen(static_cast<size_t>(n), 0);
  std::vector<Component> out;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    Component c;
    c.facets = {s};
    seen[s] = 1;
    for (size_t k = 0; k < c.facets.size(); ++k)
      for (int v : adj[c.facets[k]])
        if (!seen[v]) {
          seen[v] = 1;
          c.facets.push_back(v);
        }
    std::sort(c.facets.begin(), c.facets.end());
    for (const auto& e : rs.kept)
      if (c.contains(e.i)) c.edges.push_back(e);
    c.cycle_rank = static_cast<int>(c.edges.size()) - static_cast<int>(c.facets.size()) + 1;
    out.push_back(std::move(c));
  }
  return out;
}

inline const Component& component_of(const std::vector<Component>& comps, int facet) {
  for (const auto& c : comps)
    if (c.contains(facet)) return c;
  throw DomainError("facet not in any component");
}

struct TreeNode {
  int id = 0;
  int facet = 0;
  int parent = -1;
  int depth = 0;
  std::vector<int> word;  // facets from the root, no immediate backtracking
};

struct TreeEdge {
  int from = 0;
  int to = 0;
  int a = 0;  // facet of `from`
  int b = 0;  // facet of `to`
  int label = 0;
};

struct DevelopmentTree {
  std::vector<TreeNode> nodes;  // breadth-first; nodes[0] is the root
  std::vector<TreeEdge> edges;  // edges[i] leads to nodes[i + 1]
  bool complete = false;

  std::vector<int> children(int id) const {
    std::vector<int> out;
    for (const auto& e : edges)
      if (e.from == id) out.push_back(e.to);
    return out;
  }
};

/// Breadth-first prefix of the universal cover of `c` rooted at `start`. A
/// tree component covers itself and is returned whole regardless of the cap.
inline DevelopmentTree unfold(const Component& c, int start, int max_nodes) {
  if (!c.contains(start)) throw DomainError("start facet is not in the component");
  if (max_nodes < 1) throw DomainError("max_nodes must be positive");
  const bool finite = c.cycle_rank == 0;
  const size_t cap = finite ? std::numeric_limits<size_t>::max() : static_cast<size_t>(max_nodes);
  DevelopmentTree t;
  t.nodes.push_back({0, start, -1, 0, {start}});
  std::deque<int> queue{0};
  bool truncated = false;
  while (!queue.empty() && !truncated) {
    int id = queue.front();
    queue.pop_front();
    int facet = t.nodes[id].facet;
    int back = t.nodes[id].parent < 0 ? -1 : t.nodes[t.nodes[id].parent].facet;
    for (int next : c.neighbours(facet)) {
      if (next == back) continue;
      if (t.nodes.size() >= cap) {
        truncated = true;
        break;
      }
      TreeNode child{static_cast<int>(t.nodes.size()), next, id, t.nodes[id].depth + 1, t.nodes[id].word};
      child.word.push_back(next);
      t.edges.push_back({id, child.id, facet, next, c.label(facet, next)});
      queue.push_back(child.id);
      t.nodes.push_back(std::move(child));
    }
  }
  t.complete = finite;
  return t;
}

/// Order data for the mirror of generator k in a finite group.
struct MirrorGroupData {
  int generator = 0;
  CoxeterType delta_type;
  int deck_rank = 0;
  std::uint64_t deck_order = 0;
  std::uint64_t group_order = 0;
  std::uint64_t orbit_size = 0;
  std::uint64_t delta_order = 0;
  bool identity_holds = false;  // |G| = orbit * 2 * deck * |Delta|
};

inline MirrorGroupData mirror_group_data(const CoxeterMatrix& m, int k) {
  CoxeterType type = classify(m);
  if (!type.finite()) throw NotFinite(type.str());
  if (k < 0 || k >= m.rank()) throw DomainError("generator index out of range");
  RootSystem rs = generate_roots(m);
  MirrorGroupData d;
  d.generator = k;
  d.delta_type = oracle_reduce(m, rs, k);
  auto comps = components(rolling_scheme(m));
  const Component& comp = component_of(comps, k);
  d.deck_rank = comp.cycle_rank;
  // Copies of facet k in the developed chamber: tree nodes of color k.
  DevelopmentTree tree = unfold(comp, k, 1);
  d.deck_order = static_cast<std::uint64_t>(
      std::count_if(tree.nodes.begin(), tree.nodes.end(), [&](const TreeNode& n) { return n.facet == k; }));
  d.group_order = group_order(type);
  d.orbit_size = static_cast<std::uint64_t>(rs.orbit_size(k));
  d.delta_order = group_order(d.delta_type);
  d.identity_holds = d.group_order == d.orbit_size * 2 * d.deck_order * d.delta_order;
  return d;
}

}  // namespace coxroll
