// Transportation feasibility over exact numbers. Bag lifting asks for an
// integer matrix ρ on the allowed edges whose row sums match the left
// multiset and whose column sums match the right one; distribution lifting
// asks the same with nonnegative rationals. Both reduce to max-flow on the
// bipartite support graph: feasible iff total supply equals total demand and
// a maximum flow saturates the source arcs. Edmonds–Karp terminates in a
// combinatorial number of augmentations, so it is exact for rational
// capacities, and integral capacities yield an integral witness.
#pragma once

#include <optional>
#include <queue>
#include <utility>
#include <vector>

namespace nabla {

// supply[i]/demand[j] strictly positive; edges are (row, col) index pairs.
// Returns per-edge flows (aligned with `edges`) if feasible.
template <typename Num>
std::optional<std::vector<Num>> transport_feasible(const std::vector<Num>& supply,
                                                   const std::vector<Num>& demand,
                                                   const std::vector<std::pair<int, int>>& edges) {
  Num total_supply{};
  for (const auto& s : supply) total_supply += s;
  Num total_demand{};
  for (const auto& d : demand) total_demand += d;
  if (total_supply != total_demand) return std::nullopt;

  const int n_left = static_cast<int>(supply.size());
  const int n_right = static_cast<int>(demand.size());
  const int source = 0;
  const int sink = 1 + n_left + n_right;
  const int n_nodes = sink + 1;

  struct Arc {
    int to;
    Num cap;
    int rev;  // index of the reverse arc in adj[to]
  };
  std::vector<std::vector<Arc>> adj(n_nodes);
  auto add_arc = [&](int from, int to, Num cap) {
    adj[from].push_back({to, std::move(cap), static_cast<int>(adj[to].size())});
    adj[to].push_back({from, Num{}, static_cast<int>(adj[from].size()) - 1});
  };

  for (int i = 0; i < n_left; ++i) add_arc(source, 1 + i, supply[i]);
  for (int j = 0; j < n_right; ++j) add_arc(1 + n_left + j, sink, demand[j]);
  std::vector<std::pair<int, int>> edge_arc;  // (node, arc index) per input edge
  edge_arc.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    edge_arc.emplace_back(1 + i, static_cast<int>(adj[1 + i].size()));
    add_arc(1 + i, 1 + n_left + j, total_supply);
  }

  Num flow{};
  while (true) {
    // BFS for a shortest augmenting path.
    std::vector<std::pair<int, int>> parent(n_nodes, {-1, -1});
    std::queue<int> q;
    q.push(source);
    parent[source] = {source, 0};
    while (!q.empty() && parent[sink].first < 0) {
      int u = q.front();
      q.pop();
      for (int k = 0; k < static_cast<int>(adj[u].size()); ++k) {
        const Arc& a = adj[u][k];
        if (a.cap > 0 && parent[a.to].first < 0) {
          parent[a.to] = {u, k};
          q.push(a.to);
        }
      }
    }
    if (parent[sink].first < 0) break;
    // Bottleneck along the path.
    Num bottleneck{};
    bool first = true;
    for (int v = sink; v != source;) {
      auto [u, k] = parent[v];
      const Num& cap = adj[u][k].cap;
      if (first || cap < bottleneck) bottleneck = cap;
      first = false;
      v = u;
    }
    for (int v = sink; v != source;) {
      auto [u, k] = parent[v];
      Arc& a = adj[u][k];
      a.cap -= bottleneck;
      adj[a.to][a.rev].cap += bottleneck;
      v = u;
    }
    flow += bottleneck;
  }

  if (flow != total_supply) return std::nullopt;
  std::vector<Num> result;
  result.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [node, k] = edge_arc[e];
    const Arc& a = adj[node][k];
    // flow on the arc = residual capacity of the reverse arc
    result.push_back(adj[a.to][a.rev].cap);
  }
  return result;
}

}  // namespace nabla
