// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_GRAPH_HPP
#define GREEDYMRF_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "greedymrf/errors.hpp"

namespace gmrf {

using Vertex = std::size_t;

/// Unordered vertex pair, normalized so that first < second.
struct Edge {
  Vertex first = 0;
  Vertex second = 0;

  Edge() = default;
  Edge(Vertex u, Vertex v) : first(std::min(u, v)), second(std::max(u, v)) {}

  auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on vertices 0..p-1 (the Markov graph).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t p) : adj_(p) {}

  Graph(std::size_t p, const std::vector<Edge>& edges) : adj_(p) {
    for (const auto& e : edges) add_edge(e.first, e.second);
  }

  std::size_t num_vertices() const noexcept { return adj_.size(); }

  std::size_t num_edges() const noexcept {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
  }

  /// Adds {u, v}. Returns false if the edge was already present.
  bool add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    if (u == v) throw ArgumentError("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    return true;
  }

  bool has_edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Sorted neighbor list.
  const std::vector<Vertex>& neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return d;
  }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool operator==(const Graph&) const = default;

 private:
  void check(Vertex v) const {
    if (v >= adj_.size()) {
      throw BoundsError("vertex " + std::to_string(v) + " out of range (p = " +
                        std::to_string(adj_.size()) + ")");
    }
  }

  std::vector<std::vector<Vertex>> adj_;
};

using MarkovGraph = Graph;

/// Hop distance; unreachable pairs are reported as kUnreachable.
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::size_t> dist(g.num_vertices(), kUnreachable);
  std::queue<Vertex> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

/// Shortest-path length, or nullopt when u and v are disconnected.
inline std::optional<std::size_t> graph_distance(const Graph& g, Vertex u, Vertex v) {
  if (v >= g.num_vertices()) throw BoundsError("vertex out of range");
  auto d = bfs_distances(g, u)[v];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

/// Length of the shortest cycle, or nullopt for forests.
///
/// BFS from every vertex; a non-tree edge (u, w) closes a cycle through the
/// root of length at most dist[u] + dist[w] + 1, and the minimum over all
/// roots is exact.
inline std::optional<std::size_t> girth(const Graph& g) {
  const auto p = g.num_vertices();
  std::size_t best = kUnreachable;
  std::vector<std::size_t> dist(p);
  std::vector<Vertex> parent(p);
  for (Vertex root = 0; root < p; ++root) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::queue<Vertex> frontier;
    dist[root] = 0;
    parent[root] = root;
    frontier.push(root);
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.pop();
      if (2 * dist[u] >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          frontier.push(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnreachable) return std::nullopt;
  return best;
}

/// All maximal cliques, each sorted, in lexicographic order.
/// Bron–Kerbosch with Tomita pivoting.
inline std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Vertex> current;

  auto intersect = [&](const std::vector<Vertex>& set, Vertex v) {
    std::vector<Vertex> out;
    const auto& nb = g.neighbors(v);
    std::set_intersection(set.begin(), set.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
  };

  auto expand = [&](auto&& self, std::vector<Vertex> candidates,
                    std::vector<Vertex> excluded) -> void {
    if (candidates.empty() && excluded.empty()) {
      auto clique = current;
      std::sort(clique.begin(), clique.end());
      cliques.push_back(std::move(clique));
      return;
    }
    // pivot: vertex of candidates ∪ excluded with most neighbors in candidates
    Vertex pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    for (const auto* set : {&candidates, &excluded}) {
      for (Vertex u : *set) {
        auto c = intersect(candidates, u).size();
        if (!have_pivot || c > best) {
          pivot = u;
          best = c;
          have_pivot = true;
        }
      }
    }
    std::vector<Vertex> branch;
    const auto& pn = g.neighbors(pivot);
    std::set_difference(candidates.begin(), candidates.end(), pn.begin(), pn.end(),
                        std::back_inserter(branch));
    for (Vertex v : branch) {
      current.push_back(v);
      self(self, intersect(candidates, v), intersect(excluded, v));
      current.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  };

  std::vector<Vertex> all(g.num_vertices());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  expand(expand, all, {});
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

/// Bipartite variable/clique graph. Variables keep their indices 0..p-1 and
/// clique c becomes vertex p + c in `graph`.
struct FactorGraph {
  std::size_t num_variables = 0;
  std::vector<std::vector<Vertex>> cliques;
  Graph graph;

  Vertex clique_vertex(std::size_t c) const { return num_variables + c; }

  /// {variable, clique vertex} pairs.
  std::vector<Edge> incidences() const { return graph.edges(); }
};

inline FactorGraph factor_graph(const Graph& g) {
  FactorGraph fg;
  fg.num_variables = g.num_vertices();
  fg.cliques = maximal_cliques(g);
  fg.graph = Graph(fg.num_variables + fg.cliques.size());
  for (std::size_t c = 0; c < fg.cliques.size(); ++c) {
    for (Vertex v : fg.cliques[c]) fg.graph.add_edge(v, fg.clique_vertex(c));
  }
  return fg;
}

// Edge-list text format: first line is p, then one "u v" pair per line.

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.first << ' ' << e.second << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<Graph> g;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!g) {
      std::size_t p = 0;
      if (!(fields >> p)) throw ParseError("edge list header must be the vertex count", line_no);
      g.emplace(p);
      continue;
    }
    Vertex u = 0, v = 0;
    if (!(fields >> u >> v)) throw ParseError("expected 'u v' on line " + std::to_string(line_no), line_no);
    try {
      g->add_edge(u, v);
    } catch (const Error& e) {
      throw ParseError(std::string(e.what()) + " on line " + std::to_string(line_no), line_no);
    }
  }
  if (!g) throw ParseError("empty edge list", 0);
  return *g;
}

/// Graphviz DOT. `labels`, when non-empty, must have one entry per vertex.
inline void write_dot(std::ostream& out, const Graph& g, const std::vector<std::string>& labels = {},
                      const std::string& name = "G") {
  out << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "  " << v;
    if (!labels.empty()) {
      std::string quoted;
      for (char c : labels.at(v)) {
        if (c == '"' || c == '\\') quoted += '\\';
        quoted += c;
      }
      out << " [label=\"" << quoted << "\"]";
    }
    out << ";\n";
  }
  for (const auto& e : g.edges()) out << "  " << e.first << " -- " << e.second << ";\n";
  out << "}\n";
}

}  // namespace gmrf

#endif  // GREEDYMRF_GRAPH_HPP
