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

#ifndef GREEDYMRF_GENERATORS_HPP
#define GREEDYMRF_GENERATORS_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greedymrf/errors.hpp"
#include "greedymrf/graph.hpp"
#include "greedymrf/ising.hpp"
#include "greedymrf/random.hpp"

namespace gmrf {

/// k×k lattice, row-major: vertex r*k + c.
struct GridFamily {
  std::size_t k = 0;
};
struct ChainFamily {
  std::size_t p = 0;
};
struct CycleFamily {
  std::size_t p = 0;
};
/// Complete tree in BFS order: root 0, children of v are v*arity+1 .. v*arity+arity.
struct DaryTreeFamily {
  std::size_t arity = 0;
  std::size_t depth = 0;
};
/// V = {0..D+1}, E = {{0,i},{i,D+1} | 1 <= i <= D}.
struct CounterExampleFamily {
  std::size_t degree = 0;
};
/// G(p, prob), resampled until connected.
struct ErdosRenyiFamily {
  std::size_t p = 0;
  double prob = 0.0;
  std::uint64_t seed = 0;
};
/// Uniform random attachment tree with shuffled labels; max_degree 0 means
/// unbounded.
struct RandomTreeFamily {
  std::size_t p = 0;
  std::uint64_t seed = 0;
  std::size_t max_degree = 0;
};

using Family = std::variant<GridFamily, ChainFamily, CycleFamily, DaryTreeFamily,
                            CounterExampleFamily, ErdosRenyiFamily, RandomTreeFamily>;

struct ConstantWeights {
  double theta = 0.0;
};
/// θ uniform in the open interval (lo, hi).
struct UniformWeights {
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t seed = 0;
};
/// |θ| fixed, sign a fair coin.
struct RandomSignWeights {
  double magnitude = 0.0;
  std::uint64_t seed = 0;
};

using WeightRule = std::variant<ConstantWeights, UniformWeights, RandomSignWeights>;

struct ModelSpec {
  Family family;
  WeightRule weights;
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ArgumentError(msg);
}

inline Graph random_attachment_tree(const RandomTreeFamily& f) {
  require(f.p >= 2, "randtree needs p >= 2");
  require(f.max_degree == 0 || f.max_degree >= 2, "randtree max degree must be >= 2");
  Rng rng(f.seed);
  std::vector<Vertex> label(f.p);
  std::iota(label.begin(), label.end(), Vertex{0});
  for (std::size_t k = f.p; k > 1; --k) std::swap(label[k - 1], label[uniform_below(rng, k)]);
  Graph g(f.p);
  std::vector<std::size_t> deg(f.p, 0);
  for (std::size_t v = 1; v < f.p; ++v) {
    std::vector<std::size_t> open;
    for (std::size_t u = 0; u < v; ++u) {
      if (f.max_degree == 0 || deg[u] < f.max_degree) open.push_back(u);
    }
    auto u = open[uniform_below(rng, open.size())];
    ++deg[u];
    ++deg[v];
    g.add_edge(label[u], label[v]);
  }
  return g;
}

inline bool connected(const Graph& g) {
  auto d = bfs_distances(g, 0);
  for (auto x : d) {
    if (x == kUnreachable) return false;
  }
  return true;
}

}  // namespace detail

inline Graph build_graph(const Family& family) {
  using detail::require;
  return std::visit(
      [](const auto& f) -> Graph {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, GridFamily>) {
          require(f.k >= 2, "grid needs k >= 2");
          Graph g(f.k * f.k);
          for (std::size_t r = 0; r < f.k; ++r) {
            for (std::size_t c = 0; c < f.k; ++c) {
              if (c + 1 < f.k) g.add_edge(r * f.k + c, r * f.k + c + 1);
              if (r + 1 < f.k) g.add_edge(r * f.k + c, (r + 1) * f.k + c);
            }
          }
          return g;
        } else if constexpr (std::is_same_v<T, ChainFamily>) {
          require(f.p >= 2, "chain needs p >= 2");
          Graph g(f.p);
          for (std::size_t v = 0; v + 1 < f.p; ++v) g.add_edge(v, v + 1);
          return g;
        } else if constexpr (std::is_same_v<T, CycleFamily>) {
          require(f.p >= 3, "cycle needs p >= 3");
          Graph g(f.p);
          for (std::size_t v = 0; v < f.p; ++v) g.add_edge(v, (v + 1) % f.p);
          return g;
        } else if constexpr (std::is_same_v<T, DaryTreeFamily>) {
          require(f.arity >= 1 && f.depth >= 1, "tree needs arity >= 1 and depth >= 1");
          std::size_t p = 1, level = 1;
          for (std::size_t d = 0; d < f.depth; ++d) {
            level *= f.arity;
            p += level;
          }
          Graph g(p);
          for (Vertex v = 1; v < p; ++v) g.add_edge((v - 1) / f.arity, v);
          return g;
        } else if constexpr (std::is_same_v<T, CounterExampleFamily>) {
          require(f.degree >= 1, "counterexample needs D >= 1");
          Graph g(f.degree + 2);
          for (std::size_t i = 1; i <= f.degree; ++i) {
            g.add_edge(0, i);
            g.add_edge(i, f.degree + 1);
          }
          return g;
        } else if constexpr (std::is_same_v<T, ErdosRenyiFamily>) {
          require(f.p >= 2, "er needs p >= 2");
          require(f.prob > 0.0 && f.prob < 1.0, "er needs 0 < prob < 1");
          Rng rng(f.seed);
          for (int attempt = 0; attempt < 1000; ++attempt) {
            Graph g(f.p);
            for (Vertex u = 0; u < f.p; ++u) {
              for (Vertex v = u + 1; v < f.p; ++v) {
                if (uniform01(rng) < f.prob) g.add_edge(u, v);
              }
            }
            if (detail::connected(g)) return g;
          }
          throw ArgumentError("er: no connected sample in 1000 attempts; raise prob");
        } else {
          return detail::random_attachment_tree(f);
        }
      },
      family);
}

/// Deterministic given the spec: weights are drawn in lexicographic edge order.
inline IsingModel build(const ModelSpec& spec) {
  Graph g = build_graph(spec.family);
  std::map<Edge, double> theta;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstantWeights>) {
          detail::require(w.theta != 0.0, "constant weight must be nonzero");
          for (const auto& e : g.edges()) theta.emplace(e, w.theta);
        } else if constexpr (std::is_same_v<T, UniformWeights>) {
          detail::require(w.lo < w.hi, "uniform weights need lo < hi");
          Rng rng(w.seed);
          for (const auto& e : g.edges()) {
            double t = 0.0;
            while (t == 0.0 || t <= w.lo || t >= w.hi) t = w.lo + uniform_open01(rng) * (w.hi - w.lo);
            theta.emplace(e, t);
          }
        } else {
          detail::require(w.magnitude > 0.0, "random-sign magnitude must be positive");
          Rng rng(w.seed);
          for (const auto& e : g.edges()) theta.emplace(e, (rng() >> 63) ? w.magnitude : -w.magnitude);
        }
      },
      spec.weights);
  return IsingModel(std::move(g), std::move(theta));
}

namespace detail {

inline std::vector<std::string> split_colon(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto c = s.find(':', start);
    parts.emplace_back(s.substr(start, c == std::string_view::npos ? s.npos : c - start));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return parts;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ArgumentError("bad integer '" + s + "' in " + what);
  }
  return v;
}

inline double parse_real(const std::string& s, const std::string& what) {
  std::istringstream in(s);
  double v = 0.0;
  char extra = 0;
  if (!(in >> v) || (in >> extra)) throw ArgumentError("bad number '" + s + "' in " + what);
  return v;
}

}  // namespace detail

/// Model grammar:
///   grid:K | chain:P | cycle:P | star:K | tree:ARITY:DEPTH |
///   counterexample:D | er:P:PROB:SEED | randtree:P:SEED[:MAXDEG]
inline Family parse_family(std::string_view text) {
  using detail::parse_uint;
  auto parts = detail::split_colon(text);
  const std::string what = "model '" + std::string(text) + "'";
  const auto& kind = parts[0];
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1) {
      throw ArgumentError(what + ": wrong number of fields");
    }
  };
  if (kind == "grid") {
    want(1, 1);
    return GridFamily{parse_uint(parts[1], what)};
  }
  if (kind == "chain") {
    want(1, 1);
    return ChainFamily{parse_uint(parts[1], what)};
  }
  if (kind == "cycle") {
    want(1, 1);
    return CycleFamily{parse_uint(parts[1], what)};
  }
  if (kind == "star") {
    want(1, 1);
    return DaryTreeFamily{parse_uint(parts[1], what), 1};
  }
  if (kind == "tree") {
    want(2, 2);
    return DaryTreeFamily{parse_uint(parts[1], what), parse_uint(parts[2], what)};
  }
  if (kind == "counterexample") {
    want(1, 1);
    return CounterExampleFamily{parse_uint(parts[1], what)};
  }
  if (kind == "er") {
    want(3, 3);
    return ErdosRenyiFamily{parse_uint(parts[1], what), detail::parse_real(parts[2], what),
                            parse_uint(parts[3], what)};
  }
  if (kind == "randtree") {
    want(2, 3);
    return RandomTreeFamily{parse_uint(parts[1], what), parse_uint(parts[2], what),
                            parts.size() > 3 ? parse_uint(parts[3], what) : 0};
  }
  throw ArgumentError(what + ": unknown family '" + kind + "'");
}

/// Weight grammar: const:THETA | uniform:LO:HI:SEED | sign:THETA:SEED
inline WeightRule parse_weights(std::string_view text) {
  auto parts = detail::split_colon(text);
  const std::string what = "weights '" + std::string(text) + "'";
  const auto& kind = parts[0];
  if (kind == "const" && parts.size() == 2) return ConstantWeights{detail::parse_real(parts[1], what)};
  if (kind == "uniform" && parts.size() == 4) {
    return UniformWeights{detail::parse_real(parts[1], what), detail::parse_real(parts[2], what),
                          detail::parse_uint(parts[3], what)};
  }
  if (kind == "sign" && parts.size() == 3) {
    return RandomSignWeights{detail::parse_real(parts[1], what), detail::parse_uint(parts[2], what)};
  }
  throw ArgumentError(what + ": expected const:T, uniform:LO:HI:SEED or sign:T:SEED");
}

namespace detail {

/// Shortest decimal form that parses back to the same double.
inline std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace detail

/// Inverse of parse_family.
inline std::string to_string(const Family& family) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        using std::to_string;
        if constexpr (std::is_same_v<T, GridFamily>) return "grid:" + to_string(f.k);
        else if constexpr (std::is_same_v<T, ChainFamily>) return "chain:" + to_string(f.p);
        else if constexpr (std::is_same_v<T, CycleFamily>) return "cycle:" + to_string(f.p);
        else if constexpr (std::is_same_v<T, DaryTreeFamily>)
          return "tree:" + to_string(f.arity) + ":" + to_string(f.depth);
        else if constexpr (std::is_same_v<T, CounterExampleFamily>)
          return "counterexample:" + to_string(f.degree);
        else if constexpr (std::is_same_v<T, ErdosRenyiFamily>)
          return "er:" + to_string(f.p) + ":" + detail::format_real(f.prob) + ":" + to_string(f.seed);
        else
          return "randtree:" + to_string(f.p) + ":" + to_string(f.seed) +
                 (f.max_degree ? ":" + to_string(f.max_degree) : "");
      },
      family);
}

/// Inverse of parse_weights.
inline std::string to_string(const WeightRule& rule) {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ConstantWeights>) return "const:" + detail::format_real(w.theta);
        else if constexpr (std::is_same_v<T, UniformWeights>)
          return "uniform:" + detail::format_real(w.lo) + ":" + detail::format_real(w.hi) + ":" +
                 std::to_string(w.seed);
        else
          return "sign:" + detail::format_real(w.magnitude) + ":" + std::to_string(w.seed);
      },
      rule);
}

}  // namespace gmrf

#endif  // GREEDYMRF_GENERATORS_HPP
