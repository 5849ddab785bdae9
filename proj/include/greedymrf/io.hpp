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

#ifndef GREEDYMRF_IO_HPP
#define GREEDYMRF_IO_HPP

// JSON and text serialization of learner output and bound reports.
// Requires nlohmann/json on the include path.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "greedymrf/graph.hpp"
#include "greedymrf/learner.hpp"
#include "greedymrf/theory.hpp"

namespace gmrf {

using Json = nlohmann::ordered_json;

inline Json to_json(const LearnerConfig& cfg) {
  Json j;
  j["epsilon"] = cfg.epsilon;
  j["max_neighborhood"] = cfg.max_neighborhood ? Json(*cfg.max_neighborhood) : Json(nullptr);
  j["tie_break"] = "lowest_index";
  j["symmetrization"] = to_string(cfg.symmetrization);
  j["prune"] = cfg.prune;
  return j;
}

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.first, e.second});
  return edges;
}

inline Json to_json(const NeighborhoodTrace& t) {
  Json j;
  j["node"] = t.node;
  Json picks = Json::array();
  for (const auto& p : t.picks) {
    picks.push_back({{"vertex", p.vertex},
                     {"entropy_before", p.entropy_before},
                     {"entropy_after", p.entropy_after}});
  }
  j["picks"] = std::move(picks);
  j["stop_reason"] = to_string(t.stop_reason);
  return j;
}

/// LearnResult document: config echo, edges, asymmetric pairs, traces.
inline Json to_json(const LearnResult& r, const LearnerConfig& cfg,
                    const std::vector<std::string>& names = {}) {
  Json j;
  j["config"] = to_json(cfg);
  j["num_vars"] = r.traces.size();
  if (!names.empty()) j["names"] = names;
  j["edges"] = to_json(r.graph);
  Json asym = Json::array();
  for (const auto& [a, b] : r.asymmetric_pairs) asym.push_back({a, b});
  j["asymmetric_pairs"] = std::move(asym);
  j["neighborhoods"] = r.neighborhoods;
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(to_json(t));
  j["traces"] = std::move(traces);
  return j;
}

inline Json to_json(const BoundReport& b) {
  Json inputs = Json::object();
  for (const auto& [k, v] : b.inputs) inputs[k] = v;
  return {{"name", b.name},
          {"inputs", inputs},
          {"value", b.value},
          {"formula", b.formula},
          {"underflow", b.underflow}};
}

namespace detail {

inline std::string fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

}  // namespace detail

/// Human-readable pick log: one block per vertex.
inline void write_trace(std::ostream& out, const LearnResult& r) {
  for (const auto& t : r.traces) {
    out << "node " << t.node << '\n';
    for (const auto& p : t.picks) {
      out << "  pick " << p.vertex << "  H_before=" << detail::fixed12(p.entropy_before)
          << "  H_after=" << detail::fixed12(p.entropy_after)
          << "  gain=" << detail::fixed12(p.entropy_before - p.entropy_after) << '\n';
    }
    out << "  stop " << to_string(t.stop_reason);
    if (t.rejected) {
      out << "  best_rejected=" << t.rejected->vertex
          << "  gain=" << detail::fixed12(t.rejected->entropy_before - t.rejected->entropy_after);
    }
    out << '\n';
    const auto& final_nb = r.neighborhoods[t.node];
    out << "  neighborhood";
    for (auto v : final_nb) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace gmrf

#endif  // GREEDYMRF_IO_HPP
