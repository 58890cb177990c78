/*
Copyright (c) 2026 The mgraph authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <json.hpp>

#include "mgraph/cost_model.hpp"
#include "mgraph/engine.hpp"
#include "mgraph/frontier.hpp"
#include "mgraph/partition.hpp"

namespace mgraph {

inline nlohmann::json to_json(const RunStats& s) {
  nlohmann::json buffers = nlohmann::json::array();
  for (const auto& wb : s.worker_buffers) {
    nlohmann::json roles;
    for (const auto& [role, b] : wb) {
      roles[to_string(role)] = {{"reallocs", b.realloc_count},
                                {"peak_items", b.peak_items},
                                {"peak_bytes", b.peak_bytes}};
    }
    buffers.push_back(roles);
  }
  return nlohmann::json{{"primitive", s.primitive},
                        {"n", s.n},
                        {"partitioner", s.partitioner},
                        {"duplication", s.duplication},
                        {"communication", s.communication},
                        {"policy", s.policy},
                        {"S", s.supersteps},
                        {"W", s.edges_examined},
                        {"C", s.combine_ops},
                        {"H", s.h_matrix},
                        {"H_total", s.h_total()},
                        {"H_per_iter_by_src", s.h_per_iter_by_src},
                        {"out_per_iter", s.out_per_iter},
                        {"edges_per_iter", s.edges_per_iter},
                        {"wall_ms", s.wall_ms},
                        {"exchange_ms", s.exchange_ms},
                        {"h_inflation", s.h_inflation},
                        {"wire_records", s.wire_records},
                        {"stop_reason", s.stop_reason},
                        {"peak_bytes", s.peak_bytes},
                        {"reallocs", s.reallocs},
                        {"buffers", buffers}};
}

inline RunStats run_stats_from_json(const nlohmann::json& j) {
  RunStats s;
  s.primitive = j.at("primitive").get<std::string>();
  s.n = j.at("n").get<std::uint32_t>();
  s.partitioner = j.value("partitioner", "unspecified");
  s.duplication = j.value("duplication", "all");
  s.communication = j.value("communication", "selective");
  s.policy = j.value("policy", "just");
  s.supersteps = j.at("S").get<std::uint64_t>();
  s.edges_examined = j.at("W").get<std::uint64_t>();
  s.combine_ops = j.at("C").get<std::uint64_t>();
  s.h_matrix = j.at("H").get<std::vector<std::vector<std::uint64_t>>>();
  if (j.contains("H_per_iter_by_src"))
    s.h_per_iter_by_src = j.at("H_per_iter_by_src").get<std::vector<std::vector<std::uint64_t>>>();
  if (j.contains("out_per_iter"))
    s.out_per_iter = j.at("out_per_iter").get<std::vector<std::uint64_t>>();
  s.wall_ms = j.value("wall_ms", 0.0);
  s.exchange_ms = j.value("exchange_ms", 0.0);
  s.h_inflation = j.value("h_inflation", 1u);
  s.wire_records = j.value("wire_records", std::uint64_t{0});
  s.stop_reason = j.value("stop_reason", "");
  s.peak_bytes = j.value("peak_bytes", std::uint64_t{0});
  s.reallocs = j.value("reallocs", std::uint64_t{0});
  return s;
}

inline nlohmann::json to_json(const BorderMetrics& m) {
  return nlohmann::json{{"pair_border", m.pair_border},
                        {"partition_border", m.partition_border},
                        {"total_border", m.total_border},
                        {"edge_cut", m.edge_cut}};
}

inline nlohmann::json to_json(const Prediction& p) {
  return nlohmann::json{{"W", p.w}, {"C", p.c}, {"H", p.h}, {"S", p.s}};
}

inline nlohmann::json to_json(const CompareReport& r) {
  return nlohmann::json{{"w_ratio", r.w_ratio},
                        {"c_ratio", r.c_ratio},
                        {"h_ratio", r.h_ratio},
                        {"s_ratio", r.s_ratio},
                        {"violations", r.violations}};
}

inline nlohmann::json sizing_to_json(const SizingFactors& f) { return nlohmann::json(f); }

inline SizingFactors sizing_from_json(const nlohmann::json& j) { return j.get<SizingFactors>(); }

// role -> peak/|unit| ratios from a finished run, maxed over workers
inline SizingFactors record_sizing_factors(const RunStats& stats, const PartitionPlan& plan) {
  SizingFactors f;
  for (std::uint32_t p = 0; p < stats.worker_buffers.size(); ++p) {
    double unit_e = std::max<double>(1.0, static_cast<double>(plan.subgraphs[p].num_edges()));
    double unit_v = std::max<double>(1.0, static_cast<double>(plan.subgraphs[p].num_vertices));
    for (const auto& [role, b] : stats.worker_buffers[p]) {
      double unit = role == BufferRole::AdvanceOutput ? unit_e : unit_v;
      double ratio = static_cast<double>(b.peak_items) / unit;
      auto [it, inserted] = f.try_emplace(to_string(role), ratio);
      if (!inserted) it->second = std::max(it->second, ratio);
    }
  }
  return f;
}

}  // namespace mgraph
