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

#include <cstdint>
#include <vector>

#include "mgraph/engine.hpp"

namespace mgraph {

// --------------------------------------------------------------------------
// BFS

struct BfsOptions {
  VertexId source = 0;
  bool mark_preds = false;
};

struct BfsResult {
  std::vector<Label> labels;    // hop counts, kInfLabel = unreachable
  std::vector<VertexId> preds;  // valid BFS tree when requested
  RunStats stats;
};

BfsResult bfs(const PartitionPlan& plan, const BfsOptions& opt, const EngineConfig& cfg = {});

// --------------------------------------------------------------------------
// direction-optimizing BFS

enum class Direction { Forward, Backward };

struct DirectionState {
  Direction current = Direction::Forward;
  std::uint64_t q_size = 0;  // |Q| current frontier
  std::uint64_t u_size = 0;  // |U| unvisited
  std::uint64_t p_size = 0;  // |P| visited
  double fv = 0.0;           // estimated forward edges: |Q| * |E| / |V|
  double bv = 0.0;           // estimated backward edges: |U| * |V| / |P|
  double do_a = 0.01;
  double do_b = 0.1;
  bool switched_to_backward_once = false;
};

DirectionState make_direction_state(Direction current, std::uint64_t q, std::uint64_t u,
                                    std::uint64_t p, std::uint64_t edges, std::uint64_t vertices,
                                    double do_a, double do_b, bool switched_once);

// Forward -> backward when FV > BV * do_a (once per run); backward ->
// forward when FV < BV * do_b.
Direction direction_decide(const DirectionState& s);

struct DobfsOptions {
  VertexId source = 0;
  double do_a = 0.01;
  double do_b = 0.1;
  bool mark_preds = false;
};

struct DobfsResult {
  std::vector<Label> labels;
  std::vector<VertexId> preds;
  std::vector<int> direction_log;  // 0 = forward, 1 = backward per superstep
  std::uint64_t forward_edges = 0;
  std::uint64_t backward_edges = 0;
  RunStats stats;
};

// Requires an undirected (symmetrized) graph: the backward pass reads a
// hosted vertex's adjacency as its incoming edges.
DobfsResult dobfs(const PartitionPlan& plan, const DobfsOptions& opt,
                  const EngineConfig& cfg = {});

// --------------------------------------------------------------------------
// SSSP (frontier Bellman-Ford, re-insertion on improvement)

struct SsspResult {
  std::vector<Dist> dists;  // kInfDist = unreachable
  std::vector<VertexId> preds;
  RunStats stats;
};

SsspResult sssp(const PartitionPlan& plan, VertexId source, bool mark_preds = false,
                const EngineConfig& cfg = {});

// --------------------------------------------------------------------------
// connected components (hooking + pointer jumping, changed-value exchange)

struct CcResult {
  std::vector<VertexId> components;  // min global ID per component
  RunStats stats;
};

CcResult cc(const PartitionPlan& plan, const EngineConfig& cfg = {});

// --------------------------------------------------------------------------
// single-source betweenness centrality

struct BcResult {
  std::vector<double> bc;     // dependency contribution of this source
  std::vector<double> sigma;  // shortest-path counts
  std::vector<Label> labels;
  RunStats stats;
};

BcResult bc(const PartitionPlan& plan, VertexId source, const EngineConfig& cfg = {});

// --------------------------------------------------------------------------
// PageRank (power iteration with uniform dangling redistribution)

struct PrOptions {
  double damping = 0.85;
  double epsilon = 0.01;  // stop when max |delta rank| / rank falls below
  std::uint64_t max_iter = 1000;
};

struct PrResult {
  std::vector<double> ranks;
  std::uint64_t iterations = 0;
  std::vector<double> rank_sums;  // global sum after every update
  RunStats stats;
};

PrResult pagerank(const PartitionPlan& plan, const PrOptions& opt, const EngineConfig& cfg = {});

}  // namespace mgraph
