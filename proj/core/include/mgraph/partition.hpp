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
#include <string>
#include <vector>

#include "mgraph/csr.hpp"

namespace mgraph {

// global vertex -> partition map
struct Assignment {
  std::vector<std::uint32_t> owner;
  std::uint32_t num_partitions = 1;
};

// Each vertex is distributed to one partition together with its outgoing
// edges; remote endpoints get local proxy vertices. Duplicate-all forces
// V_i = V (local ID == global ID, proxies have 0 out-edges); duplicate-1-hop
// keeps only the immediate remote neighbors and renumbers vertices with
// continuous IDs, hosted vertices first.
enum class Duplication { All, OneHop };

const char* to_string(Duplication d);

struct PartitionPlan {
  Assignment assignment;
  Duplication duplication = Duplication::All;
  std::vector<Csr> subgraphs;

  // hosted vertices per partition, as sorted global IDs; |L_i| = locals[i].size()
  std::vector<std::vector<VertexId>> locals;
  // local -> global per partition (OneHop only; identity under All)
  std::vector<std::vector<VertexId>> local_to_global;
  // global -> local per partition, kInvalidVertex where absent (OneHop only)
  std::vector<std::vector<VertexId>> global_to_local;
  // borders[i][j]: sorted distinct global IDs hosted on j that are
  // out-neighbors of vertices hosted on i
  std::vector<std::vector<std::vector<VertexId>>> borders;

  VertexId num_global_vertices = 0;
  EdgeId num_global_edges = 0;

  std::uint32_t num_partitions() const { return assignment.num_partitions; }
  std::uint32_t owner_of(VertexId global) const { return assignment.owner[global]; }
  VertexId local_count(std::uint32_t p) const { return static_cast<VertexId>(locals[p].size()); }

  VertexId to_global(std::uint32_t p, VertexId local) const {
    return duplication == Duplication::All ? local : local_to_global[p][local];
  }
  // kInvalidVertex when the vertex has no copy on p
  VertexId to_local(std::uint32_t p, VertexId global) const {
    return duplication == Duplication::All ? global : global_to_local[p][global];
  }
};

// Uniform owner per vertex; deterministic per seed. Throws when n == 0.
Assignment partition_random(VertexId num_vertices, std::uint32_t n, std::uint64_t seed);

// Single pass in shuffled vertex order; each vertex samples a partition from
// (1-bias) * uniform + bias * already-assigned-neighbor counts. bias 0 is the
// unbiased sampler, bias 1 fully neighbor-driven.
Assignment partition_biased_random(const Csr& g, std::uint32_t n, std::uint64_t seed, double bias);

// One decimal owner per line, line i = owner of vertex i. num_partitions is
// 1 + max value. Wrong line count, negatives and junk are errors.
Assignment load_assignment(const std::string& path, VertexId expected_vertices);
void save_assignment(const std::string& path, const Assignment& a);

PartitionPlan build_partition_plan(const Csr& g, const Assignment& a, Duplication dup);

struct BorderMetrics {
  std::vector<std::vector<std::uint64_t>> pair_border;  // |B_{i,j}|
  std::vector<std::uint64_t> partition_border;          // |B_i| = sum_j |B_{i,j}|
  std::uint64_t total_border = 0;
  std::uint64_t edge_cut = 0;  // undirected edges with endpoints apart
};

BorderMetrics border_metrics(const PartitionPlan& plan);

}  // namespace mgraph
