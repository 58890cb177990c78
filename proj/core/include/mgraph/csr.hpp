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
#include <span>
#include <vector>

#include "mgraph/types.hpp"

namespace mgraph {

struct WeightedEdge {
  VertexId src = 0;
  VertexId dst = 0;
  Weight weight = 0;
};

using EdgeList = std::vector<WeightedEdge>;

// Immutable compressed-sparse-row graph. Neighbor lists are sorted by
// destination; duplicate arcs are kept by build_csr and removed by
// symmetrize_dedup. Once built, a Csr is safe to share across workers.
struct Csr {
  VertexId num_vertices = 0;
  std::vector<EdgeId> row_offsets;    // num_vertices + 1
  std::vector<VertexId> col_indices;  // num_edges
  std::vector<Weight> edge_values;    // empty or num_edges

  EdgeId num_edges() const { return row_offsets.empty() ? 0 : row_offsets.back(); }
  bool has_weights() const { return !edge_values.empty(); }

  EdgeId degree(VertexId v) const { return row_offsets[v + 1] - row_offsets[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {col_indices.data() + row_offsets[v], col_indices.data() + row_offsets[v + 1]};
  }
};

// Build a CSR from an edge list. Rows come out sorted by neighbor ID;
// duplicate (u,v) pairs are kept. Throws std::invalid_argument on endpoints
// outside [0, num_vertices).
Csr build_csr(const EdgeList& edges, VertexId num_vertices, bool with_weights = false);

// Flatten a CSR back into its (sorted) arc list; build_csr of the result is
// a fixed point.
EdgeList extract_edges(const Csr& g);

// Convert to the canonical undirected form: drop self-loops, deduplicate
// arcs, mirror every edge, keep the minimum weight when duplicates disagree.
Csr symmetrize_dedup(const Csr& g);

// Static per-graph quantities consumed by heuristics and the cost model.
struct GraphStats {
  VertexId num_vertices = 0;
  EdgeId num_edges = 0;
  EdgeId max_degree = 0;
  double avg_degree = 0.0;
  VertexId approx_diameter = 0;
};

// Max BFS eccentricity over num_sources random sources, each restricted to
// its reachable set. Throws on an empty graph or num_sources == 0.
VertexId approx_diameter(const Csr& g, VertexId num_sources = 16, std::uint64_t seed = 0);

GraphStats compute_stats(const Csr& g, VertexId diameter_sources = 16, std::uint64_t seed = 0);

// Internal consistency check (offsets monotone, endpoints in range);
// throws std::invalid_argument naming the violation.
void validate_csr(const Csr& g);

}  // namespace mgraph
