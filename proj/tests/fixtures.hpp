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

#include <string>
#include <vector>

#include "mgraph/csr.hpp"
#include "mgraph/generate.hpp"
#include "mgraph/partition.hpp"

namespace fixtures {

using namespace mgraph;

// 0-1-2-3 path, undirected
inline Csr p4() { return symmetrize_dedup(build_csr(path_edges(4), 4)); }

// center 0, leaves 1..4
inline Csr star5() {
  EdgeList e{{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {0, 4, 0}};
  return symmetrize_dedup(build_csr(e, 5));
}

// triangle {0,1,2} plus isolated vertex 3
inline Csr triangle_isolated() {
  EdgeList e{{0, 1, 0}, {1, 2, 0}, {0, 2, 0}};
  return symmetrize_dedup(build_csr(e, 4));
}

inline Csr k4() {
  EdgeList e;
  for (VertexId u = 0; u < 4; ++u)
    for (VertexId v = u + 1; v < 4; ++v) e.push_back({u, v, 0});
  return symmetrize_dedup(build_csr(e, 4));
}

inline Csr grid(VertexId rows, VertexId cols) {
  return symmetrize_dedup(build_csr(grid_edges(rows, cols), rows * cols));
}

inline Csr rmat(int scale, int ef, std::uint64_t seed, bool weights = false) {
  RmatParams p;
  p.scale = scale;
  p.edge_factor = ef;
  Csr g = symmetrize_dedup(build_csr(rmat_generate(p, seed), VertexId{1} << scale));
  if (weights) g = assign_random_weights(g, 0, 64, seed + 1);
  return g;
}

inline Assignment explicit_assignment(std::vector<std::uint32_t> owners, std::uint32_t n) {
  Assignment a;
  a.owner = std::move(owners);
  a.num_partitions = n;
  return a;
}

// P4 split {0,1 | 2,3}
inline PartitionPlan p4_two_way(Duplication dup = Duplication::All) {
  return build_partition_plan(p4(), explicit_assignment({0, 0, 1, 1}, 2), dup);
}

}  // namespace fixtures
