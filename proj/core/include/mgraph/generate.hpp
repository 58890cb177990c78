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

#include <array>
#include <cstdint>

#include "mgraph/csr.hpp"

namespace mgraph {

struct RmatParams {
  int scale = 10;
  int edge_factor = 16;
  // quadrant probabilities; must sum to 1 within 1e-9
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
};

// R-MAT edge generator: exactly (2^scale * edge_factor) directed edge
// insertions over 2^scale vertices, deterministic for a fixed seed.
// Duplicates and self-loops are kept here; symmetrize_dedup cleans up.
EdgeList rmat_generate(const RmatParams& params, std::uint64_t seed);

// One uniform integer weight in [lo,hi] per undirected edge, mirrored on
// both arcs; deterministic per seed and independent of arc order.
Csr assign_random_weights(const Csr& g, Weight lo, Weight hi, std::uint64_t seed);

// rows x cols 4-neighbor grid, one directed arc per adjacent pair
// (right/down); symmetrize for the undirected grid.
EdgeList grid_edges(VertexId rows, VertexId cols);

EdgeList path_edges(VertexId n);

}  // namespace mgraph
