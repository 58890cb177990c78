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

#include "mgraph/generate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mgraph {

EdgeList rmat_generate(const RmatParams& p, std::uint64_t seed) {
  if (p.scale < 1) throw std::invalid_argument("rmat_generate: scale must be >= 1");
  if (p.edge_factor < 1) throw std::invalid_argument("rmat_generate: edge_factor must be >= 1");
  double sum = p.a + p.b + p.c + p.d;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("rmat_generate: quadrant probabilities must sum to 1");

  const std::uint64_t n = 1ULL << p.scale;
  const std::uint64_t m = n * static_cast<std::uint64_t>(p.edge_factor);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  EdgeList edges;
  edges.reserve(m);
  const double ab = p.a + p.b;
  const double abc = p.a + p.b + p.c;
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    for (int bit = 0; bit < p.scale; ++bit) {
      double r = uni(rng);
      std::uint64_t bu = 0, bv = 0;
      if (r < p.a) {
        // top-left quadrant
      } else if (r < ab) {
        bv = 1;
      } else if (r < abc) {
        bu = 1;
      } else {
        bu = 1;
        bv = 1;
      }
      u = (u << 1) | bu;
      v = (v << 1) | bv;
    }
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 0});
  }
  return edges;
}

Csr assign_random_weights(const Csr& g, Weight lo, Weight hi, std::uint64_t seed) {
  if (lo > hi) throw std::invalid_argument("assign_random_weights: lo > hi");
  Csr out = g;
  out.edge_values.assign(out.col_indices.size(), 0);
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
  for (VertexId u = 0; u < out.num_vertices; ++u) {
    for (EdgeId e = out.row_offsets[u]; e < out.row_offsets[u + 1]; ++e) {
      VertexId v = out.col_indices[e];
      // hash the unordered pair so both arcs of an edge draw the same value
      std::uint64_t a = std::min(u, v), b = std::max(u, v);
      std::uint64_t h = mix64(seed ^ mix64(a * 0x100000001b3ULL + b));
      out.edge_values[e] = lo + static_cast<Weight>(h % span);
    }
  }
  return out;
}

EdgeList grid_edges(VertexId rows, VertexId cols) {
  EdgeList edges;
  for (VertexId r = 0; r < rows; ++r) {
    for (VertexId c = 0; c < cols; ++c) {
      VertexId v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1, 0});
      if (r + 1 < rows) edges.push_back({v, v + cols, 0});
    }
  }
  return edges;
}

EdgeList path_edges(VertexId n) {
  EdgeList edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 0});
  return edges;
}

}  // namespace mgraph
