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

#include "mgraph/csr.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <string>

namespace mgraph {

Csr build_csr(const EdgeList& edges, VertexId num_vertices, bool with_weights) {
  for (const auto& e : edges) {
    if (e.src >= num_vertices || e.dst >= num_vertices) {
      throw std::invalid_argument("build_csr: edge endpoint " + std::to_string(e.src) + "->" +
                                  std::to_string(e.dst) + " out of range [0," +
                                  std::to_string(num_vertices) + ")");
    }
  }

  Csr g;
  g.num_vertices = num_vertices;
  g.row_offsets.assign(static_cast<std::size_t>(num_vertices) + 1, 0);
  for (const auto& e : edges) g.row_offsets[e.src + 1]++;
  for (std::size_t v = 0; v < num_vertices; ++v) g.row_offsets[v + 1] += g.row_offsets[v];

  g.col_indices.resize(edges.size());
  if (with_weights) g.edge_values.resize(edges.size());
  std::vector<EdgeId> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
  for (const auto& e : edges) {
    EdgeId pos = cursor[e.src]++;
    g.col_indices[pos] = e.dst;
    if (with_weights) g.edge_values[pos] = e.weight;
  }

  // sort each row by neighbor (weights move with their arc)
  for (VertexId v = 0; v < num_vertices; ++v) {
    EdgeId lo = g.row_offsets[v], hi = g.row_offsets[v + 1];
    if (hi - lo <= 1) continue;
    if (!with_weights) {
      std::sort(g.col_indices.begin() + lo, g.col_indices.begin() + hi);
    } else {
      std::vector<std::pair<VertexId, Weight>> row;
      row.reserve(hi - lo);
      for (EdgeId e = lo; e < hi; ++e) row.emplace_back(g.col_indices[e], g.edge_values[e]);
      std::sort(row.begin(), row.end());
      for (EdgeId e = lo; e < hi; ++e) {
        g.col_indices[e] = row[e - lo].first;
        g.edge_values[e] = row[e - lo].second;
      }
    }
  }
  return g;
}

EdgeList extract_edges(const Csr& g) {
  EdgeList out;
  out.reserve(g.num_edges());
  for (VertexId u = 0; u < g.num_vertices; ++u) {
    for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      out.push_back({u, g.col_indices[e], g.has_weights() ? g.edge_values[e] : Weight{0}});
    }
  }
  return out;
}

Csr symmetrize_dedup(const Csr& g) {
  const bool weighted = g.has_weights();
  EdgeList arcs;
  arcs.reserve(static_cast<std::size_t>(g.num_edges()) * 2);
  for (VertexId u = 0; u < g.num_vertices; ++u) {
    for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      VertexId v = g.col_indices[e];
      if (u == v) continue;  // self-loops removed
      Weight w = weighted ? g.edge_values[e] : Weight{0};
      arcs.push_back({u, v, w});
      arcs.push_back({v, u, w});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.weight < b.weight;
  });
  // keep one arc per (src,dst); sort order puts the minimum weight first
  EdgeList dedup;
  dedup.reserve(arcs.size());
  for (const auto& a : arcs) {
    if (!dedup.empty() && dedup.back().src == a.src && dedup.back().dst == a.dst) continue;
    dedup.push_back(a);
  }
  return build_csr(dedup, g.num_vertices, weighted);
}

void validate_csr(const Csr& g) {
  if (g.row_offsets.size() != static_cast<std::size_t>(g.num_vertices) + 1)
    throw std::invalid_argument("csr: row_offsets length mismatch");
  if (g.row_offsets.front() != 0) throw std::invalid_argument("csr: row_offsets[0] != 0");
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    if (g.row_offsets[v] > g.row_offsets[v + 1])
      throw std::invalid_argument("csr: row_offsets not nondecreasing");
  }
  if (g.col_indices.size() != g.row_offsets.back())
    throw std::invalid_argument("csr: col_indices length mismatch");
  for (VertexId v : g.col_indices) {
    if (v >= g.num_vertices) throw std::invalid_argument("csr: neighbor out of range");
  }
  if (!g.edge_values.empty() && g.edge_values.size() != g.col_indices.size())
    throw std::invalid_argument("csr: edge_values length mismatch");
}

namespace {

// plain sequential BFS; returns the eccentricity within src's reachable set
VertexId bfs_eccentricity(const Csr& g, VertexId src, std::vector<Label>& depth) {
  depth.assign(g.num_vertices, kInfLabel);
  depth[src] = 0;
  std::queue<VertexId> q;
  q.push(src);
  VertexId ecc = 0;
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (VertexId v : g.neighbors(u)) {
      if (depth[v] == kInfLabel) {
        depth[v] = depth[u] + 1;
        ecc = std::max<VertexId>(ecc, depth[v]);
        q.push(v);
      }
    }
  }
  return ecc;
}

}  // namespace

VertexId approx_diameter(const Csr& g, VertexId num_sources, std::uint64_t seed) {
  if (g.num_vertices == 0) throw std::invalid_argument("approx_diameter: empty graph");
  if (num_sources == 0) throw std::invalid_argument("approx_diameter: num_sources == 0");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, g.num_vertices - 1);
  VertexId best = 0;
  std::vector<Label> depth;
  VertexId samples = std::min<VertexId>(num_sources, g.num_vertices);
  for (VertexId s = 0; s < samples; ++s) {
    best = std::max(best, bfs_eccentricity(g, pick(rng), depth));
  }
  return best;
}

GraphStats compute_stats(const Csr& g, VertexId diameter_sources, std::uint64_t seed) {
  GraphStats s;
  s.num_vertices = g.num_vertices;
  s.num_edges = g.num_edges();
  for (VertexId v = 0; v < g.num_vertices; ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  s.avg_degree = g.num_vertices ? static_cast<double>(s.num_edges) / g.num_vertices : 0.0;
  s.approx_diameter = g.num_vertices ? approx_diameter(g, diameter_sources, seed) : 0;
  return s;
}

}  // namespace mgraph
