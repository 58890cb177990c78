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

#include "mgraph/reference.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stack>

namespace mgraph::reference {

std::vector<Label> bfs_levels(const Csr& g, VertexId source) {
  std::vector<Label> depth(g.num_vertices, kInfLabel);
  depth[source] = 0;
  std::queue<VertexId> q;
  q.push(source);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    for (VertexId v : g.neighbors(u)) {
      if (depth[v] == kInfLabel) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
    }
  }
  return depth;
}

std::vector<Dist> dijkstra(const Csr& g, VertexId source) {
  std::vector<Dist> dist(g.num_vertices, kInfDist);
  dist[source] = 0;
  using Item = std::pair<Dist, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      VertexId v = g.col_indices[e];
      Dist nd = d + (g.has_weights() ? g.edge_values[e] : 1);
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist;
}

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(VertexId n) : parent(n) {
    for (VertexId i = 0; i < n; ++i) parent[i] = i;
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

}  // namespace

std::vector<VertexId> connected_components(const Csr& g) {
  UnionFind uf(g.num_vertices);
  for (VertexId u = 0; u < g.num_vertices; ++u)
    for (VertexId v : g.neighbors(u)) uf.unite(u, v);
  // roots are kept minimal by unite(), so find() yields the min member
  std::vector<VertexId> comp(g.num_vertices);
  for (VertexId v = 0; v < g.num_vertices; ++v) comp[v] = uf.find(v);
  return comp;
}

std::vector<double> brandes_bc(const Csr& g, VertexId source) {
  const VertexId n = g.num_vertices;
  std::vector<double> bc(n, 0.0);
  std::vector<std::vector<VertexId>> preds(n);
  std::vector<double> sigma(n, 0.0);
  std::vector<Label> dist(n, kInfLabel);
  std::stack<VertexId> order;

  sigma[source] = 1.0;
  dist[source] = 0;
  std::queue<VertexId> q;
  q.push(source);
  while (!q.empty()) {
    VertexId u = q.front();
    q.pop();
    order.push(u);
    for (VertexId v : g.neighbors(u)) {
      if (dist[v] == kInfLabel) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
      if (dist[v] == dist[u] + 1) {
        sigma[v] += sigma[u];
        preds[v].push_back(u);
      }
    }
  }

  std::vector<double> delta(n, 0.0);
  while (!order.empty()) {
    VertexId w = order.top();
    order.pop();
    for (VertexId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != source) bc[w] += delta[w];
  }
  return bc;
}

PowerIterationResult pagerank_power(const Csr& g, double damping, double epsilon,
                                    std::uint64_t max_iter) {
  const VertexId n = g.num_vertices;
  PowerIterationResult out;
  if (n == 0) return out;
  std::vector<double> rank(n, 1.0 / n), accum(n, 0.0);
  for (std::uint64_t it = 1; it <= max_iter; ++it) {
    std::fill(accum.begin(), accum.end(), 0.0);
    double dangling = 0.0;
    for (VertexId u = 0; u < n; ++u) {
      EdgeId deg = g.degree(u);
      if (deg == 0) {
        dangling += rank[u];
        continue;
      }
      double contrib = rank[u] / static_cast<double>(deg);
      for (VertexId v : g.neighbors(u)) accum[v] += contrib;
    }
    double delta_max = 0.0, sum = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      double nr = (1.0 - damping) / n + damping * (accum[v] + dangling / n);
      delta_max = std::max(delta_max, std::abs(nr - rank[v]) / std::max(nr, 1e-300));
      rank[v] = nr;
      sum += nr;
    }
    out.iterations = it;
    out.rank_sums.push_back(sum);
    if (delta_max < epsilon) break;
  }
  out.ranks = std::move(rank);
  return out;
}

}  // namespace mgraph::reference
