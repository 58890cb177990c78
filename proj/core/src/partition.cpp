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

#include "mgraph/partition.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mgraph {

const char* to_string(Duplication d) { return d == Duplication::All ? "all" : "onehop"; }

Assignment partition_random(VertexId num_vertices, std::uint32_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("partition_random: n == 0");
  Assignment a;
  a.num_partitions = n;
  a.owner.resize(num_vertices);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
  for (auto& o : a.owner) o = pick(rng);
  return a;
}

Assignment partition_biased_random(const Csr& g, std::uint32_t n, std::uint64_t seed, double bias) {
  if (n == 0) throw std::invalid_argument("partition_biased_random: n == 0");
  if (bias < 0.0 || bias > 1.0) throw std::invalid_argument("partition_biased_random: bias outside [0,1]");

  Assignment a;
  a.num_partitions = n;
  a.owner.assign(g.num_vertices, n);  // n = unassigned marker

  std::mt19937_64 rng(seed);
  std::vector<VertexId> order(g.num_vertices);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> weight(n);
  std::vector<std::uint32_t> nbr_count(n);
  for (VertexId v : order) {
    std::fill(nbr_count.begin(), nbr_count.end(), 0);
    std::uint64_t assigned = 0;
    for (VertexId u : g.neighbors(v)) {
      if (a.owner[u] < n) {
        nbr_count[a.owner[u]]++;
        assigned++;
      }
    }
    double total = 0.0;
    for (std::uint32_t p = 0; p < n; ++p) {
      double nbr_term = assigned ? static_cast<double>(nbr_count[p]) / assigned : 1.0 / n;
      weight[p] = (1.0 - bias) / n + bias * nbr_term;
      total += weight[p];
    }
    double r = uni(rng) * total;
    std::uint32_t chosen = n - 1;
    for (std::uint32_t p = 0; p < n; ++p) {
      if (r < weight[p]) {
        chosen = p;
        break;
      }
      r -= weight[p];
    }
    a.owner[v] = chosen;
  }
  return a;
}

Assignment load_assignment(const std::string& path, VertexId expected_vertices) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open assignment file: " + path);
  Assignment a;
  a.owner.reserve(expected_vertices);
  std::string line;
  std::size_t lineno = 0;
  long long max_owner = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    long long o;
    if (!(ss >> o)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed owner");
    std::string rest;
    if (ss >> rest) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": trailing junk");
    if (o < 0) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative owner");
    a.owner.push_back(static_cast<std::uint32_t>(o));
    max_owner = std::max(max_owner, o);
  }
  if (a.owner.size() != expected_vertices) {
    throw std::runtime_error(path + ": expected " + std::to_string(expected_vertices) +
                             " owner lines, got " + std::to_string(a.owner.size()));
  }
  a.num_partitions = a.owner.empty() ? 1 : static_cast<std::uint32_t>(max_owner) + 1;
  return a;
}

void save_assignment(const std::string& path, const Assignment& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write assignment file: " + path);
  for (auto o : a.owner) out << o << '\n';
}

PartitionPlan build_partition_plan(const Csr& g, const Assignment& a, Duplication dup) {
  if (a.owner.size() != g.num_vertices)
    throw std::invalid_argument("build_partition_plan: assignment length != |V|");
  const std::uint32_t n = a.num_partitions;
  for (auto o : a.owner) {
    if (o >= n) throw std::invalid_argument("build_partition_plan: owner out of range");
  }

  PartitionPlan plan;
  plan.assignment = a;
  plan.duplication = dup;
  plan.num_global_vertices = g.num_vertices;
  plan.num_global_edges = g.num_edges();
  plan.locals.resize(n);
  plan.borders.assign(n, std::vector<std::vector<VertexId>>(n));
  for (VertexId v = 0; v < g.num_vertices; ++v) plan.locals[a.owner[v]].push_back(v);

  // borders: distinct out-neighbors of i's hosted vertices, grouped by host
  {
    std::vector<std::vector<char>> seen(n, std::vector<char>(g.num_vertices, 0));
    for (VertexId u = 0; u < g.num_vertices; ++u) {
      std::uint32_t pu = a.owner[u];
      for (VertexId v : g.neighbors(u)) {
        std::uint32_t pv = a.owner[v];
        if (pv != pu && !seen[pu][v]) {
          seen[pu][v] = 1;
          plan.borders[pu][pv].push_back(v);
        }
      }
    }
    for (auto& row : plan.borders)
      for (auto& b : row) std::sort(b.begin(), b.end());
  }

  const bool weighted = g.has_weights();
  plan.subgraphs.resize(n);
  if (dup == Duplication::All) {
    for (std::uint32_t p = 0; p < n; ++p) {
      Csr& sub = plan.subgraphs[p];
      sub.num_vertices = g.num_vertices;
      sub.row_offsets.assign(static_cast<std::size_t>(g.num_vertices) + 1, 0);
      for (VertexId u : plan.locals[p]) sub.row_offsets[u + 1] = g.degree(u);
      for (std::size_t v = 0; v < g.num_vertices; ++v) sub.row_offsets[v + 1] += sub.row_offsets[v];
      sub.col_indices.resize(sub.row_offsets.back());
      if (weighted) sub.edge_values.resize(sub.row_offsets.back());
      for (VertexId u : plan.locals[p]) {
        EdgeId dst = sub.row_offsets[u];
        for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e, ++dst) {
          sub.col_indices[dst] = g.col_indices[e];
          if (weighted) sub.edge_values[dst] = g.edge_values[e];
        }
      }
    }
  } else {
    plan.local_to_global.resize(n);
    plan.global_to_local.assign(n, std::vector<VertexId>(g.num_vertices, kInvalidVertex));
    for (std::uint32_t p = 0; p < n; ++p) {
      auto& l2g = plan.local_to_global[p];
      auto& g2l = plan.global_to_local[p];
      l2g = plan.locals[p];  // hosted vertices take IDs [0, |L_p|)
      std::vector<VertexId> proxies;
      for (std::uint32_t q = 0; q < n; ++q) {
        for (VertexId v : plan.borders[p][q]) proxies.push_back(v);
      }
      std::sort(proxies.begin(), proxies.end());
      proxies.erase(std::unique(proxies.begin(), proxies.end()), proxies.end());
      l2g.insert(l2g.end(), proxies.begin(), proxies.end());
      for (VertexId l = 0; l < l2g.size(); ++l) g2l[l2g[l]] = l;

      Csr& sub = plan.subgraphs[p];
      sub.num_vertices = static_cast<VertexId>(l2g.size());
      sub.row_offsets.assign(l2g.size() + 1, 0);
      for (VertexId l = 0; l < plan.locals[p].size(); ++l)
        sub.row_offsets[l + 1] = g.degree(l2g[l]);
      for (std::size_t v = 0; v < sub.num_vertices; ++v) sub.row_offsets[v + 1] += sub.row_offsets[v];
      sub.col_indices.resize(sub.row_offsets.back());
      if (weighted) sub.edge_values.resize(sub.row_offsets.back());
      for (VertexId l = 0; l < plan.locals[p].size(); ++l) {
        VertexId u = l2g[l];
        EdgeId dst = sub.row_offsets[l];
        for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e, ++dst) {
          sub.col_indices[dst] = g2l[g.col_indices[e]];
          if (weighted) sub.edge_values[dst] = g.edge_values[e];
        }
      }
    }
  }
  return plan;
}

BorderMetrics border_metrics(const PartitionPlan& plan) {
  const std::uint32_t n = plan.num_partitions();
  BorderMetrics m;
  m.pair_border.assign(n, std::vector<std::uint64_t>(n, 0));
  m.partition_border.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      m.pair_border[i][j] = plan.borders[i][j].size();
      m.partition_border[i] += m.pair_border[i][j];
    }
    m.total_border += m.partition_border[i];
  }

  // undirected cut: distinct {u,v} pairs with an arc and different owners
  std::vector<std::pair<VertexId, VertexId>> cut_pairs;
  for (std::uint32_t p = 0; p < n; ++p) {
    const Csr& sub = plan.subgraphs[p];
    for (VertexId lu = 0; lu < plan.local_count(p); ++lu) {
      VertexId row = plan.duplication == Duplication::All ? plan.locals[p][lu] : lu;
      VertexId u = plan.to_global(p, row);
      for (EdgeId e = sub.row_offsets[row]; e < sub.row_offsets[row + 1]; ++e) {
        VertexId v = plan.to_global(p, sub.col_indices[e]);
        if (plan.owner_of(v) == p) continue;
        cut_pairs.emplace_back(std::min(u, v), std::max(u, v));
      }
    }
  }
  std::sort(cut_pairs.begin(), cut_pairs.end());
  cut_pairs.erase(std::unique(cut_pairs.begin(), cut_pairs.end()), cut_pairs.end());
  m.edge_cut = cut_pairs.size();
  return m;
}

}  // namespace mgraph
