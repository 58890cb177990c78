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

#include <benchmark/benchmark.h>

#include "mgraph/generate.hpp"
#include "mgraph/primitives.hpp"

using namespace mgraph;

namespace {

Csr bench_graph(int scale, int ef) {
  RmatParams p;
  p.scale = scale;
  p.edge_factor = ef;
  return symmetrize_dedup(build_csr(rmat_generate(p, 1), VertexId{1} << scale));
}

PartitionPlan bench_plan(const Csr& g, std::uint32_t n) {
  return build_partition_plan(g, partition_random(g.num_vertices, n, 7), Duplication::All);
}

void BM_advance_full_frontier(benchmark::State& state) {
  Csr g = bench_graph(static_cast<int>(state.range(0)), 16);
  Frontier in, out;
  in.ensure_capacity(g.num_vertices);
  for (VertexId v = 0; v < g.num_vertices; ++v) in.push_back(v);
  for (auto _ : state) {
    advance(g, in, out, [](VertexId, VertexId, EdgeId) { return true; });
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_advance_full_frontier)->Arg(12)->Arg(14);

void BM_advance_filter_fused_vs_staged(benchmark::State& state) {
  Csr g = bench_graph(13, 16);
  Frontier in, mid, out;
  in.ensure_capacity(g.num_vertices);
  for (VertexId v = 0; v < g.num_vertices; ++v) in.push_back(v);
  bool fused = state.range(0) == 1;
  auto visit = [](VertexId, VertexId v, EdgeId) { return (v & 3) != 0; };
  auto keep = [](VertexId v) { return (v & 7) != 1; };
  for (auto _ : state) {
    if (fused) {
      advance_filter_fused(g, in, out, visit, keep);
    } else {
      advance(g, in, mid, visit);
      filter(mid, out, keep);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(fused ? "fused" : "staged");
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_advance_filter_fused_vs_staged)->Arg(0)->Arg(1);

void BM_bfs(benchmark::State& state) {
  Csr g = bench_graph(14, 16);
  PartitionPlan plan = bench_plan(g, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    auto r = bfs(plan, {.source = 0});
    benchmark::DoNotOptimize(r.labels.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_bfs)->Arg(1)->Arg(2)->Arg(4);

void BM_dobfs(benchmark::State& state) {
  Csr g = bench_graph(14, 32);
  PartitionPlan plan = bench_plan(g, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    auto r = dobfs(plan, {.source = 0});
    benchmark::DoNotOptimize(r.labels.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_dobfs)->Arg(1)->Arg(2)->Arg(4);

void BM_pagerank_iteration(benchmark::State& state) {
  Csr g = bench_graph(14, 16);
  PartitionPlan plan = bench_plan(g, static_cast<std::uint32_t>(state.range(0)));
  PrOptions opt{.damping = 0.85, .epsilon = 1e-12, .max_iter = 5};
  for (auto _ : state) {
    auto r = pagerank(plan, opt);
    benchmark::DoNotOptimize(r.ranks.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges() * opt.max_iter);
}
BENCHMARK(BM_pagerank_iteration)->Arg(1)->Arg(2)->Arg(4);

}  // namespace
