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

#include "mgraph/cost_model.hpp"
#include "mgraph/generate.hpp"
#include "mgraph/partition.hpp"

using namespace mgraph;

namespace {

EdgeList bench_edges(int scale, int ef) {
  RmatParams p;
  p.scale = scale;
  p.edge_factor = ef;
  return rmat_generate(p, 1);
}

void BM_rmat_generate(benchmark::State& state) {
  RmatParams p;
  p.scale = static_cast<int>(state.range(0));
  p.edge_factor = 16;
  for (auto _ : state) {
    auto edges = rmat_generate(p, 1);
    benchmark::DoNotOptimize(edges.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::uint64_t{1} << p.scale) * 16);
}
BENCHMARK(BM_rmat_generate)->Arg(12)->Arg(16);

void BM_symmetrize_dedup(benchmark::State& state) {
  Csr g = build_csr(bench_edges(static_cast<int>(state.range(0)), 16),
                    VertexId{1} << state.range(0));
  for (auto _ : state) {
    Csr u = symmetrize_dedup(g);
    benchmark::DoNotOptimize(u.col_indices.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_symmetrize_dedup)->Arg(12)->Arg(14);

void BM_build_partition_plan(benchmark::State& state) {
  Csr g = symmetrize_dedup(build_csr(bench_edges(14, 16), VertexId{1} << 14));
  Assignment a = partition_random(g.num_vertices, static_cast<std::uint32_t>(state.range(0)), 3);
  for (auto _ : state) {
    PartitionPlan plan = build_partition_plan(g, a, Duplication::All);
    benchmark::DoNotOptimize(plan.subgraphs.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_build_partition_plan)->Arg(2)->Arg(8);

void BM_biased_partitioner(benchmark::State& state) {
  Csr g = symmetrize_dedup(build_csr(bench_edges(13, 16), VertexId{1} << 13));
  for (auto _ : state) {
    Assignment a = partition_biased_random(g, 4, 3, 1.0);
    benchmark::DoNotOptimize(a.owner.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_vertices);
}
BENCHMARK(BM_biased_partitioner);

void BM_superstep_overhead(benchmark::State& state) {
  // per-superstep engine cost with the smallest possible workload
  std::uint32_t workers = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    auto r = microbench_overhead(workers, 200);
    benchmark::DoNotOptimize(r.total_ms);
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_superstep_overhead)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
