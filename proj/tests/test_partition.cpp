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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "fixtures.hpp"
#include "mgraph/partition.hpp"

using namespace mgraph;

TEST_CASE("partition_random: n=1 puts everything on partition 0") {
  Assignment a = partition_random(10, 1, 4);
  for (auto o : a.owner) CHECK(o == 0);
}

TEST_CASE("partition_random: sizes sum to |V|, owners in range") {
  Assignment a = partition_random(4, 2, 7);
  std::vector<int> sizes(2, 0);
  for (auto o : a.owner) {
    REQUIRE(o < 2);
    sizes[o]++;
  }
  CHECK(sizes[0] + sizes[1] == 4);
  CHECK_THROWS_AS(partition_random(4, 0, 1), std::invalid_argument);
}

TEST_CASE("partition_random: uniform assignment balances within 15% on most seeds") {
  const VertexId v = VertexId{1} << 12;
  const std::uint32_t n = 4;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Assignment a = partition_random(v, n, seed);
    std::vector<std::uint64_t> load(n, 0);
    for (auto o : a.owner) load[o]++;
    std::uint64_t max_load = *std::max_element(load.begin(), load.end());
    if (static_cast<double>(max_load) <= 1.15 * v / n) ok++;
  }
  CHECK(ok >= 9);
}

TEST_CASE("partition_biased_random: bias validation and bias=0 sanity") {
  Csr g = fixtures::rmat(8, 8, 5);
  CHECK_THROWS_AS(partition_biased_random(g, 2, 1, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(partition_biased_random(g, 2, 1, 1.5), std::invalid_argument);
  Assignment a = partition_biased_random(g, 4, 3, 0.0);
  std::vector<std::uint64_t> load(4, 0);
  for (auto o : a.owner) {
    REQUIRE(o < 4);
    load[o]++;
  }
  // unbiased sampler keeps rough balance
  for (auto l : load) CHECK(l > g.num_vertices / 16);
}

TEST_CASE("partition_biased_random: bias=1 on K4 clusters everything") {
  Csr g = fixtures::k4();
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Assignment a = partition_biased_random(g, 2, seed, 1.0);
    // after the first vertex every other vertex joins its partition
    for (auto o : a.owner) CHECK(o == a.owner[0]);
  }
}

TEST_CASE("partition_biased_random: bias=1 shrinks total border vs random on most seeds") {
  Csr g = fixtures::rmat(12, 16, 1);
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto random_plan = build_partition_plan(g, partition_random(g.num_vertices, 4, seed),
                                            Duplication::All);
    auto biased_plan = build_partition_plan(g, partition_biased_random(g, 4, seed, 1.0),
                                            Duplication::All);
    auto mr = border_metrics(random_plan);
    auto mb = border_metrics(biased_plan);
    if (mb.total_border <= mr.total_border) wins++;
  }
  CHECK(wins >= 4);
}

TEST_CASE("build_partition_plan: P4 duplicate-all hand trace") {
  PartitionPlan plan = fixtures::p4_two_way(Duplication::All);
  REQUIRE(plan.subgraphs.size() == 2);
  CHECK(plan.subgraphs[0].num_vertices == 4);
  CHECK(plan.subgraphs[1].num_vertices == 4);
  // partition 0 stores the arcs of vertices 0 and 1: 0->1, 1->0, 1->2
  CHECK(plan.subgraphs[0].num_edges() == 3);
  CHECK(plan.subgraphs[1].num_edges() == 3);
  // vertex 2 is a proxy with no outgoing edges on partition 0
  CHECK(plan.subgraphs[0].degree(2) == 0);
  CHECK(plan.to_local(0, 2) == 2);  // identity conversion
  // borders: vertex 2 from 0 to 1, vertex 1 from 1 to 0
  CHECK(plan.borders[0][1] == std::vector<VertexId>{2});
  CHECK(plan.borders[1][0] == std::vector<VertexId>{1});
}

TEST_CASE("build_partition_plan: P4 duplicate-1-hop renumbering") {
  PartitionPlan plan = fixtures::p4_two_way(Duplication::OneHop);
  // partition 0 hosts {0,1} as locals {0,1} plus a proxy for global 2
  CHECK(plan.subgraphs[0].num_vertices == 3);
  CHECK(plan.local_count(0) == 2);
  CHECK(plan.to_local(0, 2) == 2);
  CHECK(plan.to_global(0, 2) == 2);
  CHECK(plan.to_local(0, 3) == kInvalidVertex);
  // partition 1 hosts {2,3} as locals {0,1} plus a proxy for global 1
  CHECK(plan.subgraphs[1].num_vertices == 3);
  CHECK(plan.to_local(1, 2) == 0);
  CHECK(plan.to_local(1, 1) == 2);
  // conversion tables invert each other
  for (std::uint32_t p = 0; p < 2; ++p) {
    for (VertexId l = 0; l < plan.subgraphs[p].num_vertices; ++l)
      CHECK(plan.to_local(p, plan.to_global(p, l)) == l);
  }
}

TEST_CASE("build_partition_plan: n=1 is the graph itself") {
  Csr g = fixtures::star5();
  for (auto dup : {Duplication::All, Duplication::OneHop}) {
    PartitionPlan plan = build_partition_plan(g, fixtures::explicit_assignment({0, 0, 0, 0, 0}, 1), dup);
    CHECK(plan.subgraphs[0].row_offsets == g.row_offsets);
    CHECK(plan.subgraphs[0].col_indices == g.col_indices);
    CHECK(plan.local_count(0) == 5);
    auto m = border_metrics(plan);
    CHECK(m.total_border == 0);
    CHECK(m.edge_cut == 0);
  }
}

TEST_CASE("plan reconstructs the input arc multiset under both duplications") {
  Csr g = fixtures::rmat(8, 8, 17, true);
  for (auto dup : {Duplication::All, Duplication::OneHop}) {
    for (std::uint32_t n : {2u, 3u, 5u}) {
      Assignment a = partition_random(g.num_vertices, n, n * 31);
      PartitionPlan plan = build_partition_plan(g, a, dup);

      std::uint64_t hosted_total = 0;
      for (std::uint32_t p = 0; p < n; ++p) hosted_total += plan.local_count(p);
      CHECK(hosted_total == g.num_vertices);

      EdgeList all;
      EdgeId stored = 0;
      for (std::uint32_t p = 0; p < n; ++p) {
        const Csr& sub = plan.subgraphs[p];
        stored += sub.num_edges();
        for (VertexId lu = 0; lu < sub.num_vertices; ++lu) {
          for (EdgeId e = sub.row_offsets[lu]; e < sub.row_offsets[lu + 1]; ++e) {
            all.push_back({plan.to_global(p, lu), plan.to_global(p, sub.col_indices[e]),
                           sub.edge_values[e]});
          }
        }
      }
      CHECK(stored == g.num_edges());
      Csr rebuilt = build_csr(all, g.num_vertices, true);
      CHECK(rebuilt.row_offsets == g.row_offsets);
      CHECK(rebuilt.col_indices == g.col_indices);
      CHECK(rebuilt.edge_values == g.edge_values);
    }
  }
}

TEST_CASE("duplicate-1-hop local IDs: hosted vertices first") {
  Csr g = fixtures::rmat(7, 4, 2);
  Assignment a = partition_random(g.num_vertices, 3, 5);
  PartitionPlan plan = build_partition_plan(g, a, Duplication::OneHop);
  for (std::uint32_t p = 0; p < 3; ++p) {
    for (VertexId l = 0; l < plan.subgraphs[p].num_vertices; ++l) {
      bool hosted = plan.owner_of(plan.to_global(p, l)) == p;
      CHECK(hosted == (l < plan.local_count(p)));
      if (!hosted) CHECK(plan.subgraphs[p].degree(l) == 0);
    }
  }
}

TEST_CASE("border_metrics: P4 split {0,1|2,3}") {
  auto m = border_metrics(fixtures::p4_two_way());
  CHECK(m.pair_border[0][1] == 1);
  CHECK(m.pair_border[1][0] == 1);
  CHECK(m.partition_border[0] == 1);
  CHECK(m.edge_cut == 1);
}

TEST_CASE("border_metrics: K4 split {0,1|2,3}") {
  PartitionPlan plan =
      build_partition_plan(fixtures::k4(), fixtures::explicit_assignment({0, 0, 1, 1}, 2),
                           Duplication::All);
  auto m = border_metrics(plan);
  CHECK(m.pair_border[0][1] == 2);
  CHECK(m.pair_border[1][0] == 2);
  CHECK(m.edge_cut == 4);
}

TEST_CASE("border compression: |B_ij| never exceeds the cut arcs from i to j") {
  Csr g = fixtures::rmat(9, 12, 23);
  Assignment a = partition_random(g.num_vertices, 4, 8);
  PartitionPlan plan = build_partition_plan(g, a, Duplication::All);
  auto m = border_metrics(plan);
  std::vector<std::vector<std::uint64_t>> cut_arcs(4, std::vector<std::uint64_t>(4, 0));
  for (VertexId u = 0; u < g.num_vertices; ++u)
    for (VertexId v : g.neighbors(u))
      if (a.owner[u] != a.owner[v]) cut_arcs[a.owner[u]][a.owner[v]]++;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(m.pair_border[i][j] <= cut_arcs[i][j]);
}

TEST_CASE("build_partition_plan is deterministic") {
  Csr g = fixtures::rmat(8, 8, 3);
  Assignment a = partition_random(g.num_vertices, 4, 9);
  for (auto dup : {Duplication::All, Duplication::OneHop}) {
    PartitionPlan p1 = build_partition_plan(g, a, dup);
    PartitionPlan p2 = build_partition_plan(g, a, dup);
    for (std::uint32_t p = 0; p < 4; ++p) {
      CHECK(p1.subgraphs[p].row_offsets == p2.subgraphs[p].row_offsets);
      CHECK(p1.subgraphs[p].col_indices == p2.subgraphs[p].col_indices);
      CHECK(p1.locals[p] == p2.locals[p]);
      CHECK(p1.borders[p] == p2.borders[p]);
    }
  }
}

TEST_CASE("empty partitions are tolerated") {
  Csr g = fixtures::p4();
  Assignment a = fixtures::explicit_assignment({0, 0, 0, 0}, 3);  // partitions 1,2 empty
  for (auto dup : {Duplication::All, Duplication::OneHop}) {
    PartitionPlan plan = build_partition_plan(g, a, dup);
    CHECK(plan.local_count(1) == 0);
    CHECK(plan.local_count(2) == 0);
    auto m = border_metrics(plan);
    CHECK(m.total_border == 0);
  }
}
