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

#include "mgraph/cost_model.hpp"

#include <cmath>

#include "mgraph/generate.hpp"

namespace mgraph {

PlanMetrics aggregate_metrics(const PartitionPlan& plan, const BorderMetrics& borders) {
  PlanMetrics m;
  m.n = plan.num_partitions();
  m.vertices_total = plan.num_global_vertices;
  m.edges = plan.num_global_edges;
  for (const auto& sub : plan.subgraphs) m.vertices += sub.num_vertices;
  for (std::uint32_t p = 0; p < m.n; ++p) m.locals += plan.local_count(p);
  m.border = borders.total_border;
  return m;
}

Prediction predict(const std::string& primitive, const GraphStats& stats, const PlanMetrics& m,
                   const DataFactors& f) {
  const double ei = static_cast<double>(m.edges);
  const double vi = static_cast<double>(m.vertices);
  const double bi = static_cast<double>(m.border);
  const double li = static_cast<double>(m.locals);
  const double v = static_cast<double>(m.vertices_total);
  const double d = static_cast<double>(stats.approx_diameter);
  const double half_d = std::ceil(d / 2.0);
  const double peers = static_cast<double>(m.n - 1);

  Prediction p;
  if (primitive == "bfs") {
    p = {ei, vi, bi, std::max(1.0, half_d)};
  } else if (primitive == "dobfs") {
    p = {f.a * ei, v, peers * v, std::max(1.0, half_d)};
  } else if (primitive == "sssp") {
    p = {f.b * ei, f.b * vi, 2.0 * f.b * bi, std::max(1.0, f.b * half_d)};
  } else if (primitive == "bc") {
    p = {2.0 * ei, 2.0 * vi + v, 5.0 * bi + 2.0 * peers * li, std::max(1.0, half_d)};
  } else if (primitive == "cc") {
    double s = static_cast<double>(f.cc_supersteps);
    double log_term = std::max(1.0, std::log2(std::max(2.0, d) / 2.0));
    p = {log_term * ei, s * vi, s * 2.0 * vi, s};
  } else if (primitive == "pr") {
    double s = static_cast<double>(f.pr_supersteps);
    p = {s * ei, s * bi, s * bi, s};
  } else {
    throw std::invalid_argument("predict: unknown primitive '" + primitive + "'");
  }
  if (m.n == 1) p.h = 0;
  return p;
}

namespace {

struct NopState {};

}  // namespace

MicrobenchResult microbench_overhead(std::uint32_t n_workers, std::uint64_t supersteps) {
  if (n_workers == 0) throw std::invalid_argument("microbench_overhead: no workers");
  if (supersteps < 10) throw std::invalid_argument("microbench_overhead: need S >= 10");

  // one self-loop vertex per worker: 1 vertex and 1 edge visited per
  // superstep, the smallest per-iteration workload
  EdgeList edges;
  for (VertexId v = 0; v < n_workers; ++v) edges.push_back({v, v, 0});
  Csr g = build_csr(edges, n_workers);
  Assignment a;
  a.num_partitions = n_workers;
  a.owner.resize(n_workers);
  for (VertexId v = 0; v < n_workers; ++v) a.owner[v] = v;
  PartitionPlan plan = build_partition_plan(g, a, Duplication::All);

  PrimitiveSpec<NopState> spec;
  spec.name = "microbench";
  spec.communication = CommMode::Selective;
  spec.init = [](NopState&, WorkerHandle& h) { h.push_initial(h.worker()); };
  spec.iteration_body = [](NopState&, WorkerHandle& h, const Frontier& in, Frontier&) {
    h.pipeline(in, [](VertexId, VertexId, EdgeId) { return true; },
               [](VertexId) { return true; }, 1);
  };
  spec.combine = [](NopState&, WorkerHandle&, VertexId, std::span<const VertexId>,
                    std::span<const Value>, std::uint64_t) { return false; };
  spec.stop_condition = [supersteps](const GlobalView& v) {
    return v.iteration + 1 >= supersteps;
  };

  auto rr = run_primitive(spec, plan, EngineConfig{});
  MicrobenchResult r;
  r.workers = n_workers;
  r.supersteps = rr.stats.supersteps;
  r.total_ms = rr.stats.wall_ms;
  r.per_iter_us = rr.stats.wall_ms * 1000.0 / static_cast<double>(rr.stats.supersteps);
  return r;
}

LinearFit linear_fit(std::span<const Sample> samples) {
  if (samples.size() < 2) throw std::invalid_argument("linear_fit: need at least 2 samples");
  double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    sx += s.x;
    sy += s.y;
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    sxx += (s.x - mx) * (s.x - mx);
    sxy += (s.x - mx) * (s.y - my);
    syy += (s.y - my) * (s.y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate samples (zero x variance)");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

OverheadFit fit_overheads(std::span<const Sample> microbench, std::span<const Sample> exchange) {
  if (microbench.size() < 3 || exchange.size() < 3)
    throw std::invalid_argument("fit_overheads: need at least 3 samples each");
  OverheadFit fit;
  fit.l_fit = linear_fit(microbench);
  fit.g_fit = linear_fit(exchange);
  fit.l_ms_per_superstep = fit.l_fit.slope;
  fit.g_ms_per_record = fit.g_fit.slope;
  return fit;
}

CompareReport compare(const Prediction& predicted, const RunStats& measured,
                      const BorderMetrics& borders, std::uint64_t num_global_vertices) {
  CompareReport rep;
  auto ratio = [](double m, double p) { return p == 0.0 ? 0.0 : m / p; };
  rep.w_ratio = ratio(static_cast<double>(measured.edges_examined), predicted.w);
  rep.c_ratio = ratio(static_cast<double>(measured.combine_ops), predicted.c);
  rep.h_ratio = ratio(static_cast<double>(measured.h_total()), predicted.h);
  rep.s_ratio = ratio(static_cast<double>(measured.supersteps), predicted.s);

  const std::uint32_t n = measured.n;
  if (measured.primitive == "bfs" || measured.primitive == "sssp") {
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint64_t sent = measured.h_from(i);
      std::uint64_t bound = borders.partition_border[i];
      // BFS: each border vertex crosses at most once per destination
      if (measured.primitive == "bfs" && sent > bound) {
        rep.violations.push_back("bfs: H from partition " + std::to_string(i) + " = " +
                                 std::to_string(sent) + " exceeds |B_i| = " +
                                 std::to_string(bound));
      }
    }
  } else if (measured.primitive == "pr") {
    for (std::size_t it = 0; it < measured.h_per_iter_by_src.size(); ++it) {
      for (std::uint32_t i = 0; i < n; ++i) {
        std::uint64_t sent = measured.h_per_iter_by_src[it][i];
        std::uint64_t expect = borders.partition_border[i];
        if (sent != expect) {
          rep.violations.push_back("pr: iteration " + std::to_string(it) + " H from partition " +
                                   std::to_string(i) + " = " + std::to_string(sent) +
                                   " != static sub-frontier " + std::to_string(expect));
        }
      }
    }
  } else if (measured.primitive == "dobfs") {
    // a worker's discoveries are distinct over a run, so each partition
    // broadcasts at most |V| records to each of its n-1 peers
    std::uint64_t bound = static_cast<std::uint64_t>(n - 1) * num_global_vertices;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (measured.h_from(i) > bound) {
        rep.violations.push_back("dobfs: broadcast H from partition " + std::to_string(i) +
                                 " = " + std::to_string(measured.h_from(i)) +
                                 " exceeds (n-1)|V| = " + std::to_string(bound));
      }
    }
  }
  return rep;
}

}  // namespace mgraph
