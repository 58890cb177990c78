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

#include <span>
#include <string>
#include <vector>

#include "mgraph/csr.hpp"
#include "mgraph/engine.hpp"
#include "mgraph/partition.hpp"

// BSP accounting: a run costs W + Hg + Sl, with W local work, H transmitted
// vertex records, S supersteps, g seconds per record and l per-superstep
// overhead. Predictions carry unit constants on the leading terms, so
// comparisons check bounds and ratios, not equalities (PR's per-iteration H
// is the exception: it is an exact count).
namespace mgraph {

struct PlanMetrics {
  std::uint64_t edges = 0;           // |E_i| (aggregate over partitions)
  std::uint64_t vertices = 0;        // |V_i|
  std::uint64_t border = 0;          // |B_i|
  std::uint64_t locals = 0;          // |L_i|
  std::uint64_t vertices_total = 0;  // |V|
  std::uint32_t n = 1;
};

PlanMetrics aggregate_metrics(const PartitionPlan& plan, const BorderMetrics& borders);

// data-dependent scale factors, 1 unless supplied from a measurement
struct DataFactors {
  double a = 1.0;                   // direction-optimized work fraction
  double b = 1.0;                   // average re-relaxation factor
  std::uint64_t cc_supersteps = 5;  // reported range upper end
  std::uint64_t pr_supersteps = 1;
};

struct Prediction {
  double w = 0, c = 0, h = 0, s = 0;
};

// leading-term prediction per primitive from graph statistics and plan
// metrics only; throws on an unknown primitive name
Prediction predict(const std::string& primitive, const GraphStats& stats, const PlanMetrics& m,
                   const DataFactors& f = {});

// ---------------------------------------------------------------------------
// synchronization-overhead microbenchmark: every worker visits one vertex
// and one edge per superstep, the smallest possible per-iteration workload

struct MicrobenchResult {
  std::uint32_t workers = 1;
  std::uint64_t supersteps = 0;
  double total_ms = 0;
  double per_iter_us = 0;
};

MicrobenchResult microbench_overhead(std::uint32_t n_workers, std::uint64_t supersteps);

// ---------------------------------------------------------------------------
// least-squares fitting of g and l

struct Sample {
  double x = 0, y = 0;
};

struct LinearFit {
  double slope = 0, intercept = 0, r2 = 0;
};

// throws on fewer than two samples or zero x-variance
LinearFit linear_fit(std::span<const Sample> samples);

struct OverheadFit {
  double l_ms_per_superstep = 0;  // slope of time vs S
  double g_ms_per_record = 0;     // slope of exchange time vs records
  LinearFit l_fit, g_fit;
};

// microbench samples: (supersteps, total ms); exchange samples:
// (records transmitted, exchange ms); at least 3 of each
OverheadFit fit_overheads(std::span<const Sample> microbench, std::span<const Sample> exchange);

// ---------------------------------------------------------------------------
// predicted vs measured

struct CompareReport {
  double w_ratio = 0, c_ratio = 0, h_ratio = 0, s_ratio = 0;  // measured / predicted
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Ratio report plus hard checks of the communication bounds: BFS total
// transmissions from i never exceed |B_i|; PR sends exactly the static
// remote sub-frontier every iteration; DOBFS broadcast stays within
// (n-1)|V|. A violated bound is an engine bug, not an estimation error.
CompareReport compare(const Prediction& predicted, const RunStats& measured,
                      const BorderMetrics& borders, std::uint64_t num_global_vertices);

}  // namespace mgraph
