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

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mgraph/cost_model.hpp"
#include "mgraph/csr.hpp"
#include "mgraph/generate.hpp"
#include "mgraph/io.hpp"
#include "mgraph/partition.hpp"
#include "mgraph/primitives.hpp"
#include "mgraph/reference.hpp"
#include "mgraph/stats_json.hpp"

using nlohmann::json;
using namespace mgraph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct Options {
  std::string primitive = "bfs";
  std::string graph_path;
  std::string rmat_spec;
  std::string grid_spec;
  std::uint32_t parts = 1;
  std::string partitioner = "random";
  std::string dup = "all";
  std::string comm;
  std::string alloc = "just";
  long long source = -1;
  std::uint32_t num_sources = 0;
  std::uint64_t seed = 0;
  double do_a = 0.01, do_b = 0.1;
  double damping = 0.85, epsilon = 0.01;
  std::uint64_t max_iter = 1000;
  std::uint32_t repeat = 10;
  std::string out = "-";
  std::string results_path;
  std::string emit_sizing;
  std::string prealloc_from;
  std::string weight_range = "0,64";
  bool no_symmetrize = false;
  bool mark_preds = false;
  std::string fault_drop;
  std::uint32_t inflate = 1;
  std::uint64_t mem_cap = 0;
};

void add_common_flags(CLI::App* cmd, Options& o, bool with_run_knobs = true) {
  cmd->add_option("--graph", o.graph_path, "edge list or Matrix Market file");
  cmd->add_option("--rmat", o.rmat_spec, "scale,ef[,A,B,C,D]");
  cmd->add_option("--grid", o.grid_spec, "rows,cols four-neighbor grid");
  cmd->add_option("--seed", o.seed, "seed for every random choice");
  cmd->add_option("--weights", o.weight_range, "lo,hi random weight range (default 0,64)");
  cmd->add_flag("--no-symmetrize", o.no_symmetrize, "keep the graph directed as loaded");
  if (!with_run_knobs) return;
  cmd->add_option("--primitive", o.primitive, "bfs|dobfs|sssp|cc|bc|pr")
      ->check(CLI::IsMember({"bfs", "dobfs", "sssp", "cc", "bc", "pr"}));
  cmd->add_option("--parts", o.parts, "number of partitions / workers");
  cmd->add_option("--partitioner", o.partitioner, "random | biased:<f> | file:<path>");
  cmd->add_option("--dup", o.dup, "all | onehop")->check(CLI::IsMember({"all", "onehop"}));
  cmd->add_option("--comm", o.comm, "selective | broadcast override (where a primitive allows)")
      ->check(CLI::IsMember({"selective", "broadcast"}));
  cmd->add_option("--alloc", o.alloc, "just | fixed:<path> | max | fused");
  cmd->add_option("--source", o.source, "source vertex for traversal primitives");
  cmd->add_option("--sources", o.num_sources, "number of random sources (traversal loop)");
  cmd->add_option("--do-a", o.do_a, "forward->backward switch threshold");
  cmd->add_option("--do-b", o.do_b, "backward->forward switch threshold");
  cmd->add_option("--damping", o.damping, "PageRank damping factor");
  cmd->add_option("--epsilon", o.epsilon, "PageRank convergence threshold ratio");
  cmd->add_option("--max-iter", o.max_iter, "PageRank iteration cap");
  cmd->add_option("--repeat", o.repeat, "timing repetitions (results must agree)");
  cmd->add_flag("--mark-preds", o.mark_preds, "record predecessors (bfs/dobfs/sssp)");
  cmd->add_option("--emit-sizing", o.emit_sizing, "write role->ratio sizing factors JSON");
  cmd->add_option("--prealloc-from", o.prealloc_from, "read sizing factors JSON");
  cmd->add_option("--fault-drop", o.fault_drop, "src,dst,iter: drop one package (testing)");
  cmd->add_option("--inflate", o.inflate, "send every record k times (H-inflation mode)");
  cmd->add_option("--mem-cap", o.mem_cap, "per-worker buffer budget in bytes (0 = unlimited)");
}

std::vector<double> parse_csv_numbers(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw std::runtime_error(std::string("cannot parse ") + what + ": '" + s + "'");
    }
  }
  if (out.empty()) throw std::runtime_error(std::string("empty ") + what);
  return out;
}

struct LoadedCsr {
  Csr graph;
  std::string name;
};

LoadedCsr load_graph(const Options& o, bool want_weights) {
  LoadedCsr out;
  EdgeList edges;
  VertexId num_vertices = 0;
  bool file_weights = false;

  if (!o.rmat_spec.empty()) {
    auto nums = parse_csv_numbers(o.rmat_spec, "--rmat");
    if (nums.size() != 2 && nums.size() != 6)
      throw std::runtime_error("--rmat expects scale,ef or scale,ef,A,B,C,D");
    RmatParams p;
    p.scale = static_cast<int>(nums[0]);
    p.edge_factor = static_cast<int>(nums[1]);
    if (nums.size() == 6) {
      p.a = nums[2];
      p.b = nums[3];
      p.c = nums[4];
      p.d = nums[5];
    }
    edges = rmat_generate(p, o.seed);
    num_vertices = VertexId{1} << p.scale;
    out.name = "rmat_" + std::to_string(p.scale) + "_" + std::to_string(p.edge_factor);
  } else if (!o.grid_spec.empty()) {
    auto nums = parse_csv_numbers(o.grid_spec, "--grid");
    if (nums.size() != 2) throw std::runtime_error("--grid expects rows,cols");
    VertexId rows = static_cast<VertexId>(nums[0]), cols = static_cast<VertexId>(nums[1]);
    edges = grid_edges(rows, cols);
    num_vertices = rows * cols;
    out.name = "grid_" + std::to_string(rows) + "x" + std::to_string(cols);
  } else if (!o.graph_path.empty()) {
    LoadedGraph lg = load_edge_list(o.graph_path);
    edges = std::move(lg.edges);
    num_vertices = lg.num_vertices;
    file_weights = lg.has_weights;
    out.name = o.graph_path;
  } else {
    throw std::runtime_error("no graph given: use --graph, --rmat or --grid");
  }

  out.graph = build_csr(edges, num_vertices, file_weights);
  if (!o.no_symmetrize) out.graph = symmetrize_dedup(out.graph);
  if (want_weights && !out.graph.has_weights()) {
    auto range = parse_csv_numbers(o.weight_range, "--weights");
    if (range.size() != 2) throw std::runtime_error("--weights expects lo,hi");
    out.graph = assign_random_weights(out.graph, static_cast<Weight>(range[0]),
                                      static_cast<Weight>(range[1]), o.seed + 101);
  }
  return out;
}

Assignment make_assignment(const Csr& g, const Options& o) {
  if (o.partitioner == "random") return partition_random(g.num_vertices, o.parts, o.seed);
  if (o.partitioner.rfind("biased:", 0) == 0) {
    double bias = std::stod(o.partitioner.substr(7));
    return partition_biased_random(g, o.parts, o.seed, bias);
  }
  if (o.partitioner.rfind("file:", 0) == 0) {
    Assignment a = load_assignment(o.partitioner.substr(5), g.num_vertices);
    a.num_partitions = std::max(a.num_partitions, o.parts);
    return a;
  }
  throw std::runtime_error("unknown --partitioner '" + o.partitioner + "'");
}

EngineConfig make_engine_config(const Options& o) {
  EngineConfig cfg;
  auto load_factors = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sizing file " + path);
    return sizing_from_json(json::parse(in));
  };
  if (o.alloc == "just") {
    cfg.policy.kind = AllocPolicyKind::JustEnough;
  } else if (o.alloc == "max") {
    cfg.policy.kind = AllocPolicyKind::Maximum;
  } else if (o.alloc == "fused" || o.alloc.rfind("fused:", 0) == 0) {
    cfg.policy.kind = AllocPolicyKind::PreallocFused;
    if (o.alloc.size() > 6) cfg.policy.factors = load_factors(o.alloc.substr(6));
  } else if (o.alloc == "fixed" || o.alloc.rfind("fixed:", 0) == 0) {
    cfg.policy.kind = AllocPolicyKind::FixedPrealloc;
    if (o.alloc.size() > 6) cfg.policy.factors = load_factors(o.alloc.substr(6));
  } else {
    throw std::runtime_error("unknown --alloc '" + o.alloc + "'");
  }
  if (!o.prealloc_from.empty()) {
    cfg.policy.factors = load_factors(o.prealloc_from);
    if (cfg.policy.kind == AllocPolicyKind::JustEnough)
      cfg.policy.kind = AllocPolicyKind::FixedPrealloc;
  }
  cfg.policy.hard_cap_bytes = o.mem_cap;
  if (!o.comm.empty())
    cfg.comm_override = o.comm == "broadcast" ? CommMode::Broadcast : CommMode::Selective;
  if (!o.fault_drop.empty()) {
    auto nums = parse_csv_numbers(o.fault_drop, "--fault-drop");
    if (nums.size() != 3) throw std::runtime_error("--fault-drop expects src,dst,iter");
    cfg.drop_package = DropPackage{static_cast<std::uint32_t>(nums[0]),
                                   static_cast<std::uint32_t>(nums[1]),
                                   static_cast<std::uint64_t>(nums[2])};
  }
  cfg.h_inflation = o.inflate;
  return cfg;
}

Duplication parse_dup(const Options& o) {
  return o.dup == "onehop" ? Duplication::OneHop : Duplication::All;
}

VertexId pick_source(const Options& o, const Csr& g) {
  if (o.source >= 0) {
    if (static_cast<VertexId>(o.source) >= g.num_vertices)
      throw std::runtime_error("--source out of range");
    return static_cast<VertexId>(o.source);
  }
  return 0;
}

std::vector<VertexId> pick_sources(const Options& o, const Csr& g) {
  if (o.num_sources == 0) return {pick_source(o, g)};
  std::mt19937_64 rng(o.seed + 7);
  std::uniform_int_distribution<VertexId> pick(0, g.num_vertices - 1);
  std::vector<VertexId> out;
  out.reserve(o.num_sources);
  for (std::uint32_t i = 0; i < o.num_sources; ++i) out.push_back(pick(rng));
  return out;
}

// one primitive execution with uniform result handling
struct Outcome {
  RunStats stats;
  std::vector<double> values;  // per-vertex result in global ID space
  std::string value_kind;
  json extra = json::object();
};

Outcome run_once(const Options& o, const PartitionPlan& plan, const EngineConfig& cfg,
                 VertexId source) {
  Outcome out;
  if (o.primitive == "bfs") {
    auto r = bfs(plan, {.source = source, .mark_preds = o.mark_preds}, cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "label";
    out.values.reserve(r.labels.size());
    for (Label l : r.labels) out.values.push_back(l == kInfLabel ? -1 : static_cast<double>(l));
  } else if (o.primitive == "dobfs") {
    auto r = dobfs(plan,
                   {.source = source, .do_a = o.do_a, .do_b = o.do_b, .mark_preds = o.mark_preds},
                   cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "label";
    out.values.reserve(r.labels.size());
    for (Label l : r.labels) out.values.push_back(l == kInfLabel ? -1 : static_cast<double>(l));
    out.extra["direction_log"] = r.direction_log;
    out.extra["forward_edges"] = r.forward_edges;
    out.extra["backward_edges"] = r.backward_edges;
  } else if (o.primitive == "sssp") {
    auto r = sssp(plan, source, o.mark_preds, cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "dist";
    out.values.reserve(r.dists.size());
    for (Dist d : r.dists) out.values.push_back(d == kInfDist ? -1 : static_cast<double>(d));
  } else if (o.primitive == "cc") {
    auto r = cc(plan, cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "component";
    out.values.assign(r.components.begin(), r.components.end());
  } else if (o.primitive == "bc") {
    auto r = bc(plan, source, cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "bc";
    out.values = std::move(r.bc);
  } else if (o.primitive == "pr") {
    auto r = pagerank(plan, {.damping = o.damping, .epsilon = o.epsilon, .max_iter = o.max_iter},
                      cfg);
    out.stats = std::move(r.stats);
    out.value_kind = "rank";
    out.values = std::move(r.ranks);
    out.extra["iterations"] = r.iterations;
    out.extra["rank_sums"] = r.rank_sums;
  } else {
    throw std::runtime_error("unknown primitive '" + o.primitive + "'");
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << "\n";
}

json config_json(const Options& o, const std::string& graph_name) {
  return json{{"primitive", o.primitive},
              {"graph", graph_name},
              {"parts", o.parts},
              {"partitioner", o.partitioner},
              {"dup", o.dup},
              {"comm", o.comm},
              {"alloc", o.alloc},
              {"seed", o.seed},
              {"repeat", o.repeat},
              {"source", o.source},
              {"sources", o.num_sources}};
}

// invariants a finished run must uphold; a failure here is an engine bug
std::vector<std::string> check_run_invariants(const Options& o, const PartitionPlan& plan,
                                              const BorderMetrics& borders, const Outcome& r) {
  std::vector<std::string> bad;
  const RunStats& s = r.stats;
  if (o.primitive == "bfs" || o.primitive == "dobfs") {
    double max_label = -1;
    for (double v : r.values) max_label = std::max(max_label, v);
    std::uint64_t expect_s = max_label < 0 ? 1 : static_cast<std::uint64_t>(max_label) + 1;
    if (s.supersteps != expect_s)
      bad.push_back("S=" + std::to_string(s.supersteps) +
                    " != max finite label + 1 = " + std::to_string(expect_s));
  }
  if (o.primitive == "bfs" && s.communication == "selective") {
    for (std::uint32_t i = 0; i < s.n; ++i) {
      if (s.h_from(i) > borders.partition_border[i])
        bad.push_back("H from " + std::to_string(i) + " exceeds |B_i|");
    }
  }
  if (o.primitive == "dobfs") {
    std::uint64_t bound = static_cast<std::uint64_t>(s.n - 1) * plan.num_global_vertices;
    for (std::uint32_t i = 0; i < s.n; ++i)
      if (s.h_from(i) > bound) bad.push_back("broadcast H from a partition exceeds (n-1)|V|");
  }
  if (o.primitive == "pr") {
    for (double sum : r.extra.at("rank_sums").get<std::vector<double>>()) {
      if (std::abs(sum - 1.0) > 1e-9) {
        bad.push_back("rank sum " + std::to_string(sum) + " drifts from 1");
        break;
      }
    }
    bool h_exact = true;
    for (const auto& per_src : s.h_per_iter_by_src) {
      for (std::uint32_t i = 0; i < s.n; ++i)
        if (per_src[i] != borders.partition_border[i]) h_exact = false;
    }
    if (!h_exact) bad.push_back("pr per-iteration H is not the static sub-frontier size");
  }
  return bad;
}

// ---------------------------------------------------------------------------

int cmd_run(const Options& o) {
  LoadedCsr g = load_graph(o, o.primitive == "sssp");
  Assignment a = make_assignment(g.graph, o);
  PartitionPlan plan = build_partition_plan(g.graph, a, parse_dup(o));
  BorderMetrics borders = border_metrics(plan);
  EngineConfig cfg = make_engine_config(o);

  auto sources = pick_sources(o, g.graph);
  std::uint32_t repeat = std::max(1u, o.repeat);
  Outcome result;
  std::vector<double> bc_accum;
  double wall_sum = 0;
  std::vector<std::string> violations;

  for (VertexId src : sources) {
    Outcome first;
    for (std::uint32_t rep = 0; rep < repeat; ++rep) {
      Outcome r = run_once(o, plan, cfg, src);
      wall_sum += r.stats.wall_ms;
      if (rep == 0) {
        first = std::move(r);
      } else if (r.values != first.values || r.stats.supersteps != first.stats.supersteps) {
        violations.push_back("nondeterministic repeat for source " + std::to_string(src));
      }
    }
    auto bad = check_run_invariants(o, plan, borders, first);
    violations.insert(violations.end(), bad.begin(), bad.end());
    if (o.primitive == "bc" && sources.size() > 1) {
      if (bc_accum.empty()) bc_accum.assign(first.values.size(), 0.0);
      for (std::size_t i = 0; i < first.values.size(); ++i) bc_accum[i] += first.values[i];
    }
    result = std::move(first);
  }
  if (!bc_accum.empty()) result.values = bc_accum;

  result.stats.partitioner = o.partitioner;
  json report = to_json(result.stats);
  report["schema"] = 1;
  report["command"] = "run";
  report["config"] = config_json(o, g.name);
  report["wall_ms_mean"] = wall_sum / (repeat * sources.size());
  report["borders"] = to_json(borders);
  report["violations"] = violations;
  for (auto& [k, v] : result.extra.items()) report[k] = v;

  if (!o.results_path.empty()) {
    std::ofstream f(o.results_path);
    if (!f) throw std::runtime_error("cannot write " + o.results_path);
    for (double v : result.values) f << v << "\n";
  }
  if (!o.emit_sizing.empty())
    write_text(o.emit_sizing, sizing_to_json(record_sizing_factors(result.stats, plan)).dump(2));

  write_text(o.out, report.dump(2));
  return violations.empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o) {
  LoadedCsr g = load_graph(o, o.primitive == "sssp");
  Assignment a = make_assignment(g.graph, o);
  PartitionPlan plan = build_partition_plan(g.graph, a, parse_dup(o));
  EngineConfig cfg = make_engine_config(o);

  Assignment single;
  single.num_partitions = 1;
  single.owner.assign(g.graph.num_vertices, 0);
  PartitionPlan plan1 = build_partition_plan(g.graph, single, parse_dup(o));
  EngineConfig cfg1;  // plain configuration for the baseline run

  VertexId src = pick_source(o, g.graph);
  Outcome multi = run_once(o, plan, cfg, src);
  Outcome one = run_once(o, plan1, cfg1, src);

  // independent sequential oracle
  std::vector<double> oracle;
  bool exact = true;
  if (o.primitive == "bfs" || o.primitive == "dobfs") {
    for (Label l : reference::bfs_levels(g.graph, src))
      oracle.push_back(l == kInfLabel ? -1 : static_cast<double>(l));
  } else if (o.primitive == "sssp") {
    for (Dist d : reference::dijkstra(g.graph, src))
      oracle.push_back(d == kInfDist ? -1 : static_cast<double>(d));
  } else if (o.primitive == "cc") {
    for (VertexId c : reference::connected_components(g.graph)) oracle.push_back(c);
  } else if (o.primitive == "bc") {
    oracle = reference::brandes_bc(g.graph, src);
    exact = false;
  } else {
    oracle = reference::pagerank_power(g.graph, o.damping, o.epsilon, o.max_iter).ranks;
    exact = false;
  }

  int mismatches = 0;
  auto complain = [&](const char* what, VertexId v, double got, double want) {
    if (mismatches < 20)
      std::cerr << "mismatch (" << what << ") vertex " << v << ": got " << got << " want " << want
                << "\n";
    mismatches++;
  };
  for (VertexId v = 0; v < g.graph.num_vertices; ++v) {
    double m = multi.values[v], s1 = one.values[v], ref = oracle[v];
    if (exact) {
      if (m != s1) complain("n vs 1", v, m, s1);
      if (m != ref) complain("oracle", v, m, ref);
    } else {
      if (std::abs(m - s1) / std::max({std::abs(m), std::abs(s1), 1e-12}) > 1e-6)
        complain("n vs 1", v, m, s1);
      if (std::abs(m - ref) / std::max({std::abs(m), std::abs(ref), 1e-12}) > 1e-6)
        complain("oracle", v, m, ref);
    }
  }
  if (mismatches == 0) {
    std::cout << "validate " << o.primitive << " on " << g.name << " parts=" << plan.num_partitions()
              << ": OK (" << g.graph.num_vertices << " vertices agree)\n";
    return kExitOk;
  }
  std::cerr << "validate " << o.primitive << ": " << mismatches << " mismatching vertices\n";
  return kExitViolation;
}

// ---------------------------------------------------------------------------

struct BenchRow {
  std::string primitive, graph, partitioner, policy;
  std::uint32_t n;
  double wall_ms;
  std::uint64_t w, h, s, peak_bytes, reallocs, border;
};

int cmd_bench(const Options& base, const std::string& parts_list, const std::string& alloc_list,
              const std::string& partitioner_list) {
  std::vector<std::uint32_t> parts;
  for (double p : parse_csv_numbers(parts_list.empty() ? "1,2,4" : parts_list, "--sweep-parts"))
    parts.push_back(static_cast<std::uint32_t>(p));
  std::vector<std::string> allocs{base.alloc};
  if (!alloc_list.empty()) {
    allocs.clear();
    std::stringstream ss(alloc_list);
    std::string item;
    while (std::getline(ss, item, ',')) allocs.push_back(item);
  }
  std::vector<std::string> partitioners{base.partitioner};
  if (!partitioner_list.empty()) {
    partitioners.clear();
    std::stringstream ss(partitioner_list);
    std::string item;
    while (std::getline(ss, item, '+')) partitioners.push_back(item);
  }

  LoadedCsr g = load_graph(base, base.primitive == "sssp");
  VertexId src = pick_source(base, g.graph);
  std::vector<BenchRow> rows;
  for (std::uint32_t n : parts) {
    for (const auto& part : partitioners) {
      for (const auto& alloc : allocs) {
        Options o = base;
        o.parts = n;
        o.partitioner = part;
        o.alloc = alloc;
        Assignment a = make_assignment(g.graph, o);
        PartitionPlan plan = build_partition_plan(g.graph, a, parse_dup(o));
        BorderMetrics borders = border_metrics(plan);
        EngineConfig cfg = make_engine_config(o);
        double wall = 0;
        Outcome r;
        std::uint32_t repeat = std::max(1u, o.repeat);
        for (std::uint32_t rep = 0; rep < repeat; ++rep) {
          r = run_once(o, plan, cfg, src);
          wall += r.stats.wall_ms;
        }
        rows.push_back({o.primitive, g.name, part, alloc, n, wall / repeat,
                        r.stats.edges_examined, r.stats.h_total(), r.stats.supersteps,
                        r.stats.peak_bytes, r.stats.reallocs, borders.total_border});
      }
    }
  }

  std::ostringstream csv;
  csv << "primitive,graph,n,partitioner,policy,wall_ms,W,H,S,peak_bytes,reallocs,border\n";
  for (const auto& r : rows) {
    csv << r.primitive << ',' << r.graph << ',' << r.n << ',' << r.partitioner << ',' << r.policy
        << ',' << r.wall_ms << ',' << r.w << ',' << r.h << ',' << r.s << ',' << r.peak_bytes
        << ',' << r.reallocs << ',' << r.border << "\n";
  }
  // geometric-mean speedup against the n=1 row of the same configuration
  for (const auto& part : partitioners) {
    for (const auto& alloc : allocs) {
      double base_ms = -1;
      for (const auto& r : rows)
        if (r.n == 1 && r.partitioner == part && r.policy == alloc) base_ms = r.wall_ms;
      if (base_ms <= 0) continue;
      for (std::uint32_t n : parts) {
        double log_sum = 0;
        int count = 0;
        for (const auto& r : rows) {
          if (r.n == n && r.partitioner == part && r.policy == alloc && r.wall_ms > 0) {
            log_sum += std::log(base_ms / r.wall_ms);
            count++;
          }
        }
        if (count)
          csv << "# geomean_speedup,n=" << n << ",partitioner=" << part << ",policy=" << alloc
              << "," << std::exp(log_sum / count) << "\n";
      }
    }
  }
  write_text(base.out, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_model(const Options& o, const std::string& stats_path, const std::string& inflate_list,
              const std::string& microbench_list) {
  LoadedCsr g = load_graph(o, o.primitive == "sssp");
  Assignment a = make_assignment(g.graph, o);
  PartitionPlan plan = build_partition_plan(g.graph, a, parse_dup(o));
  BorderMetrics borders = border_metrics(plan);
  EngineConfig cfg = make_engine_config(o);
  VertexId src = pick_source(o, g.graph);

  RunStats measured;
  if (!stats_path.empty()) {
    std::ifstream in(stats_path);
    if (!in) throw std::runtime_error("cannot open " + stats_path);
    measured = run_stats_from_json(json::parse(in));
  } else {
    measured = run_once(o, plan, cfg, src).stats;
  }

  GraphStats gstats = compute_stats(g.graph, 16, o.seed);
  DataFactors factors;
  if (o.primitive == "pr") factors.pr_supersteps = measured.supersteps;
  if (o.primitive == "cc") factors.cc_supersteps = measured.supersteps;
  Prediction pred = predict(o.primitive, gstats, aggregate_metrics(plan, borders), factors);
  CompareReport rep = compare(pred, measured, borders, g.graph.num_vertices);

  // l from the 1-vertex-1-edge loop, g from H-inflated reruns
  std::vector<Sample> micro;
  for (double s : parse_csv_numbers(microbench_list.empty() ? "50,100,200" : microbench_list,
                                    "--microbench-s")) {
    auto mb = microbench_overhead(std::max(1u, o.parts), static_cast<std::uint64_t>(s));
    micro.push_back({static_cast<double>(mb.supersteps), mb.total_ms});
  }
  std::vector<Sample> exch;
  for (double k :
       parse_csv_numbers(inflate_list.empty() ? "1,2,4" : inflate_list, "--inflate-k")) {
    Options oi = o;
    oi.inflate = static_cast<std::uint32_t>(k);
    EngineConfig ci = make_engine_config(oi);
    Outcome r = run_once(oi, plan, ci, src);
    exch.push_back({static_cast<double>(r.stats.wire_records), r.stats.exchange_ms});
  }
  OverheadFit fit = fit_overheads(micro, exch);

  // seconds-per-edge from a single-partition run of plain BFS
  Assignment single;
  single.num_partitions = 1;
  single.owner.assign(g.graph.num_vertices, 0);
  PartitionPlan plan1 = build_partition_plan(g.graph, single, Duplication::All);
  BfsResult wfit = bfs(plan1, {.source = src});
  double w_unit = wfit.stats.edges_examined
                      ? wfit.stats.wall_ms / static_cast<double>(wfit.stats.edges_examined)
                      : 0.0;
  double modeled_ms = static_cast<double>(measured.edges_examined) * w_unit +
                      static_cast<double>(measured.h_total()) * fit.g_ms_per_record +
                      static_cast<double>(measured.supersteps) * fit.l_ms_per_superstep;

  json report{{"schema", 1},
              {"command", "model"},
              {"config", config_json(o, g.name)},
              {"graph_stats",
               {{"vertices", gstats.num_vertices},
                {"edges", gstats.num_edges},
                {"max_degree", gstats.max_degree},
                {"avg_degree", gstats.avg_degree},
                {"approx_diameter", gstats.approx_diameter}}},
              {"predicted", to_json(pred)},
              {"measured", to_json(measured)},
              {"compare", to_json(rep)},
              {"g_ms_per_record", fit.g_ms_per_record},
              {"l_ms_per_superstep", fit.l_ms_per_superstep},
              {"g_fit_r2", fit.g_fit.r2},
              {"l_fit_r2", fit.l_fit.r2},
              {"w_unit_ms_per_edge", w_unit},
              {"modeled_ms", modeled_ms}};
  write_text(o.out, report.dump(2));
  return rep.ok() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o, bool undirected, bool with_weights) {
  Options raw = o;
  raw.no_symmetrize = !undirected;
  LoadedCsr g = load_graph(raw, with_weights);
  EdgeList edges = extract_edges(g.graph);
  if (undirected) {
    EdgeList once;
    for (const auto& e : edges)
      if (e.src < e.dst) once.push_back(e);
    edges = std::move(once);
  }
  if (o.out == "-" || o.out.empty()) throw std::runtime_error("gen: --out must be a file path");
  save_edge_list(o.out, edges, g.graph.has_weights());
  std::cout << "wrote " << edges.size() << " edges over " << g.graph.num_vertices
            << " vertices to " << o.out << "\n";
  return kExitOk;
}

int cmd_partition(const Options& o) {
  LoadedCsr g = load_graph(o, false);
  Assignment a = make_assignment(g.graph, o);
  PartitionPlan plan = build_partition_plan(g.graph, a, parse_dup(o));
  BorderMetrics m = border_metrics(plan);
  if (o.out == "-" || o.out.empty())
    throw std::runtime_error("partition: --out must be a file path");
  save_assignment(o.out, a);
  json summary{{"schema", 1},
               {"command", "partition"},
               {"parts", a.num_partitions},
               {"partitioner", o.partitioner},
               {"borders", to_json(m)}};
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bulk-synchronous multi-worker graph analytics"};
  app.require_subcommand(1);

  Options run_opts, val_opts, bench_opts, model_opts, gen_opts, part_opts;
  std::string sweep_parts, sweep_alloc, sweep_partitioner;
  std::string model_stats, model_inflate, model_micro;
  bool gen_undirected = false, gen_weights = false;

  auto* run = app.add_subcommand("run", "run one primitive and emit stats JSON");
  add_common_flags(run, run_opts);
  run->add_option("--out", run_opts.out, "stats JSON path, '-' for stdout");
  run->add_option("--results", run_opts.results_path, "per-vertex results, one value per line");

  auto* val = app.add_subcommand("validate",
                                 "compare an n-partition run with n=1 and a sequential oracle");
  add_common_flags(val, val_opts);

  auto* ben = app.add_subcommand("bench", "sweep configurations, emit CSV");
  add_common_flags(ben, bench_opts);
  ben->add_option("--out", bench_opts.out, "CSV path, '-' for stdout");
  ben->add_option("--sweep-parts", sweep_parts, "comma list of partition counts (default 1,2,4)");
  ben->add_option("--sweep-alloc", sweep_alloc, "comma list of allocation policies");
  ben->add_option("--sweep-partitioner", sweep_partitioner,
                  "plus-separated partitioners, e.g. 'random+biased:1.0'");

  auto* mod = app.add_subcommand("model", "predict, measure, fit g and l, compare");
  add_common_flags(mod, model_opts);
  mod->add_option("--out", model_opts.out, "report JSON path, '-' for stdout");
  mod->add_option("--stats", model_stats, "compare a stats JSON file instead of running");
  mod->add_option("--inflate-k", model_inflate, "H-inflation factors for the g fit");
  mod->add_option("--microbench-s", model_micro, "superstep counts for the l fit");

  auto* gen = app.add_subcommand("gen", "generate a graph and write an edge list");
  add_common_flags(gen, gen_opts, false);
  gen->add_option("--out", gen_opts.out, "edge list path")->required();
  gen->add_flag("--undirected", gen_undirected, "write one line per undirected edge");
  gen->add_flag("--with-weights", gen_weights, "attach random weights from --weights");

  auto* part = app.add_subcommand("partition", "write an assignment file");
  add_common_flags(part, part_opts);
  part->add_option("--out", part_opts.out, "assignment path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (val->parsed()) return cmd_validate(val_opts);
    if (ben->parsed()) return cmd_bench(bench_opts, sweep_parts, sweep_alloc, sweep_partitioner);
    if (mod->parsed()) return cmd_model(model_opts, model_stats, model_inflate, model_micro);
    if (gen->parsed()) return cmd_gen(gen_opts, gen_undirected, gen_weights);
    if (part->parsed()) return cmd_partition(part_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
