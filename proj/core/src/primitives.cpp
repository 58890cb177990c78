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

#include "mgraph/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mgraph {

namespace {

void check_source(const PartitionPlan& plan, VertexId source, const char* prim) {
  if (source >= plan.num_global_vertices)
    throw std::invalid_argument(std::string(prim) + ": source out of range");
}

// copy one per-hosted-vertex field out of the worker states into global ID space
template <class States, class Get, class T>
void gather_hosted(const PartitionPlan& plan, const States& states, std::vector<T>& out, Get&& get) {
  for (std::uint32_t p = 0; p < plan.num_partitions(); ++p) {
    for (VertexId g : plan.locals[p]) {
      VertexId l = plan.to_local(p, g);
      out[g] = get(states[p], l);
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BFS

namespace {

struct BfsWorkerState {
  std::vector<Label> labels;
  std::vector<VertexId> preds;
  std::vector<std::uint32_t> seen;  // per-superstep output dedup
  bool mark_preds = false;
  VertexId source = 0;
};

}  // namespace

BfsResult bfs(const PartitionPlan& plan, const BfsOptions& opt, const EngineConfig& cfg) {
  check_source(plan, opt.source, "bfs");

  PrimitiveSpec<BfsWorkerState> spec;
  spec.name = "bfs";
  spec.num_vertex_associates = opt.mark_preds ? 1 : 0;
  spec.num_value_associates = 0;
  spec.communication = CommMode::Selective;
  spec.allow_comm_override = true;
  spec.duplication_required = Duplication::All;

  spec.init = [opt](BfsWorkerState& s, WorkerHandle& h) {
    s.mark_preds = opt.mark_preds;
    s.source = opt.source;
    s.labels.assign(h.num_local_vertices(), kInfLabel);
    s.seen.assign(h.num_local_vertices(), 0);
    if (opt.mark_preds) s.preds.assign(h.num_local_vertices(), kInvalidVertex);
    s.labels[opt.source] = 0;  // every worker knows the source; suppresses rediscovery
    if (h.owner_of_global(opt.source) == h.worker()) h.push_initial(opt.source);
  };

  spec.iteration_body = [](BfsWorkerState& s, WorkerHandle& h, const Frontier& in, Frontier&) {
    Label next = static_cast<Label>(h.iteration() + 1);
    auto visit = [&](VertexId u, VertexId v, EdgeId) {
      if (s.labels[v] != kInfLabel) return false;
      s.labels[v] = next;
      if (s.mark_preds) s.preds[v] = h.to_global(u);
      return true;
    };
    std::uint32_t stamp = static_cast<std::uint32_t>(h.iteration() + 1);
    auto keep = [&](VertexId v) {
      if (s.seen[v] == stamp) return false;
      s.seen[v] = stamp;
      return true;
    };
    h.pipeline(in, visit, keep, h.num_local_vertices());
  };

  spec.combine = [](BfsWorkerState& s, WorkerHandle& h, VertexId v,
                    std::span<const VertexId> va, std::span<const Value>, std::uint64_t iter) {
    Label cand = static_cast<Label>(iter + 1);
    if (cand < s.labels[v]) {
      s.labels[v] = cand;
      if (s.mark_preds) s.preds[v] = va[0];
      return h.hosts_local(v);
    }
    return false;
  };

  if (opt.mark_preds) {
    spec.gather = [](BfsWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId> va,
                     std::span<Value>) { va[0] = s.preds[v]; };
  }

  auto rr = run_primitive(spec, plan, cfg);
  BfsResult res;
  res.stats = std::move(rr.stats);
  res.labels.assign(plan.num_global_vertices, kInfLabel);
  gather_hosted(plan, rr.states, res.labels,
                [](const BfsWorkerState& s, VertexId l) { return s.labels[l]; });
  if (opt.mark_preds) {
    res.preds.assign(plan.num_global_vertices, kInvalidVertex);
    gather_hosted(plan, rr.states, res.preds,
                  [](const BfsWorkerState& s, VertexId l) { return s.preds[l]; });
  }
  return res;
}

// ---------------------------------------------------------------------------
// DOBFS

DirectionState make_direction_state(Direction current, std::uint64_t q, std::uint64_t u,
                                    std::uint64_t p, std::uint64_t edges, std::uint64_t vertices,
                                    double do_a, double do_b, bool switched_once) {
  DirectionState s;
  s.current = current;
  s.q_size = q;
  s.u_size = u;
  s.p_size = p;
  s.do_a = do_a;
  s.do_b = do_b;
  s.switched_to_backward_once = switched_once;
  if (vertices > 0) s.fv = static_cast<double>(q) * static_cast<double>(edges) / vertices;
  if (p > 0) s.bv = static_cast<double>(u) * static_cast<double>(vertices) / p;
  return s;
}

Direction direction_decide(const DirectionState& s) {
  if (s.current == Direction::Forward) {
    if (!s.switched_to_backward_once && s.fv > s.bv * s.do_a) return Direction::Backward;
    return Direction::Forward;
  }
  if (s.fv < s.bv * s.do_b) return Direction::Forward;
  return Direction::Backward;
}

namespace {

struct DobfsWorkerState {
  std::vector<Label> labels;
  std::vector<VertexId> preds;
  std::vector<std::uint32_t> in_frontier;  // stamp: member of current input frontier
  std::uint64_t visited = 0;               // global count; consistent across workers
  Direction dir = Direction::Forward;
  bool switched_once = false;
  bool mark_preds = false;
  double do_a = 0.01, do_b = 0.1;
  std::uint64_t forward_edges = 0, backward_edges = 0;
  std::vector<int> dir_log;
};

}  // namespace

DobfsResult dobfs(const PartitionPlan& plan, const DobfsOptions& opt, const EngineConfig& cfg) {
  check_source(plan, opt.source, "dobfs");

  PrimitiveSpec<DobfsWorkerState> spec;
  spec.name = "dobfs";
  spec.num_vertex_associates = opt.mark_preds ? 1 : 0;
  spec.num_value_associates = 0;
  // an upcoming iteration may use either direction, so everyone needs the
  // whole newly-discovered frontier
  spec.communication = CommMode::Broadcast;
  spec.duplication_required = Duplication::All;

  spec.init = [opt](DobfsWorkerState& s, WorkerHandle& h) {
    s.mark_preds = opt.mark_preds;
    s.do_a = opt.do_a;
    s.do_b = opt.do_b;
    s.labels.assign(h.num_local_vertices(), kInfLabel);
    s.in_frontier.assign(h.num_local_vertices(), 0);
    if (opt.mark_preds) s.preds.assign(h.num_local_vertices(), kInvalidVertex);
    s.labels[opt.source] = 0;
    s.visited = 1;
    if (h.owner_of_global(opt.source) == h.worker()) h.push_initial(opt.source);
  };

  spec.iteration_body = [&plan](DobfsWorkerState& s, WorkerHandle& h, const Frontier& in,
                                Frontier& out) {
    const std::uint64_t iter = h.iteration();
    const std::uint32_t stamp = static_cast<std::uint32_t>(iter + 1);
    for (VertexId v : in) s.in_frontier[v] = stamp;

    // begin with forward traversal; re-decide from the second iteration on
    if (iter >= 1) {
      DirectionState ds = make_direction_state(
          s.dir, in.size(), plan.num_global_vertices - s.visited, s.visited,
          plan.num_global_edges, plan.num_global_vertices, s.do_a, s.do_b, s.switched_once);
      Direction next = direction_decide(ds);
      if (next == Direction::Backward && s.dir == Direction::Forward) s.switched_once = true;
      s.dir = next;
    }
    s.dir_log.push_back(s.dir == Direction::Backward ? 1 : 0);

    Label next_label = static_cast<Label>(iter + 1);
    if (s.dir == Direction::Forward) {
      auto visit = [&](VertexId u, VertexId v, EdgeId) {
        if (s.labels[v] != kInfLabel) return false;
        s.labels[v] = next_label;
        s.visited++;
        if (s.mark_preds) s.preds[v] = h.to_global(u);
        return true;
      };
      auto keep = [](VertexId) { return true; };
      std::uint64_t mark = h.edges_examined;
      h.pipeline(in, visit, keep, h.num_local_vertices());
      s.forward_edges += h.edges_examined - mark;
    } else {
      // backward: every hosted unvisited vertex scans for a parent in the
      // current frontier and stops at the first hit (edge skipping)
      const Csr& sub = h.subgraph();
      std::size_t unvisited = 0;
      for (VertexId v : h.hosted_local())
        if (s.labels[v] == kInfLabel) unvisited++;
      out.ensure_capacity(out.size() + unvisited);
      std::uint64_t scanned = 0;
      for (VertexId v : h.hosted_local()) {
        if (s.labels[v] != kInfLabel) continue;
        for (EdgeId e = sub.row_offsets[v]; e < sub.row_offsets[v + 1]; ++e) {
          VertexId w = sub.col_indices[e];
          ++scanned;
          if (s.in_frontier[w] == stamp) {
            s.labels[v] = next_label;
            s.visited++;
            if (s.mark_preds) s.preds[v] = h.to_global(w);
            out.push_back(v);
            break;
          }
        }
      }
      h.count_edges(scanned);
      s.backward_edges += scanned;
    }
  };

  spec.combine = [](DobfsWorkerState& s, WorkerHandle&, VertexId v, std::span<const VertexId> va,
                    std::span<const Value>, std::uint64_t iter) {
    Label cand = static_cast<Label>(iter + 1);
    if (cand < s.labels[v]) {
      s.labels[v] = cand;
      s.visited++;
      if (s.mark_preds) s.preds[v] = va[0];
      return true;  // the global frontier view includes remote discoveries
    }
    return false;
  };

  if (opt.mark_preds) {
    spec.gather = [](DobfsWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId> va,
                     std::span<Value>) { va[0] = s.preds[v]; };
  }

  auto rr = run_primitive(spec, plan, cfg);
  DobfsResult res;
  res.stats = std::move(rr.stats);
  res.labels.assign(plan.num_global_vertices, kInfLabel);
  gather_hosted(plan, rr.states, res.labels,
                [](const DobfsWorkerState& s, VertexId l) { return s.labels[l]; });
  if (opt.mark_preds) {
    res.preds.assign(plan.num_global_vertices, kInvalidVertex);
    gather_hosted(plan, rr.states, res.preds,
                  [](const DobfsWorkerState& s, VertexId l) { return s.preds[l]; });
  }
  res.direction_log = rr.states[0].dir_log;
  for (const auto& st : rr.states) {
    res.forward_edges += st.forward_edges;
    res.backward_edges += st.backward_edges;
  }
  return res;
}

// ---------------------------------------------------------------------------
// SSSP

namespace {

struct SsspWorkerState {
  std::vector<Dist> dists;
  std::vector<Dist> frontier_dist;  // source values frozen at superstep start
  std::vector<Dist> last_sent;      // pre-send suppression record per proxy
  std::vector<VertexId> preds;
  std::vector<std::uint32_t> seen;
  bool mark_preds = false;
};

}  // namespace

SsspResult sssp(const PartitionPlan& plan, VertexId source, bool mark_preds,
                const EngineConfig& cfg) {
  check_source(plan, source, "sssp");
  for (const auto& sub : plan.subgraphs) {
    if (sub.num_edges() > 0 && !sub.has_weights())
      throw std::invalid_argument("sssp: graph has no edge weights");
  }

  PrimitiveSpec<SsspWorkerState> spec;
  spec.name = "sssp";
  spec.num_vertex_associates = mark_preds ? 1 : 0;
  spec.num_value_associates = 1;  // tentative distance
  spec.communication = CommMode::Selective;
  spec.allow_comm_override = true;
  spec.duplication_required = Duplication::All;

  spec.init = [source, mark_preds](SsspWorkerState& s, WorkerHandle& h) {
    s.mark_preds = mark_preds;
    s.dists.assign(h.num_local_vertices(), kInfDist);
    s.frontier_dist.assign(h.num_local_vertices(), kInfDist);
    s.last_sent.assign(h.num_local_vertices(), kInfDist);
    s.seen.assign(h.num_local_vertices(), 0);
    if (mark_preds) s.preds.assign(h.num_local_vertices(), kInvalidVertex);
    s.dists[source] = 0;
    if (h.owner_of_global(source) == h.worker()) h.push_initial(source);
  };

  spec.iteration_body = [](SsspWorkerState& s, WorkerHandle& h, const Frontier& in, Frontier&) {
    const Csr& sub = h.subgraph();
    // relax from the distances the frontier had when the superstep began;
    // an in-superstep improvement re-enters the frontier instead of
    // propagating early, so the superstep trace is partition-independent
    for (VertexId u : in) s.frontier_dist[u] = s.dists[u];
    auto visit = [&](VertexId u, VertexId v, EdgeId e) {
      Dist nd = s.frontier_dist[u] + sub.edge_values[e];
      if (nd < s.dists[v]) {
        s.dists[v] = nd;
        if (s.mark_preds) s.preds[v] = h.to_global(u);
        return true;
      }
      return false;
    };
    std::uint32_t stamp = static_cast<std::uint32_t>(h.iteration() + 1);
    auto keep = [&](VertexId v) {
      if (s.seen[v] == stamp) return false;
      s.seen[v] = stamp;
      return true;
    };
    h.pipeline(in, visit, keep, h.num_local_vertices());
  };

  spec.combine = [](SsspWorkerState& s, WorkerHandle& h, VertexId v, std::span<const VertexId> va,
                    std::span<const Value> vv, std::uint64_t) {
    Dist nd = static_cast<Dist>(vv[0]);
    if (nd < s.dists[v]) {
      s.dists[v] = nd;
      if (s.mark_preds) s.preds[v] = va[0];
      return h.hosts_local(v);
    }
    return false;
  };

  spec.gather = [](SsspWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId> va,
                   std::span<Value> vv) {
    vv[0] = static_cast<Value>(s.dists[v]);
    if (s.mark_preds) va[0] = s.preds[v];
  };

  // a proxy re-enters a package only when its distance improved on the best
  // value already sent to that peer
  spec.send_filter = [](SsspWorkerState& s, WorkerHandle&, std::uint32_t, VertexId v) {
    if (s.dists[v] < s.last_sent[v]) {
      s.last_sent[v] = s.dists[v];
      return true;
    }
    return false;
  };

  auto rr = run_primitive(spec, plan, cfg);
  SsspResult res;
  res.stats = std::move(rr.stats);
  res.dists.assign(plan.num_global_vertices, kInfDist);
  gather_hosted(plan, rr.states, res.dists,
                [](const SsspWorkerState& s, VertexId l) { return s.dists[l]; });
  if (mark_preds) {
    res.preds.assign(plan.num_global_vertices, kInvalidVertex);
    gather_hosted(plan, rr.states, res.preds,
                  [](const SsspWorkerState& s, VertexId l) { return s.preds[l]; });
  }
  return res;
}

// ---------------------------------------------------------------------------
// connected components

namespace {

struct CcWorkerState {
  std::vector<VertexId> comp;
  std::vector<VertexId> snapshot;  // values as of the last broadcast

  VertexId root(VertexId x) const {
    while (comp[x] != x) x = comp[x];
    return x;
  }
};

}  // namespace

CcResult cc(const PartitionPlan& plan, const EngineConfig& cfg) {
  PrimitiveSpec<CcWorkerState> spec;
  spec.name = "cc";
  spec.num_vertex_associates = 1;  // component value
  spec.num_value_associates = 0;
  // component updates can jump more than one hop, so they go to everyone
  spec.communication = CommMode::Broadcast;
  spec.duplication_required = Duplication::All;

  spec.init = [](CcWorkerState& s, WorkerHandle& h) {
    s.comp.resize(h.num_local_vertices());
    for (VertexId v = 0; v < s.comp.size(); ++v) s.comp[v] = v;
    s.snapshot = s.comp;
    // non-empty initial frontier keeps superstep 0 alive; the body walks all
    // local edges regardless of frontier contents
    auto hosted = h.hosted_local();
    h.next_input.ensure_capacity(hosted.size());
    for (VertexId v : hosted) h.next_input.push_back(v);
  };

  spec.iteration_body = [](CcWorkerState& s, WorkerHandle& h, const Frontier&, Frontier& out) {
    const Csr& sub = h.subgraph();
    std::uint64_t scanned = 0;
    bool hooked = true;
    while (hooked) {
      hooked = false;
      // hook the larger root under the smaller
      for (VertexId u : h.hosted_local()) {
        for (EdgeId e = sub.row_offsets[u]; e < sub.row_offsets[u + 1]; ++e) {
          VertexId v = sub.col_indices[e];
          ++scanned;
          VertexId ru = s.root(u), rv = s.root(v);
          if (ru == rv) continue;
          if (ru < rv)
            s.comp[rv] = ru;
          else
            s.comp[ru] = rv;
          hooked = true;
        }
      }
      // full pointer jumping
      for (VertexId w = 0; w < sub.num_vertices; ++w) s.comp[w] = s.root(w);
    }
    h.count_edges(scanned);

    // delta encoding: broadcast only values changed since the last exchange
    std::size_t changed = 0;
    for (VertexId w = 0; w < sub.num_vertices; ++w)
      if (s.comp[w] != s.snapshot[w]) changed++;
    out.ensure_capacity(out.size() + changed);
    for (VertexId w = 0; w < sub.num_vertices; ++w) {
      if (s.comp[w] != s.snapshot[w]) {
        out.push_back(w);
        s.snapshot[w] = s.comp[w];
      }
    }
  };

  spec.combine = [](CcWorkerState& s, WorkerHandle&, VertexId v, std::span<const VertexId> va,
                    std::span<const Value>, std::uint64_t) {
    VertexId c = va[0];
    if (c < s.comp[v]) {
      s.comp[v] = c;
      s.snapshot[v] = c;  // the sender already broadcast it to everyone
      return true;
    }
    return false;
  };

  spec.gather = [](CcWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId> va,
                   std::span<Value>) { va[0] = s.comp[v]; };

  auto rr = run_primitive(spec, plan, cfg);
  CcResult res;
  res.stats = std::move(rr.stats);
  res.components.assign(plan.num_global_vertices, 0);
  gather_hosted(plan, rr.states, res.components,
                [](const CcWorkerState& s, VertexId l) { return s.comp[l]; });
  return res;
}

// ---------------------------------------------------------------------------
// betweenness centrality

namespace {

struct BcWorkerState {
  std::vector<Label> labels;
  std::vector<double> sigma;  // hosted: canonical counts; proxies: outgoing partials
  std::vector<double> delta;
  std::vector<double> bc_score;
  std::vector<std::uint32_t> bstamp;  // backward broadcast receipt stamp
  std::vector<std::uint32_t> seen;
  enum Phase : std::uint64_t { ForwardPhase = 0, BackwardPhase = 1, DonePhase = 2 };
  Phase phase = ForwardPhase;
  Label max_level = 0;
  std::uint64_t backward_from = 0;  // first backward superstep
  VertexId source = 0;
};

}  // namespace

BcResult bc(const PartitionPlan& plan, VertexId source, const EngineConfig& cfg) {
  check_source(plan, source, "bc");

  PrimitiveSpec<BcWorkerState> spec;
  spec.name = "bc";
  spec.num_vertex_associates = 0;
  spec.num_value_associates = 2;  // forward: (sigma partial, unused); backward: (sigma, delta)
  spec.communication = CommMode::Selective;
  spec.duplication_required = Duplication::All;

  spec.init = [source](BcWorkerState& s, WorkerHandle& h) {
    s.source = source;
    s.labels.assign(h.num_local_vertices(), kInfLabel);
    s.sigma.assign(h.num_local_vertices(), 0.0);
    s.delta.assign(h.num_local_vertices(), 0.0);
    s.bc_score.assign(h.num_local_vertices(), 0.0);
    s.bstamp.assign(h.num_local_vertices(), 0);
    s.seen.assign(h.num_local_vertices(), 0);
    s.labels[source] = 0;
    if (h.owner_of_global(source) == h.worker()) {
      s.sigma[source] = 1.0;
      h.push_initial(source);
    }
  };

  spec.iteration_body = [](BcWorkerState& s, WorkerHandle& h, const Frontier& in, Frontier& out) {
    const std::uint64_t iter = h.iteration();
    const GlobalView* prev = h.previous_view();

    // forward traversal is exhausted once nothing survived the merge: a
    // stale proxy discovery may still appear in an output frontier, but its
    // rejection at the owner leaves every next-input empty
    if (s.phase == BcWorkerState::ForwardPhase && prev && prev->total_next == 0 &&
        prev->inflight_records == 0) {
      s.phase = BcWorkerState::BackwardPhase;
      s.backward_from = iter;
      s.max_level = static_cast<Label>(prev->max_u(0));
    }

    if (s.phase == BcWorkerState::ForwardPhase) {
      Label cand = static_cast<Label>(iter + 1);
      auto visit = [&](VertexId u, VertexId v, EdgeId) {
        if (s.labels[v] == kInfLabel) {
          s.labels[v] = cand;
          s.sigma[v] += s.sigma[u];
          return true;
        }
        if (s.labels[v] == cand) s.sigma[v] += s.sigma[u];
        return false;
      };
      std::uint32_t stamp = static_cast<std::uint32_t>(iter + 1);
      auto keep = [&](VertexId v) {
        if (s.seen[v] == stamp) return false;
        s.seen[v] = stamp;
        return true;
      };
      h.pipeline(in, visit, keep, h.num_local_vertices());
      Label max_hosted = 0;
      for (VertexId v : h.hosted_local())
        if (s.labels[v] != kInfLabel) max_hosted = std::max(max_hosted, s.labels[v]);
      h.report().u[0] = max_hosted;
      h.report().u[1] = BcWorkerState::ForwardPhase;
      return;
    }

    if (s.phase == BcWorkerState::BackwardPhase) {
      std::uint64_t k = iter - s.backward_from;
      // levels run max_level .. 1, one per superstep
      if (k >= static_cast<std::uint64_t>(s.max_level)) {
        s.phase = BcWorkerState::DonePhase;
      } else {
        Label level = s.max_level - static_cast<Label>(k);
        const Csr& sub = h.subgraph();
        std::uint64_t scanned = 0;
        if (level < s.max_level) {
          // successors (level+1) are hosted with a true label or proxies
          // refreshed by the previous level's broadcast
          const std::uint32_t prev_stamp = static_cast<std::uint32_t>(iter);
          for (VertexId v : h.hosted_local()) {
            if (s.labels[v] != level) continue;
            double acc = 0.0;
            for (EdgeId e = sub.row_offsets[v]; e < sub.row_offsets[v + 1]; ++e) {
              VertexId w = sub.col_indices[e];
              ++scanned;
              bool succ = h.hosts_local(w) ? (s.labels[w] == level + 1)
                                           : (s.bstamp[w] == prev_stamp);
              if (succ && s.sigma[w] > 0.0) acc += s.sigma[v] / s.sigma[w] * (1.0 + s.delta[w]);
            }
            s.delta[v] = acc;
            if (v != s.source) s.bc_score[v] += acc;
          }
        }
        h.count_edges(scanned);
        // broadcast (sigma, delta) of this level for the next one down
        std::size_t count = 0;
        for (VertexId v : h.hosted_local())
          if (s.labels[v] == level) count++;
        out.ensure_capacity(out.size() + count);
        for (VertexId v : h.hosted_local())
          if (s.labels[v] == level) out.push_back(v);
      }
      h.report().u[0] = s.max_level;
      h.report().u[1] = static_cast<std::uint64_t>(s.phase);
      return;
    }

    h.report().u[1] = BcWorkerState::DonePhase;
  };

  // the forward phase is selective; per-level dependency data is broadcast
  spec.comm_selector = [](const BcWorkerState& s, const WorkerHandle&) {
    return s.phase == BcWorkerState::ForwardPhase ? CommMode::Selective : CommMode::Broadcast;
  };

  spec.stop_condition = [](const GlobalView& v) {
    return v.all_u_equal(1, BcWorkerState::DonePhase) && v.total_next == 0 &&
           v.inflight_records == 0;
  };

  spec.combine = [](BcWorkerState& s, WorkerHandle& h, VertexId v, std::span<const VertexId>,
                    std::span<const Value> vv, std::uint64_t iter) {
    if (s.phase == BcWorkerState::ForwardPhase) {
      Label cand = static_cast<Label>(iter + 1);
      if (cand < s.labels[v]) {
        s.labels[v] = cand;
        s.sigma[v] = vv[0];
        return h.hosts_local(v);
      }
      if (cand == s.labels[v]) s.sigma[v] += vv[0];
      return false;
    }
    // dependency phase: install the canonical (sigma, delta) for this proxy
    s.sigma[v] = vv[0];
    s.delta[v] = vv[1];
    s.bstamp[v] = static_cast<std::uint32_t>(iter + 1);
    return false;
  };

  spec.gather = [](BcWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId>,
                   std::span<Value> vv) {
    vv[0] = s.sigma[v];
    if (s.phase == BcWorkerState::ForwardPhase) {
      vv[1] = 0.0;
      s.sigma[v] = 0.0;  // partial shipped; reset the proxy accumulator
    } else {
      vv[1] = s.delta[v];
    }
  };

  auto rr = run_primitive(spec, plan, cfg);
  BcResult res;
  res.stats = std::move(rr.stats);
  res.bc.assign(plan.num_global_vertices, 0.0);
  res.sigma.assign(plan.num_global_vertices, 0.0);
  res.labels.assign(plan.num_global_vertices, kInfLabel);
  gather_hosted(plan, rr.states, res.bc,
                [](const BcWorkerState& s, VertexId l) { return s.bc_score[l]; });
  gather_hosted(plan, rr.states, res.sigma,
                [](const BcWorkerState& s, VertexId l) { return s.sigma[l]; });
  gather_hosted(plan, rr.states, res.labels,
                [](const BcWorkerState& s, VertexId l) { return s.labels[l]; });
  return res;
}

// ---------------------------------------------------------------------------
// PageRank

namespace {

struct PrWorkerState {
  std::vector<double> rank;
  std::vector<double> accum;      // hosted: incoming sums; proxies: outgoing partials
  std::vector<VertexId> border;   // static remote sub-frontier (local IDs)
  double damping = 0.85;
  double epsilon = 0.01;
  std::uint64_t updates = 0;
  std::vector<double> rank_sums;  // worker 0 collects global per-update sums
};

void pr_update(PrWorkerState& s, WorkerHandle& h, double dangling_prev, double* delta_out,
               double* sum_out) {
  const double n = static_cast<double>(h.plan().num_global_vertices);
  double delta_max = 0.0, sum = 0.0;
  for (VertexId v : h.hosted_local()) {
    double nr = (1.0 - s.damping) / n + s.damping * (s.accum[v] + dangling_prev / n);
    double rel = std::abs(nr - s.rank[v]) / std::max(nr, 1e-300);
    delta_max = std::max(delta_max, rel);
    s.rank[v] = nr;
    sum += nr;
  }
  s.updates++;
  *delta_out = delta_max;
  *sum_out = sum;
}

}  // namespace

PrResult pagerank(const PartitionPlan& plan, const PrOptions& opt, const EngineConfig& cfg) {
  if (!(opt.damping > 0.0 && opt.damping < 1.0))
    throw std::invalid_argument("pagerank: damping must lie in (0,1)");
  if (!(opt.epsilon > 0.0)) throw std::invalid_argument("pagerank: epsilon must be positive");
  if (opt.max_iter < 1) throw std::invalid_argument("pagerank: max_iter must be >= 1");

  PrimitiveSpec<PrWorkerState> spec;
  spec.name = "pr";
  spec.num_vertex_associates = 0;
  spec.num_value_associates = 1;  // accumulated partial rank
  spec.communication = CommMode::Selective;
  spec.duplication_required = std::nullopt;  // duplicate-all or duplicate-1-hop

  spec.init = [opt, &plan](PrWorkerState& s, WorkerHandle& h) {
    s.damping = opt.damping;
    s.epsilon = opt.epsilon;
    s.rank.assign(h.num_local_vertices(), 0.0);
    s.accum.assign(h.num_local_vertices(), 0.0);
    const double n = static_cast<double>(plan.num_global_vertices);
    for (VertexId v : h.hosted_local()) s.rank[v] = 1.0 / n;
    // the remote sub-frontiers do not change over iterations; fix them now
    const std::uint32_t p = h.worker();
    std::size_t total = 0;
    for (std::uint32_t q = 0; q < h.num_workers(); ++q)
      if (q != p) total += plan.borders[p][q].size();
    s.border.reserve(total);
    for (std::uint32_t q = 0; q < h.num_workers(); ++q) {
      if (q == p) continue;
      for (VertexId g : plan.borders[p][q]) s.border.push_back(h.to_local(g));
    }
  };

  spec.iteration_body = [](PrWorkerState& s, WorkerHandle& h, const Frontier&, Frontier& out) {
    const std::uint64_t iter = h.iteration();
    const GlobalView* prev = h.previous_view();

    if (iter >= 1) {
      double delta = 0.0, sum = 0.0;
      pr_update(s, h, prev->sum_f(0), &delta, &sum);
      h.report().f[1] = delta;
      h.report().f[2] = sum;
    } else {
      h.report().f[1] = std::numeric_limits<double>::infinity();
    }
    if (h.worker() == 0 && prev && iter >= 2) s.rank_sums.push_back(prev->sum_f(2));

    // accumulate rank/outdegree into every out-neighbor, dangling mass aside
    for (VertexId v : h.hosted_local()) s.accum[v] = 0.0;
    const Csr& sub = h.subgraph();
    double dangling = 0.0;
    std::uint64_t scanned = 0;
    for (VertexId v : h.hosted_local()) {
      EdgeId deg = sub.degree(v);
      if (deg == 0) {
        dangling += s.rank[v];
        continue;
      }
      double contrib = s.rank[v] / static_cast<double>(deg);
      for (EdgeId e = sub.row_offsets[v]; e < sub.row_offsets[v + 1]; ++e)
        s.accum[sub.col_indices[e]] += contrib;
      scanned += deg;
    }
    h.count_edges(scanned);
    h.report().f[0] = dangling;

    out.ensure_capacity(out.size() + s.border.size());
    for (VertexId v : s.border) out.push_back(v);
  };

  spec.combine = [](PrWorkerState& s, WorkerHandle&, VertexId v, std::span<const VertexId>,
                    std::span<const Value> vv, std::uint64_t) {
    s.accum[v] += vv[0];
    return false;  // ranks are combined, never enqueued
  };

  spec.gather = [](PrWorkerState& s, WorkerHandle&, VertexId v, std::span<VertexId>,
                   std::span<Value> vv) {
    vv[0] = s.accum[v];
    s.accum[v] = 0.0;  // partial shipped
  };

  spec.stop_condition = [opt](const GlobalView& v) {
    if (v.iteration + 1 >= opt.max_iter) return true;
    return v.iteration >= 1 && v.max_f(1) < opt.epsilon;
  };

  spec.finalize = [opt](PrWorkerState& s, WorkerHandle& h, const GlobalView& last) {
    bool delta_stopped = last.iteration >= 1 && last.max_f(1) < opt.epsilon;
    if (h.worker() == 0 && last.iteration >= 1) s.rank_sums.push_back(last.sum_f(2));
    if (!delta_stopped) {
      // stopped on max_iter after spreading; apply the final update from the
      // drained accumulators
      double delta = 0.0, sum = 0.0;
      pr_update(s, h, last.sum_f(0), &delta, &sum);
    }
  };

  auto rr = run_primitive(spec, plan, cfg);
  PrResult res;
  res.stats = std::move(rr.stats);
  res.ranks.assign(plan.num_global_vertices, 0.0);
  gather_hosted(plan, rr.states, res.ranks,
                [](const PrWorkerState& s, VertexId l) { return s.rank[l]; });
  res.iterations = rr.states.empty() ? 0 : rr.states[0].updates;
  res.rank_sums = rr.states[0].rank_sums;
  bool finalized = rr.states[0].updates > rr.stats.supersteps - 1;
  if (finalized) {
    double sum = 0.0;
    for (double r : res.ranks) sum += r;
    res.rank_sums.push_back(sum);
  }
  return res;
}

}  // namespace mgraph
