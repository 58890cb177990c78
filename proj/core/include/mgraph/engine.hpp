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

#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "mgraph/frontier.hpp"
#include "mgraph/partition.hpp"

namespace mgraph {

// Selective routes each frontier vertex to its hosting partition only;
// Broadcast replicates the whole output frontier to every peer.
enum class CommMode { Selective, Broadcast };

inline const char* to_string(CommMode m) {
  return m == CommMode::Selective ? "selective" : "broadcast";
}

// ---------------------------------------------------------------------------
// traversal operators

// Visit every out-edge of the input frontier; the output holds the
// destination of every edge whose visit callback accepted. Work counter
// grows by the full degree sum regardless of acceptance.
template <class Visit>
void advance(const Csr& g, const Frontier& in, Frontier& out, Visit&& visit,
             std::uint64_t* edges_examined = nullptr) {
  EdgeId bound = estimate_advance_output(in, g);
  out.clear();
  out.ensure_capacity(bound);
  for (VertexId u : in) {
    for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      VertexId v = g.col_indices[e];
      if (visit(u, v, e)) out.push_back(v);
    }
  }
  if (edges_examined) *edges_examined += bound;
}

// Order-preserving subset of the input. capacity_bound tightens the
// preallocation when the caller knows the predicate deduplicates.
template <class Keep>
void filter(const Frontier& in, Frontier& out, Keep&& keep,
            std::size_t capacity_bound = std::numeric_limits<std::size_t>::max()) {
  out.clear();
  out.ensure_capacity(std::min(in.size(), capacity_bound));
  for (VertexId v : in) {
    if (keep(v)) out.push_back(v);
  }
}

// advance immediately followed by filter, without materializing the
// intermediate frontier. Equivalent to filter(advance(in)) element for
// element; the advance-output buffer is never touched.
template <class Visit, class Keep>
void advance_filter_fused(const Csr& g, const Frontier& in, Frontier& out, Visit&& visit,
                          Keep&& keep,
                          std::size_t capacity_bound = std::numeric_limits<std::size_t>::max(),
                          std::uint64_t* edges_examined = nullptr) {
  EdgeId adv = estimate_advance_output(in, g);
  out.clear();
  out.ensure_capacity(std::min<std::size_t>(adv, capacity_bound));
  for (VertexId u : in) {
    for (EdgeId e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      VertexId v = g.col_indices[e];
      if (visit(u, v, e) && keep(v)) out.push_back(v);
    }
  }
  if (edges_examined) *edges_examined += adv;
}

// ---------------------------------------------------------------------------
// frontier routing

struct SplitResult {
  Frontier local;
  std::vector<Frontier> remote;  // indexed by peer; remote[p] stays empty
};

// Route an output frontier (local IDs on p) into the local part and one
// sub-frontier per peer, stable by input position, multiplicity preserved.
// Broadcast replicates the whole frontier to every peer.
inline SplitResult split_frontier(const Frontier& out, const PartitionPlan& plan, std::uint32_t p,
                                  CommMode mode) {
  const std::uint32_t n = plan.num_partitions();
  SplitResult r;
  r.remote.resize(n);
  if (mode == CommMode::Broadcast) {
    r.local.ensure_capacity(out.size());
    for (std::uint32_t q = 0; q < n; ++q)
      if (q != p) r.remote[q].ensure_capacity(out.size());
    for (VertexId v : out) {
      r.local.push_back(v);
      for (std::uint32_t q = 0; q < n; ++q)
        if (q != p) r.remote[q].push_back(v);
    }
    return r;
  }
  std::vector<std::size_t> count(n, 0);
  for (VertexId v : out) count[plan.owner_of(plan.to_global(p, v))]++;
  r.local.ensure_capacity(count[p]);
  for (std::uint32_t q = 0; q < n; ++q)
    if (q != p) r.remote[q].ensure_capacity(count[q]);
  for (VertexId v : out) {
    std::uint32_t q = plan.owner_of(plan.to_global(p, v));
    if (q == p)
      r.local.push_back(v);
    else
      r.remote[q].push_back(v);
  }
  return r;
}

// Remote sub-frontier plus its per-vertex associates, addressed to one peer.
struct MessagePackage {
  std::uint32_t dest = 0;
  std::uint32_t iteration = 0;
  Frontier vertices;  // IDs in dest's local space
  std::vector<CapVector<VertexId>> vertex_assoc;
  std::vector<CapVector<Value>> value_assoc;

  void configure(int num_vertex_assoc, int num_value_assoc, BufferStats* stats,
                 MemoryBudget* budget) {
    vertices.attach(stats, budget);
    vertex_assoc.resize(num_vertex_assoc);
    value_assoc.resize(num_value_assoc);
    for (auto& a : vertex_assoc) a.attach(stats, budget);
    for (auto& a : value_assoc) a.attach(stats, budget);
  }

  std::size_t record_count() const { return vertices.size(); }

  void clear() {
    vertices.clear();
    for (auto& a : vertex_assoc) a.clear();
    for (auto& a : value_assoc) a.clear();
  }

  void ensure(std::size_t records) {
    vertices.ensure_capacity(records);
    for (auto& a : vertex_assoc) a.ensure_capacity(records);
    for (auto& a : value_assoc) a.ensure_capacity(records);
  }

  void prealloc(std::size_t records) {
    vertices.prealloc(records);
    for (auto& a : vertex_assoc) a.prealloc(records);
    for (auto& a : value_assoc) a.prealloc(records);
  }
};

// Convert vertex IDs from p's local space to q's local space through the
// plan's conversion tables (identity under duplicate-all). A missing proxy
// on q is a plan bug and throws.
inline void convert_to_peer_ids(const PartitionPlan& plan, std::uint32_t p, std::uint32_t q,
                                std::span<const VertexId> ids, VertexId* out) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    VertexId global = plan.to_global(p, ids[i]);
    VertexId local = plan.to_local(q, global);
    if (local == kInvalidVertex) {
      throw std::runtime_error("package_remote: vertex " + std::to_string(global) +
                               " has no proxy on partition " + std::to_string(q));
    }
    out[i] = local;
  }
}

// Fill a package from a remote sub-frontier. gather(src_local_id, i, pkg)
// writes associate slot i of every associate array.
template <class Gather>
void package_remote(MessagePackage& pkg, const Frontier& remote, const PartitionPlan& plan,
                    std::uint32_t p, std::uint32_t q, std::uint32_t iteration, Gather&& gather) {
  pkg.clear();
  pkg.dest = q;
  pkg.iteration = iteration;
  pkg.ensure(remote.size());
  convert_to_peer_ids(plan, p, q, remote.span(), pkg.vertices.data());
  pkg.vertices.resize_within_capacity(remote.size());
  for (auto& a : pkg.vertex_assoc) a.resize_within_capacity(remote.size());
  for (auto& a : pkg.value_assoc) a.resize_within_capacity(remote.size());
  for (std::size_t i = 0; i < remote.size(); ++i) gather(remote[i], i, pkg);
}

// ---------------------------------------------------------------------------
// run bookkeeping

struct WorkerReport {
  std::uint64_t out_frontier = 0;   // output length this superstep
  std::uint64_t next_frontier = 0;  // next-input length after split
  std::uint64_t edges_delta = 0;    // edges examined this superstep
  std::uint64_t combine_delta = 0;  // combine ops this superstep
  std::array<double, 4> f{};        // primitive-defined scalars
  std::array<std::uint64_t, 4> u{};
};

struct GlobalView {
  std::uint32_t iteration = 0;
  std::uint32_t num_workers = 1;
  std::vector<WorkerReport> reports;
  std::uint64_t total_out = 0;
  std::uint64_t total_next = 0;
  std::uint64_t inflight_records = 0;  // delivered but not yet merged

  double sum_f(int k) const {
    double s = 0;
    for (const auto& r : reports) s += r.f[k];
    return s;
  }
  double max_f(int k) const {
    double s = 0;
    for (const auto& r : reports) s = std::max(s, r.f[k]);
    return s;
  }
  std::uint64_t max_u(int k) const {
    std::uint64_t s = 0;
    for (const auto& r : reports) s = std::max(s, r.u[k]);
    return s;
  }
  bool all_u_equal(int k, std::uint64_t v) const {
    for (const auto& r : reports)
      if (r.u[k] != v) return false;
    return true;
  }
};

// Default stop rule: no local frontier has pending work and nothing is in
// flight or sitting unmerged in an inbox.
inline bool default_converged(const GlobalView& v) {
  return v.total_next == 0 && v.inflight_records == 0;
}

struct RunStats {
  std::string primitive;
  std::uint32_t n = 1;
  std::string partitioner = "unspecified";
  std::string duplication = "all";
  std::string communication = "selective";
  std::string policy = "just";

  std::uint64_t supersteps = 0;                       // S
  std::uint64_t edges_examined = 0;                   // W proxy
  std::uint64_t combine_ops = 0;                      // C proxy
  std::vector<std::vector<std::uint64_t>> h_matrix;   // vertices transmitted per (i,j)
  std::vector<std::vector<std::uint64_t>> h_per_iter_by_src;  // [iter][src]
  std::vector<std::uint64_t> out_per_iter;
  std::vector<std::uint64_t> edges_per_iter;
  std::vector<std::uint64_t> combine_per_iter;
  double wall_ms = 0.0;
  double exchange_ms = 0.0;
  std::uint32_t h_inflation = 1;
  std::uint64_t wire_records = 0;  // records copied on the wire (inflated)
  std::string stop_reason;

  std::vector<std::map<BufferRole, BufferStats>> worker_buffers;
  std::uint64_t peak_bytes = 0;
  std::uint64_t reallocs = 0;

  std::uint64_t h_total() const {
    std::uint64_t t = 0;
    for (const auto& row : h_matrix)
      for (auto v : row) t += v;
    return t;
  }
  std::uint64_t h_from(std::uint32_t i) const {
    std::uint64_t t = 0;
    for (auto v : h_matrix[i]) t += v;
    return t;
  }
};

enum class FusedMode { Auto, On, Off };

struct DropPackage {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::uint64_t iteration = 0;
};

struct EngineConfig {
  AllocationPolicy policy;
  FusedMode fused = FusedMode::Auto;
  std::optional<CommMode> comm_override;
  std::uint32_t h_inflation = 1;
  std::optional<DropPackage> drop_package;  // fault injection for validation
  std::uint64_t max_supersteps = 1000000;
};

// ---------------------------------------------------------------------------
// exchange fabric: per-(dst,src) inbox slots, H accounting, wire timing

class ExchangeFabric {
 public:
  ExchangeFabric(std::uint32_t n, int nva, int nvv, std::uint32_t inflation,
                 std::optional<DropPackage> drop)
      : n_(n), nva_(nva), nvv_(nvv), inflation_(inflation == 0 ? 1 : inflation), drop_(drop) {
    for (int parity = 0; parity < 2; ++parity) {
      inbox_[parity].resize(n);
      inbox_stats_[parity].resize(n);
      for (std::uint32_t dst = 0; dst < n; ++dst) {
        inbox_[parity][dst].resize(n);
        inbox_stats_[parity][dst].resize(n);
      }
    }
    h_matrix_.assign(n, std::vector<std::uint64_t>(n, 0));
    h_iter_src_.assign(n, 0);
    exchange_ms_.assign(n, 0.0);
    wire_records_.assign(n, 0);
    scratch_.resize(n);
  }

  void attach_inboxes(std::uint32_t dst, MemoryBudget* budget) {
    for (int parity = 0; parity < 2; ++parity)
      for (std::uint32_t src = 0; src < n_; ++src)
        inbox_[parity][dst][src].configure(nva_, nvv_, &inbox_stats_[parity][dst][src], budget);
  }

  void prealloc_inboxes(std::uint32_t dst, std::size_t records) {
    for (int parity = 0; parity < 2; ++parity)
      for (std::uint32_t src = 0; src < n_; ++src) inbox_[parity][dst][src].prealloc(records);
  }

  // packages delivered during superstep `iteration` live in slot parity
  // iteration % 2 and are consumed in superstep iteration + 1
  MessagePackage& inbox(std::uint32_t dst, std::uint32_t src, std::uint64_t delivered_iteration) {
    return inbox_[delivered_iteration % 2][dst][src];
  }

  // Deposit p's outbox for q. Copies the payload (once, plus inflation-1
  // scratch copies, all timed); counts H for non-dropped packages. Slots are
  // parity double-buffered: a worker that raced ahead into superstep t+1
  // never touches the slots its peers are still merging from superstep t.
  void deliver(std::uint32_t p, std::uint32_t q, const MessagePackage& outbox,
               std::uint64_t iteration) {
    MessagePackage& slot = inbox_[iteration % 2][q][p];
    slot.clear();
    slot.iteration = static_cast<std::uint32_t>(iteration);
    bool dropped = drop_ && drop_->src == p && drop_->dst == q && drop_->iteration == iteration;
    if (dropped || outbox.record_count() == 0) return;  // empty package still delivered

    auto t0 = std::chrono::steady_clock::now();
    const std::size_t len = outbox.record_count();
    slot.ensure(len);
    slot.vertices.append_unchecked(outbox.vertices.data(), len);
    for (int a = 0; a < nva_; ++a)
      slot.vertex_assoc[a].append_unchecked(outbox.vertex_assoc[a].data(), len);
    for (int a = 0; a < nvv_; ++a)
      slot.value_assoc[a].append_unchecked(outbox.value_assoc[a].data(), len);
    // extra wire copies for the artificial H-inflation experiment
    for (std::uint32_t rep = 1; rep < inflation_; ++rep) {
      auto& sc = scratch_[p];
      sc.ids.assign(outbox.vertices.begin(), outbox.vertices.end());
      for (int a = 0; a < nva_; ++a)
        sc.ids.insert(sc.ids.end(), outbox.vertex_assoc[a].begin(), outbox.vertex_assoc[a].end());
      for (int a = 0; a < nvv_; ++a)
        sc.vals.assign(outbox.value_assoc[a].begin(), outbox.value_assoc[a].end());
    }
    auto t1 = std::chrono::steady_clock::now();
    exchange_ms_[p] += std::chrono::duration<double, std::milli>(t1 - t0).count();
    h_matrix_[p][q] += len;
    h_iter_src_[p] += len;
    wire_records_[p] += static_cast<std::uint64_t>(len) * inflation_;
  }

  std::uint64_t pending_records() const {
    std::uint64_t t = 0;
    for (int parity = 0; parity < 2; ++parity)
      for (const auto& row : inbox_[parity])
        for (const auto& pkg : row) t += pkg.record_count();
    return t;
  }

  // called by the barrier completion thread only
  std::vector<std::uint64_t> take_iteration_h() {
    auto snapshot = h_iter_src_;
    std::fill(h_iter_src_.begin(), h_iter_src_.end(), 0);
    return snapshot;
  }

  const std::vector<std::vector<std::uint64_t>>& h_matrix() const { return h_matrix_; }

  BufferStats inbox_stats(std::uint32_t dst) const {
    BufferStats agg;
    for (int parity = 0; parity < 2; ++parity)
      for (const auto& s : inbox_stats_[parity][dst]) agg.merge(s);
    return agg;
  }

  double total_exchange_ms() const {
    double t = 0;
    for (double v : exchange_ms_) t += v;
    return t;
  }
  std::uint64_t total_wire_records() const {
    std::uint64_t t = 0;
    for (auto v : wire_records_) t += v;
    return t;
  }

 private:
  struct Scratch {
    std::vector<VertexId> ids;
    std::vector<Value> vals;
  };

  std::uint32_t n_;
  int nva_ = 0, nvv_ = 0;
  std::uint32_t inflation_;
  std::optional<DropPackage> drop_;
  std::vector<std::vector<MessagePackage>> inbox_[2];  // [parity][dst][src]
  std::vector<std::vector<BufferStats>> inbox_stats_[2];
  std::vector<std::vector<std::uint64_t>> h_matrix_;
  std::vector<std::uint64_t> h_iter_src_;
  std::vector<double> exchange_ms_;
  std::vector<std::uint64_t> wire_records_;
  std::vector<Scratch> scratch_;
};

// Rendezvous barrier; the last arriver runs the completion callback before
// releasing the others.
class Barrier {
 public:
  explicit Barrier(std::uint32_t count) : count_(count) {}

  template <class Completion>
  void arrive_and_wait(Completion&& completion) {
    std::unique_lock<std::mutex> lock(mu_);
    std::uint64_t gen = generation_;
    if (++waiting_ == count_) {
      completion();
      waiting_ = 0;
      ++generation_;
      cv_.notify_all();
    } else {
      cv_.wait(lock, [&] { return generation_ != gen; });
    }
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::uint32_t count_;
  std::uint32_t waiting_ = 0;
  std::uint64_t generation_ = 0;
};

// ---------------------------------------------------------------------------
// worker context handed to primitive hooks

class WorkerHandle {
 public:
  WorkerHandle(std::uint32_t worker, const PartitionPlan& plan, const EngineConfig& cfg)
      : worker_(worker), plan_(plan), subgraph_(plan.subgraphs[worker]) {
    budget.hard_cap_bytes = cfg.policy.hard_cap_bytes;
    fused_ = cfg.fused == FusedMode::On || (cfg.fused == FusedMode::Auto && cfg.policy.fused());
    input.attach(&buffers[BufferRole::InputFrontier], &budget);
    next_input.attach(&buffers[BufferRole::InputFrontier], &budget);
    advance_out.attach(&buffers[BufferRole::AdvanceOutput], &budget);
    output.attach(&buffers[BufferRole::FilterOutput], &budget);
  }

  std::uint32_t worker() const { return worker_; }
  std::uint32_t num_workers() const { return plan_.num_partitions(); }
  const PartitionPlan& plan() const { return plan_; }
  const Csr& subgraph() const { return subgraph_; }
  std::uint64_t iteration() const { return iteration_; }
  bool fused_traversal() const { return fused_; }

  VertexId num_local_vertices() const { return subgraph_.num_vertices; }
  VertexId local_count() const { return plan_.local_count(worker_); }
  // hosted vertices as local IDs on this worker
  std::span<const VertexId> hosted_local() const { return hosted_local_; }

  VertexId to_global(VertexId local) const { return plan_.to_global(worker_, local); }
  VertexId to_local(VertexId global) const { return plan_.to_local(worker_, global); }
  std::uint32_t owner_of_global(VertexId global) const { return plan_.owner_of(global); }
  bool hosts_local(VertexId local) const {
    return plan_.duplication == Duplication::All ? plan_.owner_of(local) == worker_
                                                 : local < plan_.local_count(worker_);
  }

  // seed the initial frontier (valid inside PrimitiveSpec::init only)
  void push_initial(VertexId local) {
    next_input.ensure_capacity(next_input.size() + 1);
    next_input.push_back(local);
  }

  template <class Visit>
  Frontier& run_advance(const Frontier& in, Visit&& visit) {
    advance(subgraph_, in, advance_out, std::forward<Visit>(visit), &edges_examined);
    return advance_out;
  }

  template <class Keep>
  Frontier& run_filter(const Frontier& in, Keep&& keep, std::size_t capacity_bound) {
    filter(in, output, std::forward<Keep>(keep), capacity_bound);
    return output;
  }

  // fused or two-stage traversal per the active policy; dedup_bound caps the
  // output when the keep predicate deduplicates
  template <class Visit, class Keep>
  Frontier& pipeline(const Frontier& in, Visit&& visit, Keep&& keep, std::size_t dedup_bound) {
    if (fused_) {
      advance_filter_fused(subgraph_, in, output, std::forward<Visit>(visit),
                           std::forward<Keep>(keep), dedup_bound, &edges_examined);
    } else {
      run_advance(in, std::forward<Visit>(visit));
      run_filter(advance_out, std::forward<Keep>(keep),
                 filter_output_bound(advance_out.size(), num_local_vertices()));
    }
    return output;
  }

  const GlobalView* previous_view() const { return prev_view_; }
  WorkerReport& report() { return report_; }
  void count_edges(std::uint64_t k) { edges_examined += k; }

  void begin_superstep(std::uint64_t iter, const GlobalView* prev) {
    iteration_ = iter;
    prev_view_ = prev;
    report_ = WorkerReport{};
    edges_baseline_ = edges_examined;
    combine_baseline_ = combine_ops;
  }

  void publish_deltas() {
    report_.edges_delta = edges_examined - edges_baseline_;
    report_.combine_delta = combine_ops - combine_baseline_;
  }

  void set_hosted_local(std::vector<VertexId> v) { hosted_local_ = std::move(v); }

  // engine internals
  MemoryBudget budget;
  std::map<BufferRole, BufferStats> buffers;
  Frontier input, next_input, advance_out, output;
  std::vector<MessagePackage> outboxes;
  std::vector<Label> merge_stamp;  // dedups appends within one merge phase
  std::uint64_t edges_examined = 0;
  std::uint64_t combine_ops = 0;

 private:
  std::uint32_t worker_;
  const PartitionPlan& plan_;
  const Csr& subgraph_;
  bool fused_ = false;
  std::uint64_t iteration_ = 0;
  std::uint64_t edges_baseline_ = 0;
  std::uint64_t combine_baseline_ = 0;
  const GlobalView* prev_view_ = nullptr;
  WorkerReport report_;
  std::vector<VertexId> hosted_local_;
};

// ---------------------------------------------------------------------------
// primitive authoring contract

template <class State>
struct PrimitiveSpec {
  std::string name;
  int num_vertex_associates = 0;  // per-vertex IDs shipped (predecessors etc.)
  int num_value_associates = 0;   // per-vertex scalars shipped (labels, ranks)
  CommMode communication = CommMode::Selective;
  bool allow_comm_override = false;
  std::optional<Duplication> duplication_required = Duplication::All;

  // seed state and the initial frontier
  std::function<void(State&, WorkerHandle&)> init;

  // one superstep of local computation: consume `in`, emit the new frontier
  std::function<void(State&, WorkerHandle&, const Frontier&, Frontier&)> iteration_body;

  // merge one received vertex into local state; must be commutative and
  // associative over receipt order; the return value decides enqueueing
  std::function<bool(State&, WorkerHandle&, VertexId, std::span<const VertexId>,
                     std::span<const Value>, std::uint64_t iteration)>
      combine;

  // fill associates for one outgoing vertex (local IDs on the sender)
  std::function<void(State&, WorkerHandle&, VertexId, std::span<VertexId>, std::span<Value>)>
      gather;

  // pre-send suppression: return false to drop a remote vertex whose value
  // is no improvement over what was already sent to that peer
  std::function<bool(State&, WorkerHandle&, std::uint32_t peer, VertexId)> send_filter;

  // per-superstep routing override, evaluated after the body (e.g. a
  // traversal phase that is selective followed by a broadcast phase)
  std::function<CommMode(const State&, const WorkerHandle&)> comm_selector;

  // custom stop rule evaluated at the barrier; the default requires every
  // frontier empty and every package consumed
  std::function<bool(const GlobalView&)> stop_condition;

  // runs after the loop, with inboxes drained and the final view available
  std::function<void(State&, WorkerHandle&, const GlobalView&)> finalize;
};

template <class State>
struct RunResult {
  std::vector<State> states;
  RunStats stats;
};

// append one record (vertex + associates) to an outbox, converting the ID
// into the destination's local space
template <class State>
void append_record(const PrimitiveSpec<State>& spec, State& state, WorkerHandle& h,
                   MessagePackage& ob, VertexId v, std::uint32_t q) {
  VertexId global = h.to_global(v);
  VertexId dest_local = h.plan().to_local(q, global);
  if (dest_local == kInvalidVertex) {
    throw std::runtime_error("package_remote: vertex " + std::to_string(global) +
                             " has no proxy on partition " + std::to_string(q));
  }
  std::array<VertexId, 8> va;
  std::array<Value, 8> vv;
  if (spec.gather) {
    spec.gather(state, h, v, std::span<VertexId>(va.data(), spec.num_vertex_associates),
                std::span<Value>(vv.data(), spec.num_value_associates));
  }
  std::size_t pos = ob.vertices.size();
  ob.ensure(pos + 1);
  ob.vertices.push_back(dest_local);
  for (int a = 0; a < spec.num_vertex_associates; ++a) {
    ob.vertex_assoc[a].resize_within_capacity(pos + 1);
    ob.vertex_assoc[a][pos] = va[a];
  }
  for (int a = 0; a < spec.num_value_associates; ++a) {
    ob.value_assoc[a].resize_within_capacity(pos + 1);
    ob.value_assoc[a][pos] = vv[a];
  }
}

namespace detail {

inline void prealloc_worker_buffers(WorkerHandle& h, ExchangeFabric& fabric,
                                    const AllocationPolicy& policy, EdgeId local_edges,
                                    VertexId local_vertices) {
  auto factor = [&](BufferRole r) {
    auto it = policy.factors.find(to_string(r));
    return it == policy.factors.end() ? 0.0 : it->second;
  };
  auto items = [](double f, std::uint64_t unit) {
    return static_cast<std::size_t>(f * static_cast<double>(unit) + 0.9999);
  };
  switch (policy.kind) {
    case AllocPolicyKind::JustEnough:
      break;
    case AllocPolicyKind::Maximum:
      h.advance_out.prealloc(local_edges);
      h.output.prealloc(local_vertices);
      h.input.prealloc(local_vertices);
      h.next_input.prealloc(local_vertices);
      for (auto& ob : h.outboxes) ob.prealloc(local_vertices);
      fabric.prealloc_inboxes(h.worker(), local_vertices);
      break;
    case AllocPolicyKind::FixedPrealloc:
    case AllocPolicyKind::PreallocFused: {
      h.advance_out.prealloc(items(factor(BufferRole::AdvanceOutput), local_edges));
      h.output.prealloc(items(factor(BufferRole::FilterOutput), local_vertices));
      std::size_t in_cap = items(factor(BufferRole::InputFrontier), local_vertices);
      h.input.prealloc(in_cap);
      h.next_input.prealloc(in_cap);
      std::size_t ob_cap = items(factor(BufferRole::Outbox), local_vertices);
      for (auto& ob : h.outboxes) ob.prealloc(ob_cap);
      fabric.prealloc_inboxes(h.worker(), items(factor(BufferRole::Inbox), local_vertices));
      break;
    }
  }
}

}  // namespace detail

// Execute the superstep loop, one worker per partition:
//   iteration body -> split -> package -> exchange -> (rendezvous) ->
//   merge received data -> barrier with stop check.
// Received data is merged before the convergence check sees the frontier
// sizes, so a superstep whose packages all turn out stale does not extend
// the run. Each worker exclusively owns its partition's mutable state;
// packages only change hands across the rendezvous, so no package from
// superstep t is consumed before all of t-1's are.
template <class State>
RunResult<State> run_primitive(const PrimitiveSpec<State>& spec, const PartitionPlan& plan,
                               const EngineConfig& cfg) {
  const std::uint32_t n = plan.num_partitions();
  if (spec.duplication_required && plan.duplication != *spec.duplication_required) {
    throw std::invalid_argument(spec.name + ": requires --dup " +
                                std::string(to_string(*spec.duplication_required)));
  }
  for (const auto& [role, factor] : cfg.policy.factors) {
    if (factor < 0.0)
      throw std::invalid_argument("sizing factor for " + role + " must not be negative");
  }
  CommMode comm = spec.communication;
  if (cfg.comm_override && *cfg.comm_override != spec.communication) {
    if (!spec.allow_comm_override)
      throw std::invalid_argument(spec.name + ": communication mode is fixed to " +
                                  std::string(to_string(spec.communication)));
    comm = *cfg.comm_override;
  }

  RunResult<State> result;
  result.states.resize(n);
  RunStats& stats = result.stats;
  stats.primitive = spec.name;
  stats.n = n;
  stats.duplication = to_string(plan.duplication);
  stats.communication = to_string(comm);
  stats.policy = to_string(cfg.policy.kind);
  stats.h_inflation = cfg.h_inflation ? cfg.h_inflation : 1;

  ExchangeFabric fabric(n, spec.num_vertex_associates, spec.num_value_associates,
                        cfg.h_inflation, cfg.drop_package);

  std::vector<std::unique_ptr<WorkerHandle>> handles;
  handles.reserve(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    handles.push_back(std::make_unique<WorkerHandle>(p, plan, cfg));
    WorkerHandle& h = *handles.back();
    h.outboxes.resize(n);
    for (std::uint32_t q = 0; q < n; ++q)
      h.outboxes[q].configure(spec.num_vertex_associates, spec.num_value_associates,
                              &h.buffers[BufferRole::Outbox], &h.budget);
    fabric.attach_inboxes(p, &h.budget);
    h.merge_stamp.assign(plan.subgraphs[p].num_vertices, 0);
    std::vector<VertexId> hosted;
    hosted.reserve(plan.locals[p].size());
    if (plan.duplication == Duplication::All) {
      hosted = plan.locals[p];
    } else {
      for (VertexId l = 0; l < plan.local_count(p); ++l) hosted.push_back(l);
    }
    h.set_hosted_local(std::move(hosted));
    detail::prealloc_worker_buffers(h, fabric, cfg.policy, plan.subgraphs[p].num_edges(),
                                    plan.subgraphs[p].num_vertices);
  }

  Barrier barrier(n);
  std::vector<WorkerReport> report_slots(n);
  std::deque<GlobalView> views;
  std::atomic<bool> stop_flag{false};
  std::string stop_reason;
  std::mutex error_mu;
  std::exception_ptr first_error;
  auto record_error = [&](std::exception_ptr e) {
    std::lock_guard<std::mutex> lock(error_mu);
    if (!first_error) first_error = e;
  };
  auto has_error = [&] {
    std::lock_guard<std::mutex> lock(error_mu);
    return static_cast<bool>(first_error);
  };

  auto completion = [&](std::uint64_t iter) {
    GlobalView view;
    view.iteration = static_cast<std::uint32_t>(iter);
    view.num_workers = n;
    view.reports = report_slots;
    for (const auto& r : view.reports) {
      view.total_out += r.out_frontier;
      view.total_next += r.next_frontier;
    }
    view.inflight_records = fabric.pending_records();
    stats.out_per_iter.push_back(view.total_out);
    stats.h_per_iter_by_src.push_back(fabric.take_iteration_h());
    std::uint64_t edges = 0, combines = 0;
    for (const auto& r : view.reports) {
      edges += r.edges_delta;
      combines += r.combine_delta;
    }
    stats.edges_per_iter.push_back(edges);
    stats.combine_per_iter.push_back(combines);

    bool stop = false;
    if (has_error()) {
      stop = true;
      stop_reason = "worker_error";
    } else if (iter + 1 >= cfg.max_supersteps) {
      stop = true;
      stop_reason = "max_supersteps";
    } else {
      bool converged = spec.stop_condition ? spec.stop_condition(view) : default_converged(view);
      if (converged) {
        stop = true;
        stop_reason = spec.stop_condition ? "stop_condition" : "frontiers_empty";
      }
    }
    views.push_back(std::move(view));
    stop_flag.store(stop, std::memory_order_release);
  };

  // merge packages that peers delivered during superstep `delivered_iter`
  auto merge_inboxes = [&](std::uint32_t p, WorkerHandle& h, State& state, Frontier* enqueue_to,
                           std::uint64_t delivered_iter, std::uint64_t stamp_iter) {
    std::uint64_t incoming = 0;
    for (std::uint32_t src = 0; src < n; ++src)
      incoming += fabric.inbox(p, src, delivered_iter).record_count();
    if (enqueue_to && incoming)
      enqueue_to->ensure_capacity(enqueue_to->size() + incoming);
    for (std::uint32_t src = 0; src < n; ++src) {
      if (src == p) continue;
      MessagePackage& pkg = fabric.inbox(p, src, delivered_iter);
      const std::size_t len = pkg.record_count();
      for (std::size_t i = 0; i < len; ++i) {
        VertexId v = pkg.vertices[i];
        std::array<VertexId, 8> va;
        std::array<Value, 8> vv;
        for (int a = 0; a < spec.num_vertex_associates; ++a) va[a] = pkg.vertex_assoc[a][i];
        for (int a = 0; a < spec.num_value_associates; ++a) vv[a] = pkg.value_assoc[a][i];
        h.combine_ops++;
        bool accepted = spec.combine(
            state, h, v, std::span<const VertexId>(va.data(), spec.num_vertex_associates),
            std::span<const Value>(vv.data(), spec.num_value_associates), pkg.iteration);
        // a vertex accepted from multiple packages is appended once
        if (accepted && enqueue_to && h.merge_stamp[v] != static_cast<Label>(stamp_iter + 1)) {
          h.merge_stamp[v] = static_cast<Label>(stamp_iter + 1);
          enqueue_to->push_back(v);
        }
      }
      pkg.clear();
    }
  };

  auto worker_main = [&](std::uint32_t p) {
    WorkerHandle& h = *handles[p];
    State& state = result.states[p];
    bool my_error = false;
    try {
      if (spec.init) spec.init(state, h);
    } catch (...) {
      my_error = true;
      record_error(std::current_exception());
    }
    barrier.arrive_and_wait([] {});  // everyone initialized before superstep 0

    for (std::uint64_t iter = 0;; ++iter) {
      try {
        if (my_error) throw std::runtime_error("skipped: earlier worker failure");
        h.begin_superstep(iter, views.empty() ? nullptr : &views.back());

        std::swap(h.input, h.next_input);
        h.next_input.clear();

        h.output.clear();
        spec.iteration_body(state, h, h.input, h.output);

        // split into local and per-peer remote sub-frontiers, stable order
        CommMode step_comm = spec.comm_selector ? spec.comm_selector(state, h) : comm;
        for (auto& ob : h.outboxes) ob.clear();
        if (step_comm == CommMode::Broadcast) {
          h.next_input.ensure_capacity(h.next_input.size() + h.output.size());
          for (VertexId v : h.output) h.next_input.push_back(v);
          for (std::uint32_t q = 0; q < n; ++q) {
            if (q == p) continue;
            MessagePackage& ob = h.outboxes[q];
            ob.dest = q;
            ob.iteration = static_cast<std::uint32_t>(iter);
            ob.ensure(h.output.size());
            for (VertexId v : h.output) append_record(spec, state, h, ob, v, q);
          }
        } else {
          std::vector<std::size_t> peer_count(n, 0);
          for (VertexId v : h.output) peer_count[plan.owner_of(h.to_global(v))]++;
          h.next_input.ensure_capacity(h.next_input.size() + peer_count[p]);
          for (std::uint32_t q = 0; q < n; ++q) {
            if (q == p) continue;
            h.outboxes[q].dest = q;
            h.outboxes[q].iteration = static_cast<std::uint32_t>(iter);
            h.outboxes[q].ensure(peer_count[q]);
          }
          for (VertexId v : h.output) {
            std::uint32_t q = plan.owner_of(h.to_global(v));
            if (q == p) {
              h.next_input.push_back(v);
            } else if (!spec.send_filter || spec.send_filter(state, h, q, v)) {
              append_record(spec, state, h, h.outboxes[q], v, q);
            }
          }
        }

        // push packages to peers (empty ones too, for termination accounting)
        for (std::uint32_t q = 0; q < n; ++q) {
          if (q == p) continue;
          fabric.deliver(p, q, h.outboxes[q], iter);
        }
      } catch (...) {
        if (!my_error) record_error(std::current_exception());
        my_error = true;
      }

      // everyone has pushed this superstep's packages
      barrier.arrive_and_wait([] {});

      // merge received sub-frontiers into next superstep's input, then let
      // the convergence check see the post-merge frontier sizes
      try {
        if (!my_error) {
          merge_inboxes(p, h, state, &h.next_input, iter, iter);
          h.report().out_frontier = h.output.size();
          h.report().next_frontier = h.next_input.size();
          h.publish_deltas();
        }
        report_slots[p] = h.report();
      } catch (...) {
        if (!my_error) record_error(std::current_exception());
        my_error = true;
        report_slots[p] = WorkerReport{};
      }

      barrier.arrive_and_wait([&] { completion(iter); });
      if (stop_flag.load(std::memory_order_acquire)) break;
    }

    try {
      if (spec.finalize && !has_error()) spec.finalize(state, h, views.back());
    } catch (...) {
      record_error(std::current_exception());
    }
  };

  auto t0 = std::chrono::steady_clock::now();
  if (n == 1) {
    worker_main(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::uint32_t p = 0; p < n; ++p) threads.emplace_back(worker_main, p);
    for (auto& t : threads) t.join();
  }
  auto t1 = std::chrono::steady_clock::now();

  if (first_error) std::rethrow_exception(first_error);

  stats.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  stats.supersteps = views.size();
  stats.stop_reason = stop_reason;
  stats.h_matrix = fabric.h_matrix();
  stats.exchange_ms = fabric.total_exchange_ms();
  stats.wire_records = fabric.total_wire_records();
  stats.worker_buffers.resize(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    WorkerHandle& h = *handles[p];
    stats.edges_examined += h.edges_examined;
    stats.combine_ops += h.combine_ops;
    h.buffers[BufferRole::Inbox].merge(fabric.inbox_stats(p));
    stats.worker_buffers[p] = h.buffers;
    stats.peak_bytes += h.budget.peak_bytes.load();
    for (const auto& [role, b] : h.buffers) stats.reallocs += b.realloc_count;
  }
  return result;
}

}  // namespace mgraph
