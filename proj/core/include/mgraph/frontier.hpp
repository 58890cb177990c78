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

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cstring>
#include <map>
#include <memory>
#include <span>
#include <string>

#include "mgraph/csr.hpp"
#include "mgraph/types.hpp"

namespace mgraph {

// Growable buffer roles. Sizing factors are expressed per role:
// AdvanceOutput in |E_i| units, everything else in |V_i| units.
enum class BufferRole { AdvanceOutput, FilterOutput, InputFrontier, Outbox, Inbox };

inline const char* to_string(BufferRole r) {
  switch (r) {
    case BufferRole::AdvanceOutput: return "advance_output";
    case BufferRole::FilterOutput: return "filter_output";
    case BufferRole::InputFrontier: return "input_frontier";
    case BufferRole::Outbox: return "outbox";
    case BufferRole::Inbox: return "inbox";
  }
  return "?";
}

enum class AllocPolicyKind { JustEnough, FixedPrealloc, Maximum, PreallocFused };

inline const char* to_string(AllocPolicyKind k) {
  switch (k) {
    case AllocPolicyKind::JustEnough: return "just";
    case AllocPolicyKind::FixedPrealloc: return "fixed";
    case AllocPolicyKind::Maximum: return "max";
    case AllocPolicyKind::PreallocFused: return "fused";
  }
  return "?";
}

// role -> peak/|unit| ratios recorded by one run and replayed by another
using SizingFactors = std::map<std::string, double>;

struct AllocationPolicy {
  AllocPolicyKind kind = AllocPolicyKind::JustEnough;
  SizingFactors factors;              // used by FixedPrealloc / PreallocFused
  std::uint64_t hard_cap_bytes = 0;   // 0 = unlimited; per-worker budget

  bool fused() const { return kind == AllocPolicyKind::PreallocFused; }
};

struct BufferStats {
  std::uint64_t realloc_count = 0;
  std::uint64_t peak_items = 0;
  std::uint64_t peak_bytes = 0;

  void merge(const BufferStats& o) {
    realloc_count += o.realloc_count;
    peak_items = std::max(peak_items, o.peak_items);
    peak_bytes = std::max(peak_bytes, o.peak_bytes);
  }
};

// Per-worker allocation accounting; shared by every buffer the worker owns
// so the hard cap applies to the total footprint. Atomic because a peer may
// grow this worker's inbox while the worker grows its own buffers.
struct MemoryBudget {
  std::atomic<std::uint64_t> allocated_bytes{0};
  std::atomic<std::uint64_t> peak_bytes{0};
  std::uint64_t hard_cap_bytes = 0;

  void charge(std::uint64_t add, std::uint64_t release) {
    std::uint64_t now = allocated_bytes.fetch_add(add - release, std::memory_order_relaxed) +
                        (add - release);
    std::uint64_t prev = peak_bytes.load(std::memory_order_relaxed);
    while (now > prev &&
           !peak_bytes.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
    }
    if (hard_cap_bytes && now > hard_cap_bytes) {
      throw CapacityError("worker memory cap exceeded: need " + std::to_string(now) +
                          " bytes, cap " + std::to_string(hard_cap_bytes) +
                          " (graph does not fit under this budget)");
    }
  }
};

// Contiguous buffer with just-enough growth: capacity extends to exactly the
// requested size, never speculatively. Policies differ only in how much is
// preallocated up front; growth during a run is what realloc_count counts.
template <class T>
class CapVector {
 public:
  CapVector() = default;

  void attach(BufferStats* stats, MemoryBudget* budget) {
    stats_ = stats;
    budget_ = budget;
  }

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return cap_; }
  bool empty() const { return size_ == 0; }
  std::uint64_t realloc_count() const { return reallocs_; }
  std::uint64_t peak_capacity() const { return peak_cap_; }

  const T* data() const { return data_.get(); }
  T* data() { return data_.get(); }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T* begin() const { return data_.get(); }
  const T* end() const { return data_.get() + size_; }
  std::span<const T> span() const { return {data_.get(), size_}; }

  void clear() { size_ = 0; }

  // Initial sizing from a policy; not counted as a reallocation.
  void prealloc(std::size_t cap0) {
    if (cap0 > cap_) grow(cap0, false);
  }

  // Grow to exactly `required` if the current capacity is insufficient;
  // contents are preserved and the growth is counted.
  void ensure_capacity(std::size_t required) {
    if (required > cap_) grow(required, true);
  }

  void push_back(T v) {
    assert(size_ < cap_ && "capacity must be ensured before appending");
    data_[size_++] = v;
  }

  void append_unchecked(const T* src, std::size_t count) {
    assert(size_ + count <= cap_);
    std::memcpy(data_.get() + size_, src, count * sizeof(T));
    size_ += count;
  }

  void resize_within_capacity(std::size_t new_size) {
    assert(new_size <= cap_);
    size_ = new_size;
  }

 private:
  void grow(std::size_t new_cap, bool counted) {
    if (budget_) budget_->charge(new_cap * sizeof(T), cap_ * sizeof(T));
    std::unique_ptr<T[]> bigger(new T[new_cap]);
    if (size_) std::memcpy(bigger.get(), data_.get(), size_ * sizeof(T));
    data_ = std::move(bigger);
    cap_ = new_cap;
    peak_cap_ = std::max(peak_cap_, static_cast<std::uint64_t>(cap_));
    if (counted) ++reallocs_;
    if (stats_) {
      if (counted) ++stats_->realloc_count;
      stats_->peak_items = std::max(stats_->peak_items, static_cast<std::uint64_t>(cap_));
      stats_->peak_bytes = std::max(stats_->peak_bytes, static_cast<std::uint64_t>(cap_) * sizeof(T));
    }
  }

  std::unique_ptr<T[]> data_;
  std::size_t size_ = 0;
  std::size_t cap_ = 0;
  std::uint64_t reallocs_ = 0;
  std::uint64_t peak_cap_ = 0;
  BufferStats* stats_ = nullptr;
  MemoryBudget* budget_ = nullptr;
};

using Frontier = CapVector<VertexId>;

inline void ensure_capacity(Frontier& f, std::size_t required) { f.ensure_capacity(required); }

// Exact advance output size: sum of out-degrees over the frontier. Upper
// bound on the advance output, exact when nothing is filtered.
inline EdgeId estimate_advance_output(const Frontier& f, const Csr& g) {
  EdgeId total = 0;
  for (VertexId v : f) {
    if (v >= g.num_vertices) throw std::invalid_argument("estimate_advance_output: invalid vertex id");
    total += g.degree(v);
  }
  return total;
}

// Filter output bound: capped by |V_i| when the filter deduplicates,
// otherwise by the input length.
inline std::size_t filter_output_bound(std::size_t input_length, VertexId num_local_vertices,
                                       bool deduplicating = true) {
  if (!deduplicating) return input_length;
  return std::min<std::size_t>(input_length, num_local_vertices);
}

}  // namespace mgraph
