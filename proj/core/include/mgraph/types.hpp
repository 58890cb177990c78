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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace mgraph {

// Vertex and edge index widths are build-configurable. The default 32-bit
// layout covers graphs up to ~4B vertices/edges; define MGRAPH_WIDE_IDS for
// 64-bit IDs (supported, unbenchmarked).
#ifdef MGRAPH_WIDE_IDS
using VertexId = std::uint64_t;
using EdgeId = std::uint64_t;
#else
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
#endif

using Weight = std::uint32_t;
using Value = double;  // scalar associate type shipped between workers
using Label = std::uint32_t;
using Dist = std::uint64_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr Label kInfLabel = std::numeric_limits<Label>::max();
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64, used where a stateless per-key uniform draw is needed
// (e.g. edge weights that must be identical on both arcs of an edge).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace mgraph
