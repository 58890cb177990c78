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

#include <vector>

#include "mgraph/csr.hpp"

// Plain sequential implementations, kept independent of the worker engine;
// the validate command and the test suites check engine results against
// these.
namespace mgraph::reference {

std::vector<Label> bfs_levels(const Csr& g, VertexId source);

std::vector<Dist> dijkstra(const Csr& g, VertexId source);

// min global ID per component, union-find based
std::vector<VertexId> connected_components(const Csr& g);

// single-source dependency accumulation
std::vector<double> brandes_bc(const Csr& g, VertexId source);

struct PowerIterationResult {
  std::vector<double> ranks;
  std::uint64_t iterations = 0;
  std::vector<double> rank_sums;
};

// power iteration with uniform dangling redistribution; stops at the first
// iterate whose max relative change falls below epsilon, or after max_iter
PowerIterationResult pagerank_power(const Csr& g, double damping, double epsilon,
                                    std::uint64_t max_iter);

}  // namespace mgraph::reference
