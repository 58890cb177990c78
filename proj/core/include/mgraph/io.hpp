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

#include <iosfwd>
#include <string>

#include "mgraph/csr.hpp"

namespace mgraph {

struct LoadedGraph {
  EdgeList edges;
  VertexId num_vertices = 0;
  bool has_weights = false;
};

// Reads either a plain edge list (one "u v [w]" per line, 0-based IDs,
// '#'/'%' comments) or Matrix Market coordinate format (detected by the
// "%%MatrixMarket" header; 1-based IDs converted to 0-based on load).
LoadedGraph load_edge_list(const std::string& path);
LoadedGraph load_edge_list(std::istream& in, const std::string& name = "<stream>");

void save_edge_list(const std::string& path, const EdgeList& edges, bool with_weights);

}  // namespace mgraph
