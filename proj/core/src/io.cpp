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

#include "mgraph/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mgraph {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const std::string& name) {
  LoadedGraph g;
  std::string line;
  std::size_t lineno = 0;
  bool matrix_market = false;
  bool mm_dims_seen = false;
  bool mm_symmetric = false;
  long long mm_rows = 0, mm_cols = 0, mm_nnz = 0;
  VertexId max_id = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.rfind("%%MatrixMarket", 0) == 0) {
      matrix_market = true;
      if (line.find("coordinate") == std::string::npos)
        fail(name, lineno, "only Matrix Market coordinate format is supported");
      mm_symmetric = line.find("symmetric") != std::string::npos;
      continue;
    }
    if (line.empty()) continue;
    if (line[0] == '#' || line[0] == '%') continue;

    std::istringstream ss(line);
    if (matrix_market && !mm_dims_seen) {
      if (!(ss >> mm_rows >> mm_cols >> mm_nnz)) fail(name, lineno, "bad size line");
      if (mm_rows < 0 || mm_cols < 0) fail(name, lineno, "negative dimension");
      mm_dims_seen = true;
      g.num_vertices = static_cast<VertexId>(std::max(mm_rows, mm_cols));
      continue;
    }

    long long u, v;
    if (!(ss >> u >> v)) fail(name, lineno, "expected 'u v [w]'");
    double w;
    bool has_w = static_cast<bool>(ss >> w);
    if (has_w && w < 0) fail(name, lineno, "negative edge weight");
    if (matrix_market) {
      if (u < 1 || v < 1) fail(name, lineno, "Matrix Market IDs are 1-based");
      u -= 1;
      v -= 1;
      if (u >= mm_rows || v >= mm_cols) fail(name, lineno, "entry outside declared dimensions");
    } else if (u < 0 || v < 0) {
      fail(name, lineno, "negative vertex ID");
    }
    if (!g.edges.empty() && has_w != g.has_weights)
      fail(name, lineno, "inconsistent weight column");
    g.has_weights = has_w;
    WeightedEdge e{static_cast<VertexId>(u), static_cast<VertexId>(v),
                   has_w ? static_cast<Weight>(w) : Weight{0}};
    g.edges.push_back(e);
    if (mm_symmetric && e.src != e.dst) g.edges.push_back({e.dst, e.src, e.weight});
    max_id = std::max({max_id, e.src, e.dst});
  }

  if (!matrix_market) {
    g.num_vertices = g.edges.empty() ? 0 : max_id + 1;
  } else if (!mm_dims_seen) {
    fail(name, lineno, "missing Matrix Market size line");
  }
  return g;
}

LoadedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return load_edge_list(in, path);
}

void save_edge_list(const std::string& path, const EdgeList& edges, bool with_weights) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  for (const auto& e : edges) {
    out << e.src << ' ' << e.dst;
    if (with_weights) out << ' ' << e.weight;
    out << '\n';
  }
}

}  // namespace mgraph
