#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "prodstruct/errors.hpp"
#include "prodstruct/graph.hpp"

namespace prodstruct {

inline constexpr Vertex kNoParent = -1;

/// Rooted forest given by a parent array. Its closure (every
/// ancestor-descendant pair joined) is the host graph of a tree-depth
/// certificate.
class RootedForest {
 public:
  RootedForest() = default;

  /// Validates ids and acyclicity.
  explicit RootedForest(std::vector<Vertex> parent) : parent_(std::move(parent)) {
    const int n = size();
    for (int v = 0; v < n; ++v) {
      const Vertex p = parent_[v];
      if (p != kNoParent && (p < 0 || p >= n || p == v)) {
        throw InvalidInput("forest parent of " + std::to_string(v) + " is invalid");
      }
    }
    depth_.assign(n, -1);
    for (int v = 0; v < n; ++v) {
      // walk up until a vertex with known depth; a walk longer than n means a cycle
      std::vector<Vertex> path;
      Vertex x = v;
      while (x != kNoParent && depth_[x] < 0) {
        path.push_back(x);
        if (static_cast<int>(path.size()) > n) throw InvalidInput("forest parent structure has a cycle");
        x = parent_[x];
      }
      int d = (x == kNoParent) ? 0 : depth_[x] + 1;
      for (auto it = path.rbegin(); it != path.rend(); ++it) depth_[*it] = d++;
    }
    height_ = 0;
    for (int d : depth_) height_ = std::max(height_, d + 1);
  }

  [[nodiscard]] int size() const { return static_cast<int>(parent_.size()); }
  [[nodiscard]] Vertex parent(Vertex v) const { return parent_[v]; }
  [[nodiscard]] const std::vector<Vertex>& parents() const { return parent_; }
  /// Number of proper ancestors.
  [[nodiscard]] int depth(Vertex v) const { return depth_[v]; }
  /// Maximum number of vertices on a root-leaf path.
  [[nodiscard]] int vertex_height() const { return height_; }

  [[nodiscard]] VertexSet roots() const {
    std::vector<Vertex> out;
    for (int v = 0; v < size(); ++v) {
      if (parent_[v] == kNoParent) out.push_back(v);
    }
    return VertexSet::from_sorted(std::move(out));
  }

  [[nodiscard]] bool is_ancestor(Vertex a, Vertex d) const {
    while (d != kNoParent && depth_[d] > depth_[a]) d = parent_[d];
    return d == a;
  }

  [[nodiscard]] bool comparable(Vertex u, Vertex v) const {
    return depth_[u] <= depth_[v] ? is_ancestor(u, v) : is_ancestor(v, u);
  }

  /// Vertices on the path from v up to its root, v first.
  [[nodiscard]] std::vector<Vertex> path_to_root(Vertex v) const {
    std::vector<Vertex> out;
    for (; v != kNoParent; v = parent_[v]) out.push_back(v);
    return out;
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<int> depth_;
  int height_ = 0;
};

/// The closure of a rooted forest.
inline Graph closure(const RootedForest& f) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < f.size(); ++v) {
    for (Vertex a = f.parent(v); a != kNoParent; a = f.parent(a)) edges.emplace_back(a, v);
  }
  return Graph::build(f.size(), edges);
}

/// True iff every edge of g joins an ancestor-descendant pair of f.
inline bool verify_closure_embedding(const Graph& g, const RootedForest& f) {
  if (f.size() < g.vertex_count()) {
    throw InvalidInput("forest covers " + std::to_string(f.size()) + " vertices, graph has " +
                       std::to_string(g.vertex_count()));
  }
  for (const auto& [u, v] : g.edges()) {
    if (!f.comparable(u, v)) return false;
  }
  return true;
}

}  // namespace prodstruct
