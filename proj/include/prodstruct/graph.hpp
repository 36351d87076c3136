#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prodstruct/errors.hpp"

namespace prodstruct {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}
  explicit VertexSet(std::vector<Vertex> ids) : members_(std::move(ids)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  /// {0, ..., n-1}
  static VertexSet range(int n) {
    VertexSet s;
    s.members_.resize(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) s.members_[static_cast<std::size_t>(i)] = i;
    return s;
  }

  // Adopts an already sorted, duplicate-free sequence.
  static VertexSet from_sorted(std::vector<Vertex> ids) {
    VertexSet s;
    s.members_ = std::move(ids);
    return s;
  }

  [[nodiscard]] bool contains(Vertex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  [[nodiscard]] int size() const { return static_cast<int>(members_.size()); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] Vertex front() const { return members_.front(); }
  [[nodiscard]] Vertex back() const { return members_.back(); }
  [[nodiscard]] Vertex operator[](std::size_t i) const { return members_[i]; }
  [[nodiscard]] const std::vector<Vertex>& members() const { return members_; }
  [[nodiscard]] auto begin() const { return members_.begin(); }
  [[nodiscard]] auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<Vertex> members_;
};

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(a.size() + b.size()));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from_sorted(std::move(out));
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(std::max(n, 0))) {}

  /// Deduplicates and symmetrizes; rejects out-of-range ids and self-loops.
  static Graph build(int n, std::span<const Edge> edges) {
    if (n < 0) throw InvalidInput("negative vertex count");
    Graph g(n);
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw InvalidInput("vertex id out of range in edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
      }
      if (u == v) throw InvalidInput("self-loop at vertex " + std::to_string(u));
      g.adj_[static_cast<std::size_t>(u)].push_back(v);
      g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    std::size_t total = 0;
    for (auto& nb : g.adj_) {
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      total += nb.size();
    }
    g.m_ = static_cast<int>(total / 2);
    return g;
  }

  static Graph build(int n, std::initializer_list<Edge> edges) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  [[nodiscard]] int vertex_count() const { return static_cast<int>(adj_.size()); }
  [[nodiscard]] int edge_count() const { return m_; }
  [[nodiscard]] bool valid(Vertex v) const { return v >= 0 && v < vertex_count(); }

  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  [[nodiscard]] int max_degree() const {
    int best = 0;
    for (const auto& nb : adj_) best = std::max(best, static_cast<int>(nb.size()));
    return best;
  }

  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const {
    if (!valid(u) || !valid(v)) return false;
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges with u < v in lexicographic order.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  int m_ = 0;
};

inline Graph build_graph(int n, std::span<const Edge> edges) { return Graph::build(n, edges); }

inline void check_vertices(const Graph& g, const VertexSet& s) {
  if (!s.empty() && (s.front() < 0 || s.back() >= g.vertex_count())) {
    throw InvalidInput("vertex set contains an id outside 0.." + std::to_string(g.vertex_count() - 1));
  }
}

namespace detail {

// Components of the subgraph induced by vertices with alive[v] != 0, each
// sorted, ordered by smallest member.
inline std::vector<VertexSet> components_of_mask(const Graph& g, const std::vector<char>& alive) {
  const int n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (!alive[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
    std::vector<Vertex> comp;
    stack.push_back(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (alive[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(comp));
  }
  return out;
}

}  // namespace detail

/// Maximal connected pieces, each sorted, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g) {
  return detail::components_of_mask(g, std::vector<char>(static_cast<std::size_t>(g.vertex_count()), 1));
}

/// Components of G[keep], in original ids.
inline std::vector<VertexSet> components_within(const Graph& g, const VertexSet& keep) {
  check_vertices(g, keep);
  std::vector<char> alive(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : keep) alive[static_cast<std::size_t>(v)] = 1;
  return detail::components_of_mask(g, alive);
}

/// Components of G - removed, in original ids.
inline std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
  check_vertices(g, removed);
  std::vector<char> alive(static_cast<std::size_t>(g.vertex_count()), 1);
  for (Vertex v : removed) alive[static_cast<std::size_t>(v)] = 0;
  return detail::components_of_mask(g, alive);
}

inline int max_component_size(const std::vector<VertexSet>& comps) {
  int best = 0;
  for (const auto& c : comps) best = std::max(best, c.size());
  return best;
}

inline bool is_connected(const Graph& g) { return components(g).size() <= 1; }

/// Induced subgraph with explicit id maps in both directions.
class SubgraphView {
 public:
  SubgraphView(const Graph& parent, VertexSet keep) : parent_(&parent), kept_(std::move(keep)) {
    check_vertices(parent, kept_);
    to_local_.assign(static_cast<std::size_t>(parent.vertex_count()), -1);
    for (int i = 0; i < kept_.size(); ++i) to_local_[static_cast<std::size_t>(kept_[static_cast<std::size_t>(i)])] = i;
    std::vector<Edge> local_edges;
    for (int i = 0; i < kept_.size(); ++i) {
      for (Vertex w : parent.neighbors(kept_[static_cast<std::size_t>(i)])) {
        const int j = to_local_[static_cast<std::size_t>(w)];
        if (j > i) local_edges.emplace_back(i, j);
      }
    }
    local_ = Graph::build(kept_.size(), local_edges);
  }

  [[nodiscard]] const Graph& graph() const { return local_; }
  [[nodiscard]] const Graph& parent() const { return *parent_; }
  [[nodiscard]] const VertexSet& kept() const { return kept_; }
  [[nodiscard]] Vertex to_parent(Vertex local) const { return kept_[static_cast<std::size_t>(local)]; }
  [[nodiscard]] std::optional<Vertex> to_local(Vertex parent_id) const {
    if (!parent_->valid(parent_id)) return std::nullopt;
    const int v = to_local_[static_cast<std::size_t>(parent_id)];
    if (v < 0) return std::nullopt;
    return v;
  }

  /// Maps a local vertex set to parent coordinates.
  [[nodiscard]] VertexSet lift(const VertexSet& local) const {
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(local.size()));
    for (Vertex v : local) out.push_back(to_parent(v));
    return VertexSet(std::move(out));
  }

 private:
  const Graph* parent_;
  VertexSet kept_;
  std::vector<int> to_local_;
  Graph local_;
};

inline SubgraphView induced(const Graph& g, VertexSet keep) { return SubgraphView(g, std::move(keep)); }

/// BFS distances from root restricted to vertices with alive[v] (all when empty); -1 when unreached.
inline std::vector<int> bfs_distances(const Graph& g, Vertex root, const std::vector<char>& alive = {}) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<Vertex> q;
  dist[static_cast<std::size_t>(root)] = 0;
  q.push(root);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (!alive.empty() && !alive[static_cast<std::size_t>(w)]) continue;
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

struct Layering {
  std::vector<VertexSet> layers;  // layers[i] = vertices at distance exactly i
  int eccentricity = 0;
};

/// BFS layering from root; the graph must be connected.
inline Layering bfs_layers(const Graph& g, Vertex root) {
  if (!g.valid(root)) throw InvalidInput("root " + std::to_string(root) + " is not a vertex");
  const auto dist = bfs_distances(g, root);
  int ecc = 0;
  for (int d : dist) {
    if (d < 0) throw PreconditionViolated("graph is disconnected from root " + std::to_string(root));
    ecc = std::max(ecc, d);
  }
  std::vector<std::vector<Vertex>> layers(static_cast<std::size_t>(ecc + 1));
  for (Vertex v = 0; v < g.vertex_count(); ++v) layers[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])].push_back(v);
  Layering out;
  out.eccentricity = ecc;
  for (auto& l : layers) out.layers.push_back(VertexSet::from_sorted(std::move(l)));
  return out;
}

// --- text format: "n m", then m lines "u v"; '#' lines are comments ---

inline Graph read_graph(std::istream& in) {
  std::string line;
  std::vector<long long> nums;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long a = 0;
    long long b = 0;
    if (!(ls >> a >> b)) throw FormatError("line " + std::to_string(line_no) + ": expected two integers");
    std::string rest;
    if (ls >> rest) throw FormatError("line " + std::to_string(line_no) + ": trailing data");
    if (!have_header) {
      if (a < 0 || b < 0) throw FormatError("negative header values");
      n = a;
      m = b;
      have_header = true;
      edges.reserve(static_cast<std::size_t>(m));
    } else {
      if (a < 0 || b < 0 || a >= n || b >= n) {
        throw FormatError("line " + std::to_string(line_no) + ": vertex id out of range");
      }
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  }
  if (!have_header) throw FormatError("missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw FormatError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  try {
    return Graph::build(static_cast<int>(n), edges);
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_graph(in);
}

inline void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  write_graph(out, g);
}

}  // namespace prodstruct
