#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/graph.hpp"
#include "prodstruct/partition.hpp"

namespace prodstruct {

struct WeightedGraph {
  Graph graph;
  std::vector<double> weights;

  WeightedGraph() = default;
  WeightedGraph(Graph g, std::vector<double> w) : graph(std::move(g)), weights(std::move(w)) {
    if (static_cast<int>(weights.size()) != graph.vertex_count()) throw InvalidInput("one weight per vertex required");
    for (double x : weights) {
      if (!(x >= 0) || !std::isfinite(x)) throw InvalidInput("weights must be finite and nonnegative");
    }
  }

  [[nodiscard]] double total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
  [[nodiscard]] double weight(const VertexSet& s) const {
    double w = 0;
    for (Vertex v : s) w += weights[v];
    return w;
  }
};

/// Lattice coordinates of P_{L_1} x ... x P_{L_d} x K_c: coords[v] holds
/// x_1..x_d (0-based) followed by the clique index.
struct ProductCoordinates {
  std::vector<int> path_lengths;
  int clique = 1;
  std::vector<std::vector<int>> coords;

  [[nodiscard]] int dims() const { return static_cast<int>(path_lengths.size()); }
};

/// The strong product of paths with K_c; vertex ids enumerate coordinates
/// lexicographically (clique index fastest).
inline std::pair<Graph, ProductCoordinates> blowup_graph(std::vector<int> path_lengths, int c) {
  if (path_lengths.empty() || c < 1) throw InvalidInput("blow-up needs at least one path and c >= 1");
  long long total = c;
  for (int l : path_lengths) {
    if (l < 1) throw InvalidInput("path lengths must be >= 1");
    total *= l;
    if (total > 50'000'000) throw InvalidInput("blow-up too large");
  }
  const int n = static_cast<int>(total);
  const int d = static_cast<int>(path_lengths.size());
  ProductCoordinates pc{path_lengths, c, std::vector<std::vector<int>>(n, std::vector<int>(d + 1))};
  for (int v = 0; v < n; ++v) {
    int rest = v;
    pc.coords[v][d] = rest % c;
    rest /= c;
    for (int i = d - 1; i >= 0; --i) {
      pc.coords[v][i] = rest % path_lengths[i];
      rest /= path_lengths[i];
    }
  }
  auto id_of = [&](const std::vector<int>& x) {
    long long id = 0;
    for (int i = 0; i < d; ++i) id = id * path_lengths[i] + x[i];
    return static_cast<int>(id * c + x[d]);
  };
  std::vector<Edge> edges;
  std::vector<int> delta(d + 1);
  for (int v = 0; v < n; ++v) {
    // enumerate offsets in {-1,0,1}^d and every clique index
    const int combos = static_cast<int>(std::pow(3, d));
    for (int code = 0; code < combos; ++code) {
      int rest = code;
      std::vector<int> x = pc.coords[v];
      bool ok = true;
      for (int i = 0; i < d; ++i) {
        x[i] += rest % 3 - 1;
        rest /= 3;
        if (x[i] < 0 || x[i] >= path_lengths[i]) ok = false;
      }
      if (!ok) continue;
      for (int l = 0; l < c; ++l) {
        x[d] = l;
        const int w = id_of(x);
        if (w > v) edges.emplace_back(v, w);
      }
    }
  }
  return {Graph::build(n, edges), std::move(pc)};
}

/// Checks coordinates are a bijection onto the lattice and every edge is a
/// strong-product edge.
inline void check_coordinates(const Graph& g, const ProductCoordinates& pc) {
  const int d = pc.dims();
  if (static_cast<int>(pc.coords.size()) != g.vertex_count()) throw InvalidInput("coordinates: one tuple per vertex");
  long long lattice = pc.clique;
  for (int l : pc.path_lengths) lattice *= l;
  if (lattice != g.vertex_count()) throw InvalidInput("coordinates: lattice size does not match vertex count");
  std::map<std::vector<int>, Vertex> seen;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto& x = pc.coords[v];
    if (static_cast<int>(x.size()) != d + 1) throw InvalidInput("coordinates: wrong tuple length");
    for (int i = 0; i < d; ++i) {
      if (x[i] < 0 || x[i] >= pc.path_lengths[i]) throw InvalidInput("coordinates: out of range");
    }
    if (x[d] < 0 || x[d] >= pc.clique) throw InvalidInput("coordinates: clique index out of range");
    if (!seen.emplace(x, v).second) throw InvalidInput("coordinates: duplicate tuple");
  }
  for (const auto& [u, v] : g.edges()) {
    for (int i = 0; i < d; ++i) {
      if (std::abs(pc.coords[u][i] - pc.coords[v][i]) > 1) {
        throw InvalidInput("coordinates: edge (" + std::to_string(u) + "," + std::to_string(v) +
                           ") is not a product edge");
      }
    }
  }
}

struct SeparabilityStructure {
  enum class Kind { PathBlowup, GridBlowup, Tree };
  Kind kind = Kind::PathBlowup;
  ProductCoordinates coords;  // blow-ups only
  int delta = 3;              // tree only
};

struct WeightedSeparatorReport {
  VertexSet S;
  double weight = 0;
  int max_component = 0;
  int m = 0;            // number of residue classes
  int class_index = 0;
  double weight_bound = 0;
  double component_bound = 0;
  bool meets_bound = false;
};

namespace detail {

inline WeightedSeparatorReport pick_class(const WeightedGraph& wg, const std::vector<std::vector<Vertex>>& classes,
                                          int m) {
  WeightedSeparatorReport r;
  r.m = m;
  double best = -1;
  for (int j = 0; j < static_cast<int>(classes.size()); ++j) {
    VertexSet s(classes[j]);
    const double w = wg.weight(s);
    if (best < 0 || w < best) {
      best = w;
      r.class_index = j;
      r.S = std::move(s);
    }
  }
  r.weight = wg.weight(r.S);
  r.max_component = max_component_size(components_without(wg.graph, r.S));
  return r;
}

// log base b of x
inline double log_base(double b, double x) { return std::log(x) / std::log(b); }

}  // namespace detail

/// Residue-class separators: path blow-up with m = ceil(sqrt(n/c)) classes,
/// grid blow-up with m = ceil((dn/c)^(1/(d+1))), tree with depth classes
/// mod m = ceil(log n - log log n) (base Delta-1) from a leaf root. The
/// minimum-weight class wins, ties to the smaller index.
inline WeightedSeparatorReport weighted_separator(const WeightedGraph& wg, const SeparabilityStructure& st) {
  const Graph& g = wg.graph;
  const double total = wg.total();
  using Kind = SeparabilityStructure::Kind;
  WeightedSeparatorReport r;
  if (st.kind == Kind::Tree) {
    const int n = g.vertex_count();
    if (st.delta < 3) throw InvalidInput("tree mode needs Delta >= 3");
    if (n < 2 || g.edge_count() != n - 1 || !is_connected(g)) throw InvalidInput("tree mode needs a tree");
    if (g.max_degree() > st.delta) throw InvalidInput("tree has degree above Delta");
    const double b = st.delta - 1;
    const double lg = detail::log_base(b, n);
    const double x = lg - (lg > 1 ? detail::log_base(b, lg) : 0);
    const int m = static_cast<int>(std::ceil(x - 1e-9));
    if (!(lg > 1) || m < 2) throw InvalidInput("tree mode needs log n - log log n > 1 (base Delta-1)");
    Vertex root = -1;
    for (Vertex v = 0; v < n && root < 0; ++v) {
      if (g.degree(v) == 1) root = v;
    }
    const auto dist = bfs_distances(g, root);
    std::vector<std::vector<Vertex>> classes(m);
    for (Vertex v = 0; v < n; ++v) classes[dist[v] % m].push_back(v);
    r = detail::pick_class(wg, classes, m);
    r.weight_bound = total / m;
    r.component_bound = 0;
    for (int i = 0; i <= m - 2; ++i) r.component_bound += std::pow(b, i);
    r.meets_bound = r.weight <= r.weight_bound * (1 + 1e-9) + 1e-9 && r.max_component <= r.component_bound + 1e-9;
    return r;
  }
  check_coordinates(g, st.coords);
  const int d = st.coords.dims();
  const int c = st.coords.clique;
  if (st.kind == Kind::PathBlowup && d != 1) throw InvalidInput("path blow-up needs one path factor");
  const int m = st.kind == Kind::PathBlowup
                    ? std::max(1, static_cast<int>(std::ceil(std::sqrt(total / c) - 1e-9)))
                    : std::max(1, static_cast<int>(std::ceil(std::pow(d * total / c, 1.0 / (d + 1)) - 1e-9)));
  std::vector<std::vector<Vertex>> classes(m);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    std::vector<char> in(m, 0);
    for (int i = 0; i < d; ++i) in[st.coords.coords[v][i] % m] = 1;
    for (int j = 0; j < m; ++j) {
      if (in[j]) classes[j].push_back(v);
    }
  }
  r = detail::pick_class(wg, classes, m);
  const double bound = st.kind == Kind::PathBlowup
                           ? std::sqrt(c * total)
                           : std::pow(d * total, static_cast<double>(d) / (d + 1)) * std::pow(c, 1.0 / (d + 1));
  r.weight_bound = bound;
  r.component_bound = bound;
  r.meets_bound = r.weight <= bound * (1 + 1e-9) + 1e-9 && r.max_component <= bound * (1 + 1e-9) + 1e-9;
  return r;
}

using WeightedSeparatorProvider = std::function<VertexSet(const WeightedGraph&)>;

inline WeightedSeparatorProvider structure_provider(SeparabilityStructure st) {
  return [st = std::move(st)](const WeightedGraph& wg) { return weighted_separator(wg, st).S; };
}

/// Vertices of g as pairs (x, y) in V(H) x V(J) with a subgraph embedding
/// into the strong product H x J.
struct ProductEmbedding {
  Graph H;
  Graph J;
  std::vector<std::pair<Vertex, Vertex>> coords;
  std::optional<TreeDecomposition> h_decomposition;
};

inline void check_embedding(const Graph& g, const ProductEmbedding& e) {
  if (static_cast<int>(e.coords.size()) != g.vertex_count()) throw InvalidInput("embedding: one pair per vertex");
  std::map<std::pair<Vertex, Vertex>, Vertex> seen;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto [x, y] = e.coords[v];
    if (!e.H.valid(x) || !e.J.valid(y)) throw InvalidInput("embedding: coordinate out of range");
    if (!seen.emplace(e.coords[v], v).second) throw InvalidInput("embedding: two vertices share a coordinate");
  }
  for (const auto& [u, v] : g.edges()) {
    const auto [x, y] = e.coords[u];
    const auto [x2, y2] = e.coords[v];
    if ((x != x2 && !e.H.has_edge(x, x2)) || (y != y2 && !e.J.has_edge(y, y2))) {
      throw InvalidInput("embedding: edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") is not a strong-product edge");
    }
  }
  if (e.h_decomposition) {
    if (auto check = validate_decomposition(e.H, *e.h_decomposition); !check.ok()) {
      throw InvalidInput("embedding: H decomposition invalid: " + check.violations.front().message);
    }
  }
}

struct SeparableResult {
  HPartition partition;
  TreeDecomposition host_decomposition;
  VertexSet j_separator;
  int z_part = -1;  // index of the dominant part, -1 when suppressed
};

/// From G inside H x J and a weighted separator S of J: one copy of H per
/// component of J - S plus a dominant vertex z whose part is the S-layer.
/// Empty parts are dropped.
inline SeparableResult separable_transform(const Graph& g, const ProductEmbedding& e,
                                           const WeightedSeparatorProvider& provider) {
  check_embedding(g, e);
  std::vector<double> w(e.J.vertex_count(), 0);
  for (const auto& [x, y] : e.coords) w[y] += 1;
  SeparableResult out;
  out.j_separator = provider(WeightedGraph(e.J, w));
  check_vertices(e.J, out.j_separator);
  const auto comps = components_without(e.J, out.j_separator);
  const int nh = e.H.vertex_count();
  std::vector<int> comp_of(e.J.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
    for (Vertex y : comps[i]) comp_of[y] = i;
  }
  // bucket (copy i, x) -> vertices; copy index -1 is z
  std::vector<std::vector<Vertex>> buckets(comps.size() * static_cast<std::size_t>(nh));
  std::vector<Vertex> zpart;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto [x, y] = e.coords[v];
    if (comp_of[y] < 0) {
      zpart.push_back(v);
    } else {
      buckets[static_cast<std::size_t>(comp_of[y]) * nh + x].push_back(v);
    }
  }
  std::vector<int> index(buckets.size(), -1);
  std::vector<VertexSet> parts;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    if (buckets[b].empty()) continue;
    index[b] = static_cast<int>(parts.size());
    parts.emplace_back(std::move(buckets[b]));
  }
  if (!zpart.empty()) {
    out.z_part = static_cast<int>(parts.size());
    parts.emplace_back(std::move(zpart));
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (const auto& [x, x2] : e.H.edges()) {
      const int a = index[i * nh + x];
      const int b = index[i * nh + x2];
      if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
  }
  const int t = static_cast<int>(parts.size());
  if (out.z_part >= 0) {
    for (int i = 0; i < out.z_part; ++i) edges.emplace_back(i, out.z_part);
  }
  out.partition.host = Graph::build(t, edges);
  out.partition.parts = std::move(parts);

  // witness: the H decomposition per copy, z in every bag, copies chained
  const TreeDecomposition htd = e.h_decomposition ? *e.h_decomposition : heuristic_tree_decomposition(e.H);
  std::vector<VertexSet> bags;
  std::vector<Edge> tree_edges;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int offset = static_cast<int>(bags.size());
    for (const auto& bag : htd.bags) {
      std::vector<Vertex> b;
      for (Vertex x : bag) {
        if (index[i * nh + x] >= 0) b.push_back(index[i * nh + x]);
      }
      if (out.z_part >= 0) b.push_back(out.z_part);
      bags.emplace_back(std::move(b));
    }
    for (const auto& [p, q] : htd.tree.edges()) tree_edges.emplace_back(p + offset, q + offset);
    if (offset > 0) tree_edges.emplace_back(0, offset);
  }
  if (bags.empty()) bags.push_back(out.z_part >= 0 ? VertexSet{out.z_part} : VertexSet{});
  out.host_decomposition = TreeDecomposition::make(std::move(bags), tree_edges);
  return out;
}

// ---- weights and coordinates files ----

inline std::vector<double> read_weights(std::istream& in, int n) {
  std::vector<double> w(n, 0);
  std::vector<char> seen(n, 0);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long v = 0;
    double x = 0;
    std::string extra;
    if (!(ls >> v >> x) || (ls >> extra)) throw FormatError("weights line must be 'v w'");
    if (v < 0 || v >= n || seen[v]) throw FormatError("weights: bad or repeated vertex " + std::to_string(v));
    if (!(x >= 0)) throw FormatError("weights must be nonnegative");
    seen[v] = 1;
    w[v] = x;
  }
  return w;
}

inline ProductCoordinates read_coordinates(std::istream& in, int n, std::vector<int> path_lengths, int c) {
  ProductCoordinates pc{std::move(path_lengths), c, std::vector<std::vector<int>>(n)};
  const int d = pc.dims();
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long v = 0;
    if (!(ls >> v) || v < 0 || v >= n) throw FormatError("coordinates: bad vertex id");
    std::vector<int> x;
    int a = 0;
    while (ls >> a) x.push_back(a);
    if (!ls.eof() || static_cast<int>(x.size()) != d + 1) throw FormatError("coordinates line must be 'v x_1 .. x_d l'");
    pc.coords[v] = std::move(x);
  }
  return pc;
}

}  // namespace prodstruct
