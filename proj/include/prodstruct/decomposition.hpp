#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "prodstruct/errors.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/graph.hpp"

namespace prodstruct {

/// Size cap for the exponential oracles. PRODSTRUCT_EXACT_LIMIT overrides
/// the per-oracle default.
inline int exact_limit(int fallback) {
  if (const char* env = std::getenv("PRODSTRUCT_EXACT_LIMIT")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

/// Tree of bags. Node i of `tree` owns bags[i].
struct TreeDecomposition {
  Graph tree;
  std::vector<VertexSet> bags;

  [[nodiscard]] int node_count() const { return static_cast<int>(bags.size()); }
  [[nodiscard]] int width() const {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return w - 1;
  }

  static TreeDecomposition make(std::vector<VertexSet> bags, std::span<const Edge> tree_edges) {
    TreeDecomposition td;
    td.tree = Graph::build(static_cast<int>(bags.size()), tree_edges);
    td.bags = std::move(bags);
    return td;
  }
};

struct DecompositionViolation {
  enum class Kind { NotATree, BagCountMismatch, VertexOutOfRange, VertexUncovered, EdgeUncovered, TraceDisconnected };
  Kind kind;
  std::string message;
  std::vector<int> ids;  // offending edge endpoints, vertex, or nodes
};

struct DecompositionCheck {
  std::vector<DecompositionViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

inline bool is_tree(const Graph& t) {
  return t.vertex_count() >= 1 && t.edge_count() == t.vertex_count() - 1 && is_connected(t);
}

/// Checks both decomposition axioms; every violation names what broke.
inline DecompositionCheck validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  using Kind = DecompositionViolation::Kind;
  DecompositionCheck out;
  if (td.tree.vertex_count() != td.node_count()) {
    out.violations.push_back({Kind::BagCountMismatch, "tree has " + std::to_string(td.tree.vertex_count()) +
                                                          " nodes but " + std::to_string(td.node_count()) + " bags",
                              {}});
    return out;
  }
  if (!is_tree(td.tree)) out.violations.push_back({Kind::NotATree, "decomposition tree is not a tree", {}});

  const int n = g.vertex_count();
  std::vector<std::vector<int>> nodes_of(n);
  for (int x = 0; x < td.node_count(); ++x) {
    for (Vertex v : td.bags[x]) {
      if (!g.valid(v)) {
        out.violations.push_back({Kind::VertexOutOfRange,
                                  "bag " + std::to_string(x) + " holds unknown vertex " + std::to_string(v), {x, v}});
        continue;
      }
      nodes_of[v].push_back(x);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (nodes_of[v].empty()) {
      out.violations.push_back({Kind::VertexUncovered, "vertex " + std::to_string(v) + " is in no bag", {v}});
    }
  }
  for (const auto& [u, v] : g.edges()) {
    const auto& a = nodes_of[u];
    const auto& b = nodes_of[v];
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty()) {
      out.violations.push_back({Kind::EdgeUncovered,
                                "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag", {u, v}});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (nodes_of[v].size() <= 1) continue;
    if (components_within(td.tree, VertexSet::from_sorted(nodes_of[v])).size() != 1) {
      out.violations.push_back({Kind::TraceDisconnected,
                                "nodes containing vertex " + std::to_string(v) + " are not connected in the tree",
                                {v}});
    }
  }
  return out;
}

/// Decomposition with one node per vertex built from an elimination order:
/// bag(v) = {v} plus its later neighbors in the filled graph.
inline TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.vertex_count();
  if (n == 0) return TreeDecomposition::make({VertexSet{}}, {});
  if (static_cast<int>(order.size()) != n) throw InvalidInput("elimination order must list every vertex once");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!g.valid(order[i]) || pos[order[i]] >= 0) throw InvalidInput("elimination order is not a permutation");
    pos[order[i]] = i;
  }
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());

  std::vector<VertexSet> bags(n);
  std::vector<Edge> tree_edges;
  std::vector<Vertex> roots;
  for (Vertex v : order) {
    std::vector<Vertex> higher(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < higher.size(); ++i) {
      adj[higher[i]].erase(v);
      for (std::size_t j = i + 1; j < higher.size(); ++j) {
        adj[higher[i]].insert(higher[j]);
        adj[higher[j]].insert(higher[i]);
      }
    }
    std::vector<Vertex> bag = higher;
    bag.push_back(v);
    bags[v] = VertexSet(std::move(bag));
    if (higher.empty()) {
      roots.push_back(v);
    } else {
      Vertex next = *std::min_element(higher.begin(), higher.end(),
                                      [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
      tree_edges.emplace_back(v, next);
    }
    adj[v].clear();
  }
  for (std::size_t i = 1; i < roots.size(); ++i) tree_edges.emplace_back(roots[i - 1], roots[i]);
  return TreeDecomposition::make(std::move(bags), tree_edges);
}

/// Min-fill elimination ordering (ties: smaller degree, then smaller id).
inline std::vector<Vertex> min_fill_order(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());

  auto fill_of = [&](Vertex v) {
    long long missing = 0;
    for (auto i = adj[v].begin(); i != adj[v].end(); ++i) {
      for (auto j = std::next(i); j != adj[v].end(); ++j) {
        if (!adj[*i].count(*j)) ++missing;
      }
    }
    return missing;
  };
  using Key = std::tuple<long long, int, Vertex>;
  std::set<Key> queue;
  std::vector<Key> key(n);
  for (Vertex v = 0; v < n; ++v) {
    key[v] = {fill_of(v), static_cast<int>(adj[v].size()), v};
    queue.insert(key[v]);
  }
  std::vector<char> done(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    done[v] = 1;
    order.push_back(v);
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    bool added = false;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      adj[nb[i]].erase(v);
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) {
          adj[nb[j]].insert(nb[i]);
          added = true;
        }
      }
    }
    adj[v].clear();
    std::set<Vertex> touched(nb.begin(), nb.end());
    if (added) {
      for (Vertex a : nb) touched.insert(adj[a].begin(), adj[a].end());
    }
    for (Vertex w : touched) {
      if (done[w]) continue;
      queue.erase(key[w]);
      key[w] = {fill_of(w), static_cast<int>(adj[w].size()), w};
      queue.insert(key[w]);
    }
  }
  return order;
}

/// Deterministic min-fill decomposition; width >= tw(g).
inline TreeDecomposition heuristic_tree_decomposition(const Graph& g) {
  return decomposition_from_order(g, min_fill_order(g));
}

struct ExactTreewidth {
  int width = -1;
  TreeDecomposition decomposition;
};

namespace detail {

// Vertices outside S+{v} reachable from v through S (bitmask form).
inline std::uint32_t eliminated_neighborhood(const std::vector<std::uint32_t>& adj, std::uint32_t s, int v) {
  std::uint32_t reached = 1u << v;
  std::uint32_t frontier = reached;
  std::uint32_t nbr = 0;
  while (frontier) {
    std::uint32_t next = 0;
    while (frontier) {
      const int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      nbr |= adj[x];
    }
    next = nbr & s & ~reached;
    reached |= next;
    frontier = next;
  }
  return nbr & ~s & ~(1u << v);
}

}  // namespace detail

/// Exact treewidth by dynamic programming over vertex subsets.
inline ExactTreewidth exact_treewidth(const Graph& g, int limit = exact_limit(20)) {
  const int n = g.vertex_count();
  if (n > limit || n > 30) {
    throw TooLarge("exact treewidth limited to " + std::to_string(std::min(limit, 30)) + " vertices, got " +
                   std::to_string(n));
  }
  if (n == 0) return {-1, TreeDecomposition::make({VertexSet{}}, {})};
  std::vector<std::uint32_t> adj(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  // best[S] = minimal max neighbourhood size when S is eliminated first
  std::vector<std::int8_t> best(std::size_t{1} << n, 0);
  best[0] = -1;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int b = 127;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t prev = s & ~(1u << v);
      const int q = std::popcount(detail::eliminated_neighborhood(adj, prev, v));
      b = std::min(b, std::max<int>(best[prev], q));
    }
    best[s] = static_cast<std::int8_t>(b);
    if (s == full) break;
  }
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t prev = s & ~(1u << v);
      const int q = std::popcount(detail::eliminated_neighborhood(adj, prev, v));
      if (std::max<int>(best[prev], q) == best[s]) {
        order[i] = v;
        s = prev;
        break;
      }
    }
  }
  ExactTreewidth out;
  out.width = best[full];
  out.decomposition = decomposition_from_order(g, order);
  return out;
}

struct ExactTreeDepth {
  int depth = 0;
  RootedForest forest;
};

/// Exact tree-depth via memoized vertex removal over connected subsets.
inline ExactTreeDepth exact_tree_depth(const Graph& g, int limit = exact_limit(15)) {
  const int n = g.vertex_count();
  if (n > limit || n > 62) {
    throw TooLarge("exact tree-depth limited to " + std::to_string(std::min(limit, 62)) + " vertices, got " +
                   std::to_string(n));
  }
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  auto split = [&](std::uint64_t mask) {
    std::vector<std::uint64_t> comps;
    while (mask) {
      std::uint64_t comp = mask & (~mask + 1);
      std::uint64_t frontier = comp;
      while (frontier) {
        std::uint64_t nbr = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) nbr |= adj[std::countr_zero(f)];
        frontier = nbr & mask & ~comp;
        comp |= frontier;
      }
      comps.push_back(comp);
      mask &= ~comp;
    }
    return comps;
  };
  std::unordered_map<std::uint64_t, std::pair<int, int>> memo;  // connected mask -> (td, root)
  std::function<int(std::uint64_t)> td = [&](std::uint64_t mask) -> int {
    if (!mask) return 0;
    if (std::has_single_bit(mask)) return 1;
    const auto comps = split(mask);
    if (comps.size() > 1) {
      int best = 0;
      for (auto c : comps) best = std::max(best, td(c));
      return best;
    }
    if (auto it = memo.find(mask); it != memo.end()) return it->second.first;
    int best = 1 << 20;
    int root = -1;
    for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = 1 + td(mask & ~(std::uint64_t{1} << v));
      if (d < best) {
        best = d;
        root = v;
      }
    }
    memo[mask] = {best, root};
    return best;
  };
  const std::uint64_t full = (n == 0) ? 0 : ((n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  ExactTreeDepth out;
  out.depth = td(full);
  std::vector<Vertex> parent(n, kNoParent);
  std::function<void(std::uint64_t, Vertex)> build = [&](std::uint64_t mask, Vertex above) {
    for (auto comp : split(mask)) {
      const int root = std::has_single_bit(comp) ? std::countr_zero(comp) : memo.at(comp).second;
      parent[root] = above;
      build(comp & ~(std::uint64_t{1} << root), root);
    }
  };
  build(full, kNoParent);
  out.forest = RootedForest(std::move(parent));
  return out;
}

/// Decomposition satisfying the four normalization conditions: equal bags
/// of size k+1, neighbouring bags differing in exactly one vertex each way,
/// n-k nodes, and the subtree-counting condition (d).
struct NormalizedDecomposition {
  TreeDecomposition td;
  int k = -1;
};

/// Restricts every bag of a decomposition of g to `keep`, relabelled to the
/// local ids of induced(g, keep). The result decomposes the induced subgraph.
inline TreeDecomposition restrict_decomposition(const TreeDecomposition& td, const SubgraphView& view) {
  TreeDecomposition out;
  out.tree = td.tree;
  out.bags.reserve(td.bags.size());
  for (const auto& bag : td.bags) {
    std::vector<Vertex> local;
    for (Vertex v : bag) {
      if (auto l = view.to_local(v)) local.push_back(*l);
    }
    out.bags.emplace_back(std::move(local));
  }
  return out;
}

/// Contract nested neighbours, pad bags to k+1 from the root outwards, then
/// split every edge whose bags differ in two or more vertices.
inline NormalizedDecomposition normalize(const Graph& g, const TreeDecomposition& input) {
  if (auto check = validate_decomposition(g, input); !check.ok()) {
    throw InvalidInput("normalize: invalid decomposition: " + check.violations.front().message);
  }
  const int k = input.width();
  const int n = g.vertex_count();
  if (n == 0) return {TreeDecomposition::make({VertexSet{}}, {}), -1};

  std::vector<VertexSet> bags = input.bags;
  std::vector<std::set<int>> adj(bags.size());
  for (const auto& [x, y] : input.tree.edges()) {
    adj[x].insert(y);
    adj[y].insert(x);
  }
  std::vector<char> alive(bags.size(), 1);

  // contraction of nested neighbours
  std::vector<Edge> work = input.tree.edges();
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!alive[x] || !alive[y] || !adj[x].count(y)) continue;
    if (!is_subset(bags[x], bags[y]) && !is_subset(bags[y], bags[x])) continue;
    // keep the smaller id as the merged node
    const int keep = std::min(x, y);
    const int drop = std::max(x, y);
    bags[keep] = set_union(bags[keep], bags[drop]);
    adj[keep].erase(drop);
    for (int z : adj[drop]) {
      if (z == keep) continue;
      adj[z].erase(drop);
      adj[z].insert(keep);
      adj[keep].insert(z);
    }
    adj[drop].clear();
    alive[drop] = 0;
    for (int z : adj[keep]) work.emplace_back(keep, z);
  }

  // root: first node with a full bag; pad top-down
  int root = -1;
  for (int x = 0; x < static_cast<int>(bags.size()); ++x) {
    if (alive[x] && bags[x].size() == k + 1) {
      root = x;
      break;
    }
  }
  std::vector<int> parent(bags.size(), -1);
  std::vector<int> order{root};
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int x = order[i];
    for (int y : adj[x]) {
      if (parent[y] >= 0) continue;
      parent[y] = x;
      order.push_back(y);
      if (bags[y].size() < k + 1) {
        std::vector<Vertex> grown = bags[y].members();
        for (Vertex v : set_difference(bags[x], bags[y])) {
          if (static_cast<int>(grown.size()) == k + 1) break;
          grown.push_back(v);
        }
        bags[y] = VertexSet(std::move(grown));
      }
    }
  }

  // splitting: walk every parent->child edge and insert intermediate nodes
  std::vector<Edge> tree_edges;
  std::vector<VertexSet> out_bags;
  std::vector<int> id(bags.size(), -1);
  for (int x : order) {
    id[x] = static_cast<int>(out_bags.size());
    out_bags.push_back(bags[x]);
  }
  for (int y : order) {
    if (y == root) continue;
    const int x = parent[y];
    int prev = id[x];
    VertexSet cur = bags[x];
    while (true) {
      const VertexSet out_only = set_difference(cur, bags[y]);
      if (out_only.size() <= 1) break;
      const Vertex v = out_only.front();
      const Vertex u = set_difference(bags[y], cur).front();
      std::vector<Vertex> next = set_difference(cur, VertexSet{v}).members();
      next.push_back(u);
      cur = VertexSet(std::move(next));
      const int z = static_cast<int>(out_bags.size());
      out_bags.push_back(cur);
      tree_edges.emplace_back(prev, z);
      prev = z;
    }
    tree_edges.emplace_back(prev, id[y]);
  }
  return {TreeDecomposition::make(std::move(out_bags), tree_edges), k};
}

// ---- independent checks of the normalization conditions ----

inline bool check_condition_a(const NormalizedDecomposition& nd) {
  return std::all_of(nd.td.bags.begin(), nd.td.bags.end(), [&](const VertexSet& b) { return b.size() == nd.k + 1; });
}

inline bool check_condition_b(const NormalizedDecomposition& nd) {
  for (const auto& [x, y] : nd.td.tree.edges()) {
    if (set_difference(nd.td.bags[x], nd.td.bags[y]).size() != 1) return false;
    if (set_difference(nd.td.bags[y], nd.td.bags[x]).size() != 1) return false;
  }
  return true;
}

inline bool check_condition_c(const NormalizedDecomposition& nd, int n) { return nd.td.node_count() == n - nd.k; }

/// Condition (d) for a single nonempty node set S.
inline bool check_condition_d(const NormalizedDecomposition& nd, const VertexSet& nodes) {
  if (nodes.empty()) return true;
  std::set<Vertex> covered;
  for (int x : nodes) covered.insert(nd.td.bags[x].begin(), nd.td.bags[x].end());
  for (const auto& comp : components_without(nd.td.tree, nodes)) {
    std::set<Vertex> seen;
    for (int x : comp) {
      for (Vertex v : nd.td.bags[x]) {
        if (!covered.count(v)) seen.insert(v);
      }
    }
    if (static_cast<int>(seen.size()) > comp.size()) return false;
  }
  return true;
}

/// Condition (d) over every nonempty node set; node count must be <= 20.
inline bool check_condition_d_exhaustive(const NormalizedDecomposition& nd) {
  const int t = nd.td.node_count();
  if (t > 20) throw TooLarge("exhaustive condition (d) check limited to 20 nodes");
  for (std::uint32_t mask = 1; mask < (1u << t); ++mask) {
    std::vector<Vertex> s;
    for (int x = 0; x < t; ++x) {
      if (mask >> x & 1u) s.push_back(x);
    }
    if (!check_condition_d(nd, VertexSet::from_sorted(std::move(s)))) return false;
  }
  return true;
}

/// Condition (d) over `samples` random nonempty node sets.
inline bool check_condition_d_sampled(const NormalizedDecomposition& nd, int samples, std::uint64_t seed) {
  const int t = nd.td.node_count();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    // vary density so both tiny and large S are exercised
    std::uniform_real_distribution<double> density(0.0, 1.0);
    const double p = density(rng);
    std::vector<Vertex> s;
    for (int x = 0; x < t; ++x) {
      if (density(rng) < p) s.push_back(x);
    }
    if (s.empty()) s.push_back(static_cast<Vertex>(std::uniform_int_distribution<int>(0, t - 1)(rng)));
    if (!check_condition_d(nd, VertexSet::from_sorted(std::move(s)))) return false;
  }
  return true;
}

/// Throws unless nd is a valid decomposition of g meeting (a)-(c).
inline void require_normalized(const Graph& g, const NormalizedDecomposition& nd) {
  if (auto check = validate_decomposition(g, nd.td); !check.ok()) {
    throw InvalidInput("invalid decomposition: " + check.violations.front().message);
  }
  if (nd.td.width() != nd.k || !check_condition_a(nd) || !check_condition_b(nd) ||
      !check_condition_c(nd, g.vertex_count())) {
    throw InvalidInput("decomposition is not normalized");
  }
}

// ---- decomposition text format: "t k+1 n", t bag lines, t-1 edge lines ----

inline void write_decomposition(std::ostream& out, const TreeDecomposition& td, int n) {
  out << td.node_count() << ' ' << td.width() + 1 << ' ' << n << '\n';
  for (int x = 0; x < td.node_count(); ++x) {
    out << x;
    for (Vertex v : td.bags[x]) out << ' ' << v;
    out << '\n';
  }
  for (const auto& [x, y] : td.tree.edges()) out << x << ' ' << y << '\n';
}

inline TreeDecomposition read_decomposition(std::istream& in) {
  std::vector<std::vector<long long>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long long> row;
    long long x = 0;
    while (ls >> x) row.push_back(x);
    if (!ls.eof()) throw FormatError("non-integer token in decomposition file");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].size() != 3) throw FormatError("missing 't k+1 n' header");
  const long long t = rows[0][0];
  if (t < 1 || static_cast<long long>(rows.size()) != 1 + t + (t - 1)) {
    throw FormatError("decomposition file has wrong number of lines");
  }
  std::vector<VertexSet> bags(static_cast<std::size_t>(t));
  std::vector<char> seen(static_cast<std::size_t>(t), 0);
  for (long long i = 1; i <= t; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (row.empty() || row[0] < 0 || row[0] >= t || seen[static_cast<std::size_t>(row[0])]) {
      throw FormatError("bad bag line");
    }
    seen[static_cast<std::size_t>(row[0])] = 1;
    bags[static_cast<std::size_t>(row[0])] = VertexSet(std::vector<Vertex>(row.begin() + 1, row.end()));
  }
  std::vector<Edge> edges;
  for (long long i = t + 1; i < static_cast<long long>(rows.size()); ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (row.size() != 2 || row[0] < 0 || row[1] < 0 || row[0] >= t || row[1] >= t || row[0] == row[1]) {
      throw FormatError("bad tree edge line");
    }
    edges.emplace_back(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]));
  }
  auto td = TreeDecomposition::make(std::move(bags), edges);
  if (td.width() + 1 != rows[0][1]) throw FormatError("header bag size does not match bags");
  return td;
}

}  // namespace prodstruct
