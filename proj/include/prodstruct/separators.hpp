#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/graph.hpp"

namespace prodstruct {

/// floor(x) that tolerates values a hair below an integer.
inline long long safe_floor(double x) {
  return static_cast<long long>(std::floor(x + 1e-9 * std::max(1.0, std::abs(x))));
}

struct SeparatorReport {
  VertexSet S;
  int max_component = 0;
  double target_p = 0;
  double target_q = 0;
  bool meets_contract = false;
};

/// Recomputes the component sizes of g - s and checks |S| <= p, comps <= q.
inline SeparatorReport make_report(const Graph& g, VertexSet s, double p, double q) {
  check_vertices(g, s);
  SeparatorReport r;
  r.max_component = max_component_size(components_without(g, s));
  r.target_p = p;
  r.target_q = q;
  r.meets_contract = s.size() <= safe_floor(p) && r.max_component <= safe_floor(q);
  r.S = std::move(s);
  return r;
}

inline bool is_balanced(const Graph& g, const VertexSet& s) {
  return max_component_size(components_without(g, s)) <= g.vertex_count() / 2;
}

/// Balanced separator drawn from a bag: the first bag (by node id) whose
/// removal leaves components of at most n/2 vertices, then pruned by
/// dropping vertices in increasing id while balance is kept.
inline SeparatorReport balanced_separator(const Graph& g, const TreeDecomposition& td) {
  if (auto check = validate_decomposition(g, td); !check.ok()) {
    throw InvalidInput("balanced_separator: " + check.violations.front().message);
  }
  const double half = g.vertex_count() / 2.0;
  for (const auto& bag : td.bags) {
    if (!is_balanced(g, bag)) continue;
    std::vector<Vertex> s = bag.members();
    for (std::size_t i = 0; i < s.size();) {
      std::vector<Vertex> trial = s;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (is_balanced(g, VertexSet::from_sorted(trial))) {
        s = std::move(trial);
      } else {
        ++i;
      }
    }
    return make_report(g, VertexSet::from_sorted(std::move(s)), td.width() + 1, half);
  }
  throw EngineFailure("no bag of the decomposition is a balanced separator");
}

/// A separator provider: given an induced subgraph, returns a balanced
/// separator in the view's local ids.
using SeparatorEngine = std::function<VertexSet(const SubgraphView&)>;

/// Hereditary promise sep(G') <= c |G'|^(1-eps).
struct ClassGuarantee {
  double c = 1;
  double eps = 0.5;

  [[nodiscard]] double gamma() const { return c * std::pow(2.0, eps) / (std::pow(2.0, eps) - 1.0); }
  void validate() const {
    if (!(c > 0) || !(eps > 0 && eps < 1)) throw InvalidInput("class guarantee needs c > 0 and 0 < eps < 1");
  }
};

namespace detail {

// Smallest BFS layer (rooted at `root`) whose removal is balanced.
inline VertexSet best_balanced_layer(const Graph& g, Vertex root) {
  const auto layering = bfs_layers(g, root);
  const int n = g.vertex_count();
  int below = 0;
  std::optional<VertexSet> best;
  for (const auto& layer : layering.layers) {
    const int above = n - below - layer.size();
    if (below <= n / 2 && above <= n / 2 && (!best || layer.size() < best->size())) best = layer;
    below += layer.size();
  }
  return *best;
}

}  // namespace detail

/// BFS layer separator, tried from local vertex 0 and from a vertex
/// farthest from it; the smaller balanced layer wins.
inline SeparatorEngine layer_engine() {
  return [](const SubgraphView& view) {
    const Graph& g = view.graph();
    if (g.vertex_count() == 0) return VertexSet{};
    const auto dist = bfs_distances(g, 0);
    const Vertex far = static_cast<Vertex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
    VertexSet a = detail::best_balanced_layer(g, 0);
    VertexSet b = detail::best_balanced_layer(g, far);
    return b.size() < a.size() ? b : a;
  };
}

/// Min-fill decomposition of the view, then a bag separator.
inline SeparatorEngine min_fill_engine() {
  return [](const SubgraphView& view) {
    return balanced_separator(view.graph(), heuristic_tree_decomposition(view.graph())).S;
  };
}

/// Uses a fixed decomposition of the top-level graph, restricted to the view.
inline SeparatorEngine known_decomposition_engine(TreeDecomposition td) {
  return [td = std::move(td)](const SubgraphView& view) {
    return balanced_separator(view.graph(), restrict_decomposition(td, view)).S;
  };
}

/// Size bound on the fragmentation set: gamma * n^(1 - alpha eps).
inline double lt_bound(const ClassGuarantee& cg, double n, double alpha) {
  return cg.gamma() * std::pow(n, 1.0 - alpha * cg.eps);
}

struct FragmentResult {
  VertexSet S;
  int max_component = 0;
  int engine_calls = 0;
  bool guarantee_held = true;  // every engine call stayed within c n_i^(1-eps)
};

/// Repeatedly separates the largest component (ties: smallest member) until
/// every component of g - S has at most `target` vertices.
/// With `within`, only the subgraph induced by it is fragmented; engine
/// views are still taken of g itself.
inline FragmentResult fragment(const Graph& g, const SeparatorEngine& engine, long long target,
                               std::optional<ClassGuarantee> guarantee = std::nullopt,
                               const std::optional<VertexSet>& within = std::nullopt) {
  if (target < 1) throw InvalidInput("fragment target must be >= 1");
  const VertexSet all = within ? *within : VertexSet::range(g.vertex_count());
  auto cmp = [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.front() > b.front();
  };
  std::priority_queue<VertexSet, std::vector<VertexSet>, decltype(cmp)> heap(cmp);
  for (auto& comp : components_within(g, all)) heap.push(std::move(comp));

  FragmentResult out;
  std::vector<Vertex> s;
  while (!heap.empty() && heap.top().size() > target) {
    VertexSet comp = heap.top();
    heap.pop();
    const SubgraphView view = induced(g, comp);
    const VertexSet local = engine(view);
    ++out.engine_calls;
    if (local.empty() || local.back() >= view.graph().vertex_count() || local.front() < 0) {
      throw EngineFailure("engine returned an empty or out-of-range separator");
    }
    const auto pieces = components_without(view.graph(), local);
    if (max_component_size(pieces) > comp.size() / 2) {
      throw EngineFailure("engine separator is not balanced on a component of size " + std::to_string(comp.size()));
    }
    if (guarantee && local.size() > guarantee->c * std::pow(comp.size(), 1.0 - guarantee->eps) * (1 + 1e-9)) {
      out.guarantee_held = false;
    }
    for (Vertex v : local) s.push_back(view.to_parent(v));
    for (const auto& piece : pieces) heap.push(view.lift(piece));
  }
  out.S = VertexSet(std::move(s));
  out.max_component = max_component_size(components_within(g, set_difference(all, out.S)));
  return out;
}

enum class QMode { Integer, Real };

namespace detail {

// Vertex of the alive subtree minimizing its largest remaining component.
inline Vertex tree_centroid(const Graph& t, const std::vector<char>& alive, Vertex root,
                            const std::vector<Vertex>& order, const std::vector<Vertex>& parent,
                            const std::vector<int>& size) {
  const int total = size[root];
  Vertex best = -1;
  int best_val = total + 1;
  for (Vertex v : order) {
    int worst = total - size[v];
    for (Vertex w : t.neighbors(v)) {
      if (alive[w] && parent[w] == v) worst = std::max(worst, size[w]);
    }
    if (worst < best_val || (worst == best_val && v < best)) {
      best_val = worst;
      best = v;
    }
  }
  return best;
}

}  // namespace detail

/// At most p vertices whose removal leaves components of at most q
/// vertices. Integer mode needs n <= pq + p + q - 1 with q integral; real
/// mode needs n <= q(p + 1).
inline VertexSet tree_separator(const Graph& t, int p, double q, QMode mode = QMode::Integer) {
  const int n = t.vertex_count();
  if (p < 0 || !(q > 0)) throw InvalidInput("tree_separator needs p >= 0 and q > 0");
  if (n > 0 && !(t.edge_count() == n - 1 && is_connected(t))) throw InvalidInput("tree_separator input is not a tree");
  const long long qf = safe_floor(q);
  if (mode == QMode::Integer) {
    if (std::abs(q - std::round(q)) > 1e-9) throw InvalidInput("integer mode needs integral q");
    if (static_cast<long long>(n) > static_cast<long long>(p) * qf + p + qf - 1) {
      throw PreconditionViolated("tree_separator: n > pq + p + q - 1");
    }
  } else if (static_cast<double>(n) > q * (p + 1) * (1 + 1e-12)) {
    throw PreconditionViolated("tree_separator: n > q(p + 1)");
  }
  if (n == 0) return {};

  std::vector<char> alive(n, 1);
  std::vector<Vertex> s;
  int budget = p;
  const Vertex root = 0;
  while (true) {
    // root the alive subtree at 0, BFS order, subtree sizes bottom-up
    std::vector<Vertex> parent(n, -1);
    std::vector<int> dist(n, -1);
    std::vector<Vertex> order{root};
    dist[root] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Vertex w : t.neighbors(order[i])) {
        if (alive[w] && dist[w] < 0) {
          dist[w] = dist[order[i]] + 1;
          parent[w] = order[i];
          order.push_back(w);
        }
      }
    }
    std::vector<int> size(n, 0);
    std::vector<int> f(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      size[*it] += 1;
      if (parent[*it] >= 0) {
        size[parent[*it]] += size[*it];
        f[parent[*it]] = std::max(f[parent[*it]], size[*it]);
      }
    }
    if (size[root] <= qf) break;
    if (budget == 1) {
      s.push_back(detail::tree_centroid(t, alive, root, order, parent, size));
      break;
    }
    if (f[root] <= qf) {
      s.push_back(root);
      break;
    }
    // deepest v with f(v) > q, smallest id among the deepest
    Vertex v = -1;
    for (Vertex x : order) {
      if (f[x] > qf && (v < 0 || dist[x] > dist[v] || (dist[x] == dist[v] && x < v))) v = x;
    }
    Vertex w = -1;
    for (Vertex x : t.neighbors(v)) {
      if (alive[x] && parent[x] == v && size[x] > qf && (w < 0 || x < w)) w = x;
    }
    s.push_back(w);
    --budget;
    // delete T_w
    std::vector<Vertex> stack{w};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      alive[x] = 0;
      for (Vertex y : t.neighbors(x)) {
        if (alive[y] && parent[y] == x) stack.push_back(y);
      }
    }
  }
  return VertexSet(std::move(s));
}

/// Union of at most floor(p/(k+1)) bags of a normalized decomposition whose
/// removal leaves components of at most q vertices.
inline VertexSet treewidth_separator(const Graph& g, const NormalizedDecomposition& nd, double p, double q,
                                     QMode mode = QMode::Real) {
  require_normalized(g, nd);
  const int n = g.vertex_count();
  const int k = nd.k;
  if (p < k + 1) throw PreconditionViolated("treewidth_separator needs p >= k + 1");
  const long long pp = safe_floor(p / (k + 1));
  const long long qf = safe_floor(q);
  if (mode == QMode::Integer) {
    if (std::abs(q - std::round(q)) > 1e-9) throw InvalidInput("integer mode needs integral q");
    if (n > pp * (qf + 1) + qf + k - 1) throw PreconditionViolated("treewidth_separator: n > p'(q+1) + q + k - 1");
  } else if (static_cast<double>(n) * (k + 1) > p * q * (1 + 1e-12)) {
    throw PreconditionViolated("treewidth_separator: n(k+1) > pq");
  }
  if (n <= qf) return {};
  VertexSet nodes = tree_separator(nd.td.tree, static_cast<int>(pp), q, mode);
  if (nodes.empty()) {
    int best = 0;
    int best_size = nd.td.node_count() + 1;
    for (int x = 0; x < nd.td.node_count(); ++x) {
      const int size = max_component_size(components_without(nd.td.tree, VertexSet{x}));
      if (size < best_size) {
        best = x;
        best_size = size;
      }
    }
    nodes = VertexSet{best};
  }
  VertexSet s;
  for (int x : nodes) s = set_union(s, nd.td.bags[x]);
  return s;
}

/// Block inequality kn <= pq + k(p+q) for a q-separator S of P_n^k (ids
/// 0..n-1 in path order). Throws if S is not such a separator.
inline bool path_power_tightness_check(int n, int k, int p, int q, const VertexSet& s) {
  if (n < 1 || k < 1 || q < 0) throw InvalidInput("path_power_tightness_check: bad parameters");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j <= std::min(n - 1, i + k); ++j) edges.emplace_back(i, j);
  }
  const Graph g = Graph::build(n, edges);
  check_vertices(g, s);
  if (max_component_size(components_without(g, s)) > q) throw InvalidInput("S is not a q-separator of the path power");
  if (p < s.size()) throw InvalidInput("p is smaller than |S|");
  return static_cast<long long>(k) * n <= static_cast<long long>(p) * q + static_cast<long long>(k) * (p + q);
}

/// Number of maximal runs of consecutive S-vertices with at least k members.
inline int long_blocks(const VertexSet& s, int k) {
  int blocks = 0;
  int run = 0;
  Vertex prev = -2;
  for (Vertex v : s) {
    run = (v == prev + 1) ? run + 1 : 1;
    if (run == k) ++blocks;
    prev = v;
  }
  return blocks;
}

}  // namespace prodstruct
