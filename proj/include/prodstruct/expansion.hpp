#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/graph.hpp"
#include "prodstruct/partition.hpp"

namespace prodstruct {

/// Branch sets of a clique model with one center each; every branch set has
/// radius at most `depth` from its center inside the set.
struct ShallowModel {
  std::vector<VertexSet> branch_sets;
  std::vector<Vertex> centers;
  int depth = 0;
};

namespace detail {

// Eccentricity of `center` in g[set]; -1 if g[set] is not connected.
inline int radius_within(const Graph& g, const VertexSet& set, Vertex center) {
  std::vector<char> alive(g.vertex_count(), 0);
  for (Vertex v : set) alive[v] = 1;
  const auto dist = bfs_distances(g, center, alive);
  int ecc = 0;
  for (Vertex v : set) {
    if (dist[v] < 0) return -1;
    ecc = std::max(ecc, dist[v]);
  }
  return ecc;
}

inline bool sets_touch(const Graph& g, const VertexSet& a, const VertexSet& b) {
  for (Vertex v : a) {
    for (Vertex w : g.neighbors(v)) {
      if (b.contains(w)) return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool verify_shallow_model(const Graph& g, const ShallowModel& m) {
  if (m.centers.size() != m.branch_sets.size() || m.depth < 0) return false;
  std::vector<char> used(g.vertex_count(), 0);
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    const auto& set = m.branch_sets[i];
    if (set.empty() || !set.contains(m.centers[i])) return false;
    for (Vertex v : set) {
      if (!g.valid(v) || used[v]) return false;
      used[v] = 1;
    }
    const int r = detail::radius_within(g, set, m.centers[i]);
    if (r < 0 || r > m.depth) return false;
  }
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    for (std::size_t j = i + 1; j < m.branch_sets.size(); ++j) {
      if (!detail::sets_touch(g, m.branch_sets[i], m.branch_sets[j])) return false;
    }
  }
  return true;
}

/// Exhaustive search for an r-shallow K_h model (n <= limit).
inline std::optional<ShallowModel> find_shallow_clique_model(const Graph& g, int h, int r,
                                                             int limit = exact_limit(12)) {
  const int n = g.vertex_count();
  if (n > limit) throw TooLarge("shallow model search limited to " + std::to_string(limit) + " vertices");
  if (h < 0 || r < 0) throw InvalidInput("shallow model search needs h >= 0 and r >= 0");
  if (h == 0) return ShallowModel{{}, {}, r};
  if (h > n) return std::nullopt;
  // label[v] = 0 unused, else branch set index + 1; labels appear in order
  std::vector<int> label(n, 0);
  std::optional<ShallowModel> found;
  auto check = [&]() -> std::optional<ShallowModel> {
    std::vector<std::vector<Vertex>> sets(h);
    for (Vertex v = 0; v < n; ++v) {
      if (label[v] > 0) sets[label[v] - 1].push_back(v);
    }
    ShallowModel m;
    m.depth = r;
    for (auto& s : sets) {
      VertexSet vs = VertexSet::from_sorted(std::move(s));
      Vertex center = -1;
      for (Vertex c : vs) {
        const int rad = detail::radius_within(g, vs, c);
        if (rad >= 0 && rad <= r) {
          center = c;
          break;
        }
      }
      if (center < 0) return std::nullopt;
      m.branch_sets.push_back(std::move(vs));
      m.centers.push_back(center);
    }
    for (int i = 0; i < h; ++i) {
      for (int j = i + 1; j < h; ++j) {
        if (!detail::sets_touch(g, m.branch_sets[i], m.branch_sets[j])) return std::nullopt;
      }
    }
    return m;
  };
  std::function<bool(int, int)> dfs = [&](int v, int used) -> bool {
    if (used + (n - v) < h) return false;
    if (v == n) {
      if (used < h) return false;
      found = check();
      return found.has_value();
    }
    for (int l = 0; l <= std::min(used + 1, h); ++l) {
      label[v] = l;
      if (dfs(v + 1, std::max(used, l))) return true;
    }
    label[v] = 0;
    return false;
  };
  dfs(0, 0);
  return found;
}

/// Radius bound of the tree branch: ceil(4 l log2 n) + 2.
inline int st_radius_bound(double ell, int n) {
  return static_cast<int>(std::ceil(4 * ell * std::log2(std::max(n, 1)) - 1e-9)) + 2;
}

/// Either a spanning tree (parent map, root, radius) or a cut (S, T).
struct STOutcome {
  bool is_tree = true;
  Vertex root = 0;
  std::vector<Vertex> parent;
  int radius = 0;
  VertexSet S;
  VertexSet T;
};

/// N_g(S): vertices outside S with a neighbour in S.
inline VertexSet open_neighborhood(const Graph& g, const VertexSet& s) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<Vertex> out;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(v)) {
      if (!in[w] && !seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
    }
  }
  return VertexSet(std::move(out));
}

/// Re-checks whichever branch an outcome claims.
inline bool verify_st(const Graph& g, double ell, const STOutcome& o) {
  const int n = g.vertex_count();
  if (o.is_tree) {
    if (static_cast<int>(o.parent.size()) != n || !g.valid(o.root) || o.parent[o.root] != kNoParent) return false;
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) {
      if (v == o.root) continue;
      if (!g.valid(o.parent[v]) || !g.has_edge(v, o.parent[v])) return false;
      edges.emplace_back(v, o.parent[v]);
    }
    const Graph t = Graph::build(n, edges);
    if (t.edge_count() != n - 1 || !is_connected(t)) return false;
    const auto dist = bfs_distances(t, o.root);
    const int rad = *std::max_element(dist.begin(), dist.end());
    return rad == o.radius && rad <= st_radius_bound(ell, n);
  }
  if (o.S.empty() || o.T.empty() || set_intersection(o.S, o.T).size() != 0 || o.S.size() + o.T.size() != n) {
    return false;
  }
  check_vertices(g, o.S);
  check_vertices(g, o.T);
  return open_neighborhood(g, o.S).size() * ell <= o.S.size() * (1 + 1e-12) &&
         open_neighborhood(g, o.T).size() * ell <= o.T.size() * (1 + 1e-12);
}

/// BFS from vertex 0: the BFS tree when its radius fits, otherwise the first
/// prefix cut S = layers below i with |N(S)| <= |S|/l and |N(T)| <= |T|/l.
/// A counting argument over the layers shows such an i exists whenever
/// the eccentricity exceeds the radius bound.
inline STOutcome st_dichotomy(const Graph& g, double ell) {
  const int n = g.vertex_count();
  if (!(ell >= 1)) throw InvalidInput("st_dichotomy needs l >= 1");
  if (n == 0) throw InvalidInput("st_dichotomy needs a nonempty graph");
  if (!is_connected(g)) throw PreconditionViolated("st_dichotomy needs a connected graph");
  const auto layering = bfs_layers(g, 0);
  STOutcome out;
  if (layering.eccentricity <= st_radius_bound(ell, n)) {
    const auto dist = bfs_distances(g, 0);
    out.parent.assign(n, kNoParent);
    for (Vertex v = 1; v < n; ++v) {
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] == dist[v] - 1) {
          out.parent[v] = w;
          break;
        }
      }
    }
    out.radius = layering.eccentricity;
    if (!verify_st(g, ell, out)) throw EngineFailure("st_dichotomy produced an invalid tree");
    return out;
  }
  out.is_tree = false;
  const auto& layers = layering.layers;
  const int e = layering.eccentricity;
  int below = 0;
  for (int i = 1; i <= e; ++i) {
    below += layers[i - 1].size();
    const int above = n - below;
    // N(T): vertices of layer i-1 with a neighbour in layer i
    int nt = 0;
    for (Vertex v : layers[i - 1]) {
      for (Vertex w : g.neighbors(v)) {
        if (layers[i].contains(w)) {
          ++nt;
          break;
        }
      }
    }
    if (layers[i].size() * ell <= below * (1 + 1e-12) && nt * ell <= above * (1 + 1e-12)) {
      std::vector<Vertex> s;
      std::vector<Vertex> t;
      for (int j = 0; j <= e; ++j) {
        for (Vertex v : layers[j]) (j < i ? s : t).push_back(v);
      }
      out.S = VertexSet(std::move(s));
      out.T = VertexSet(std::move(t));
      if (!verify_st(g, ell, out)) throw EngineFailure("st_dichotomy produced an invalid cut");
      return out;
    }
  }
  throw EngineFailure("st_dichotomy found neither a short tree nor a sparse cut");
}

struct ExpansionResult {
  VertexSet Y;
  HPartition partition;                // of g - Y, parts in g's vertex ids
  TreeDecomposition host_tw_witness;   // of partition.host
  int d = 0;
  long long part_cap = 0;              // (h-1)d + 1
  double ell = 1;
  int h = 2;
  long long recursive_calls = 0;
};

struct PromiseViolation {
  ShallowModel model;
};

using ExpansionOutcome = std::variant<ExpansionResult, PromiseViolation>;

namespace detail {

// Partition of one recursion subproblem. parts[0..k-1] are U_1..U_k,
// parts[k] is Y; bags index parts; bags[clique_bag] holds 0..k.
struct Assembly {
  std::vector<VertexSet> parts;
  std::vector<Edge> host_edges;
  std::vector<std::vector<int>> bags;
  std::vector<Edge> tree_edges;
  int clique_bag = 0;
};

struct FoundModel {
  ShallowModel model;
};

class ExpansionRecursion {
 public:
  ExpansionRecursion(const Graph& g, double ell, int h)
      : g_(g), ell_(ell), h_(h), n_(g.vertex_count()), d_(st_radius_bound(ell, g.vertex_count())) {}

  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] long long cap() const { return static_cast<long long>(h_ - 1) * d_ + 1; }
  [[nodiscard]] long long calls() const { return calls_; }

  // Lexicographic termination measure (n', h-k, |Z|).
  using Measure = std::tuple<int, int, int>;

  Assembly run(const VertexSet& vp, const std::vector<VertexSet>& u, const std::vector<Vertex>& centers,
               const VertexSet& x, Measure above) {
    ++calls_;
    const int k = static_cast<int>(u.size());
    VertexSet uu;
    for (const auto& ui : u) uu = set_union(uu, ui);
    const int nprime = vp.size();
    if ((ell_ - 1) * x.size() > (n_ - nprime + uu.size()) * (1 + 1e-12) + 1e-9) {
      throw EngineFailure("expansion recursion: weight condition on X violated");
    }
    const VertexSet z = set_difference(vp, set_union(uu, x));
    const Measure here{nprime, h_ - k, z.size()};
    if (!(here < above)) throw EngineFailure("expansion recursion: termination measure not decreasing");

    Assembly out;
    if (z.empty()) {
      out.parts = u;
      out.parts.push_back(x);
      for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) out.host_edges.emplace_back(i, j);
      }
      out.bags.push_back(iota(k + 1));
      out.clique_bag = 0;
      return check(out, u, x, z);
    }

    const auto zcomps = components_within(g_, z);
    if (zcomps.size() > 1) {
      std::vector<Assembly> subs;
      for (const auto& zj : zcomps) subs.push_back(run(set_union(set_union(uu, x), zj), u, centers, x, here));
      return check(glue(subs, k), u, x, z);
    }

    for (int i = 0; i < k; ++i) {
      if (!set_intersection(open_neighborhood(g_, u[i]), z).empty()) continue;
      std::vector<VertexSet> u2 = u;
      std::vector<Vertex> c2 = centers;
      u2.erase(u2.begin() + i);
      c2.erase(c2.begin() + i);
      Assembly sub = run(set_difference(vp, u[i]), u2, c2, x, here);
      return check(reinsert(std::move(sub), u[i], i, k), u, x, z);
    }

    const SubgraphView zv = induced(g_, z);
    const STOutcome st = st_dichotomy(zv.graph(), ell_);
    if (st.is_tree) {
      if (st_radius_bound(ell_, z.size()) > d_) throw EngineFailure("expansion recursion: radius exceeds d");
      std::vector<Vertex> uk1{zv.to_parent(st.root)};
      for (int i = 0; i < k; ++i) {
        const VertexSet ni = set_intersection(open_neighborhood(g_, u[i]), z);
        for (Vertex a = *zv.to_local(ni.front()); a != kNoParent; a = st.parent[a]) uk1.push_back(zv.to_parent(a));
      }
      VertexSet next(std::move(uk1));
      if (next.size() > static_cast<long long>(k) * d_ + 1) {
        throw EngineFailure("expansion recursion: new branch set exceeds kd+1");
      }
      std::vector<VertexSet> u2 = u;
      std::vector<Vertex> c2 = centers;
      u2.push_back(next);
      c2.push_back(zv.to_parent(st.root));
      if (k + 1 == h_) throw FoundModel{ShallowModel{u2, c2, d_}};
      Assembly sub = run(vp, u2, c2, x, here);
      // U_{k+1} is an ordinary part here; Y moves back to index k
      return check(demote_last(std::move(sub), k), u, x, z);
    }

    VertexSet s = zv.lift(st.S);
    VertexSet t = zv.lift(st.T);
    if (t.size() < s.size() || (t.size() == s.size() && t.front() < s.front())) std::swap(s, t);
    const VertexSet ns = set_intersection(open_neighborhood(g_, s), z);
    const VertexSet x2 = set_union(x, ns);
    const VertexSet base = set_union(uu, x2);
    std::vector<Assembly> subs;
    subs.push_back(run(set_union(base, s), u, centers, x2, here));
    subs.push_back(run(set_union(base, set_difference(t, ns)), u, centers, x2, here));
    return check(glue(subs, k), u, x, z);
  }

 private:
  static std::vector<int> iota(int m) {
    std::vector<int> v(m);
    for (int i = 0; i < m; ++i) v[i] = i;
    return v;
  }

  // Clique-sum of sub-assemblies along U_1..U_k and Y.
  static Assembly glue(std::vector<Assembly>& subs, int k) {
    Assembly out;
    out.parts.assign(subs[0].parts.begin(), subs[0].parts.begin() + k + 1);
    for (std::size_t j = 0; j < subs.size(); ++j) {
      Assembly& a = subs[j];
      std::vector<int> map(a.parts.size());
      for (int i = 0; i <= k; ++i) map[i] = i;
      for (std::size_t i = k + 1; i < a.parts.size(); ++i) {
        map[i] = static_cast<int>(out.parts.size());
        out.parts.push_back(std::move(a.parts[i]));
      }
      if (j > 0) out.parts[k] = set_union(out.parts[k], a.parts[k]);
      for (const auto& [p, q] : a.host_edges) out.host_edges.emplace_back(map[p], map[q]);
      const int offset = static_cast<int>(out.bags.size());
      for (auto& bag : a.bags) {
        for (int& x : bag) x = map[x];
        out.bags.push_back(std::move(bag));
      }
      for (const auto& [p, q] : a.tree_edges) out.tree_edges.emplace_back(p + offset, q + offset);
      if (j == 0) {
        out.clique_bag = a.clique_bag;
      } else {
        out.tree_edges.emplace_back(out.clique_bag, a.clique_bag + offset);
      }
    }
    return out;
  }

  // Sub-assembly without U_i (indices 0..k-2 are the other U's, k-1 is Y);
  // put U_i back at index i, joined to every U and Y through a new bag.
  static Assembly reinsert(Assembly sub, const VertexSet& ui, int i, int k) {
    auto map = [&](int x) { return x < i ? x : x + 1; };
    Assembly out;
    out.parts.reserve(sub.parts.size() + 1);
    for (int x = 0; x < static_cast<int>(sub.parts.size()); ++x) {
      if (x == i) out.parts.push_back(ui);
      out.parts.push_back(std::move(sub.parts[x]));
    }
    if (i == static_cast<int>(sub.parts.size())) out.parts.push_back(ui);
    for (const auto& [p, q] : sub.host_edges) out.host_edges.emplace_back(map(p), map(q));
    for (int x = 0; x <= k; ++x) {
      if (x != i) out.host_edges.emplace_back(i, x);
    }
    for (auto& bag : sub.bags) {
      for (int& x : bag) x = map(x);
      out.bags.push_back(std::move(bag));
    }
    out.tree_edges = std::move(sub.tree_edges);
    out.bags.push_back(iota(k + 1));
    out.clique_bag = static_cast<int>(out.bags.size()) - 1;
    out.tree_edges.emplace_back(sub.clique_bag, out.clique_bag);
    return out;
  }

  // Sub-assembly has U_1..U_{k+1} at 0..k and Y at k+1; swap so Y sits at k.
  static Assembly demote_last(Assembly sub, int k) {
    auto map = [&](int x) { return x == k ? k + 1 : (x == k + 1 ? k : x); };
    std::swap(sub.parts[k], sub.parts[k + 1]);
    for (auto& [p, q] : sub.host_edges) {
      p = map(p);
      q = map(q);
    }
    for (auto& bag : sub.bags) {
      for (int& x : bag) x = map(x);
    }
    return sub;
  }

  Assembly check(Assembly a, const std::vector<VertexSet>& u, const VertexSet& x, const VertexSet& z) const {
    const int k = static_cast<int>(u.size());
    for (int i = 0; i < k; ++i) {
      if (a.parts[i] != u[i]) throw EngineFailure("expansion recursion: branch set not preserved as a part");
    }
    const VertexSet& y = a.parts[k];
    if (!is_subset(x, y) || y.size() > x.size() + z.size() / ell_ + 1e-9) {
      throw EngineFailure("expansion recursion: Y bound violated");
    }
    for (std::size_t i = 0; i < a.parts.size(); ++i) {
      if (static_cast<int>(i) != k && a.parts[i].size() > cap()) {
        throw EngineFailure("expansion recursion: part exceeds (h-1)d+1");
      }
    }
    return a;
  }

  const Graph& g_;
  double ell_;
  int h_;
  int n_;
  int d_;
  long long calls_ = 0;
};

}  // namespace detail

/// Deletes an apex set Y of at most n/l vertices and partitions the rest
/// into parts of size at most (h-1)d+1, d = ceil(4 l log2 n) + 2, whose host
/// has tree-width at most h-2. A d-shallow K_h model met along the way is
/// returned instead.
inline ExpansionOutcome expansion_partition(const Graph& g, double ell, int h) {
  if (!(ell >= 1)) throw InvalidInput("expansion_partition needs l >= 1");
  if (h < 2) throw InvalidInput("expansion_partition needs h >= 2");
  const int n = g.vertex_count();
  detail::ExpansionRecursion rec(g, ell, h);
  detail::Assembly top;
  try {
    top = rec.run(VertexSet::range(n), {}, {}, {}, {n + 1, 0, 0});
  } catch (detail::FoundModel& found) {
    return PromiseViolation{std::move(found.model)};
  }
  ExpansionResult res;
  res.d = rec.d();
  res.part_cap = rec.cap();
  res.ell = ell;
  res.h = h;
  res.recursive_calls = rec.calls();
  res.Y = top.parts[0];
  // drop Y (index 0) from parts, host and bags
  const int t = static_cast<int>(top.parts.size()) - 1;
  res.partition.parts.assign(std::make_move_iterator(top.parts.begin() + 1), std::make_move_iterator(top.parts.end()));
  std::vector<Edge> edges;
  for (const auto& [p, q] : top.host_edges) {
    if (p != 0 && q != 0) edges.emplace_back(p - 1, q - 1);
  }
  res.partition.host = Graph::build(t, edges);
  std::vector<VertexSet> bags;
  for (const auto& bag : top.bags) {
    std::vector<Vertex> b;
    for (int x : bag) {
      if (x != 0) b.push_back(x - 1);
    }
    bags.emplace_back(std::move(b));
  }
  res.host_tw_witness = TreeDecomposition::make(std::move(bags), top.tree_edges);
  return res;
}

/// Re-verifies an expansion result against g: partition of g - Y, host
/// decomposition, |Y| <= n/l, part cap and witness width <= h-2.
struct ExpansionCheck {
  PartitionCertificate certificate;
  bool y_ok = false;
  bool cap_ok = false;
  bool tw_ok = false;
  [[nodiscard]] bool ok() const { return certificate.valid && y_ok && cap_ok && tw_ok; }
};

inline ExpansionCheck verify_expansion(const Graph& g, const ExpansionResult& res) {
  ExpansionCheck out;
  check_vertices(g, res.Y);
  const SubgraphView rest = induced(g, set_difference(VertexSet::range(g.vertex_count()), res.Y));
  HPartition local;
  local.host = res.partition.host;
  for (const auto& part : res.partition.parts) {
    std::vector<Vertex> l;
    for (Vertex v : part) {
      const auto lv = rest.to_local(v);
      l.push_back(lv ? *lv : -1);
    }
    local.parts.emplace_back(std::move(l));
  }
  out.certificate = verify_hpartition(rest.graph(), local);
  attach_decomposition(out.certificate, local, res.host_tw_witness);
  out.y_ok = res.Y.size() <= g.vertex_count() / res.ell + 1e-9;
  out.cap_ok = res.partition.width() <= res.part_cap;
  out.tw_ok = res.host_tw_witness.width() <= res.h - 2;
  return out;
}

struct MergedPartition {
  HPartition partition;
  TreeDecomposition host_decomposition;
};

/// Adds Y back as a part joined to every other part; Y = {} is the identity.
inline MergedPartition dominate_merge(const ExpansionResult& res, const Graph& g) {
  if (!verify_expansion(g, res).certificate.valid) throw InvalidInput("dominate_merge: invalid expansion result");
  MergedPartition out{res.partition, res.host_tw_witness};
  if (res.Y.empty()) return out;
  const int t = static_cast<int>(res.partition.parts.size());
  std::vector<Edge> edges = res.partition.host.edges();
  for (int i = 0; i < t; ++i) edges.emplace_back(i, t);
  out.partition.parts.push_back(res.Y);
  out.partition.host = Graph::build(t + 1, edges);
  for (auto& bag : out.host_decomposition.bags) bag = set_union(bag, VertexSet{t});
  return out;
}

struct PolyexpReport {
  double eps = 0;
  double ell = 1;
  int d = 0;
  int h = 0;
  double tw_bound = 0;     // c 8^a (n log n)^gamma
  double cap_bound = 0;    // c 8^(a+1) (n log n)^(gamma(1+1/a))
  double y_bound = 0;      // (n log n)^(1-eps)
  bool vacuous = false;    // bounds say nothing at this n
  std::optional<ExpansionOutcome> outcome;
};

/// Parameter driver: eps = gamma/a, l = n^eps (log n)^(eps-1),
/// d = ceil(4 l log n) + 2, h = floor(c (d+1)^a) + 1, binary logs.
inline PolyexpReport polyexp_partition(const Graph& g, double a, double c, double gamma, bool run = true) {
  if (!(a > 0) || !(c > 0)) throw InvalidInput("polyexp needs a > 0 and c > 0");
  if (!(gamma > 0 && gamma < a / (2 * a + 1))) throw InvalidInput("polyexp needs 0 < gamma < a/(2a+1)");
  const double n = g.vertex_count();
  const double lg = n > 1 ? std::log2(n) : 0;
  if (n < 2 || n < std::pow(lg, a / gamma - 1)) {
    throw PreconditionViolated("below threshold: n < (log n)^(a/gamma - 1)");
  }
  PolyexpReport r;
  r.eps = gamma / a;
  r.ell = std::max(1.0, std::pow(n, r.eps) * std::pow(lg, r.eps - 1));
  r.d = st_radius_bound(r.ell, static_cast<int>(n));
  r.h = static_cast<int>(std::floor(c * std::pow(r.d + 1.0, a))) + 1;
  r.tw_bound = c * std::pow(8.0, a) * std::pow(n * lg, gamma);
  r.cap_bound = c * std::pow(8.0, a + 1) * std::pow(n * lg, gamma * (1 + 1 / a));
  r.y_bound = std::pow(n * lg, 1 - r.eps);
  r.vacuous = r.tw_bound >= n - 1 || r.cap_bound >= n;
  if (run) r.outcome = expansion_partition(g, r.ell, r.h);
  return r;
}

}  // namespace prodstruct
