#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/graph.hpp"
#include "prodstruct/partition.hpp"

namespace prodstruct {

/// Family tag, integer parameters and nested specs, written as text like
/// grid(4,4), subdivision(cycle(5),2) or strong_product(path(3),complete(2)).
struct FamilySpec {
  std::string family;
  std::vector<long long> params;
  std::vector<FamilySpec> inner;

  [[nodiscard]] std::string str() const {
    std::string s = family + "(";
    bool first = true;
    for (const auto& f : inner) {
      s += (first ? "" : ",") + f.str();
      first = false;
    }
    for (long long p : params) {
      s += (first ? "" : ",") + std::to_string(p);
      first = false;
    }
    return s + ")";
  }
};

inline FamilySpec parse_family(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<FamilySpec()> parse = [&]() -> FamilySpec {
    skip();
    FamilySpec f;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      f.family += text[pos++];
    }
    if (f.family.empty()) throw FormatError("family spec: expected a family name at offset " + std::to_string(pos));
    skip();
    if (pos >= text.size() || text[pos] != '(') return f;
    ++pos;
    skip();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      return f;
    }
    while (true) {
      skip();
      if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-')) {
        std::size_t used = 0;
        f.params.push_back(std::stoll(text.substr(pos), &used));
        pos += used;
      } else {
        f.inner.push_back(parse());
      }
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        return f;
      }
      throw FormatError("family spec: expected ',' or ')' at offset " + std::to_string(pos));
    }
  };
  FamilySpec f = parse();
  skip();
  if (pos != text.size()) throw FormatError("family spec: trailing characters");
  return f;
}

/// Skeleton of the adversarial tree-closure instance: T_l is the complete
/// d-ary tree of vertex-height l, T'_l its (h-1)-subdivision, G the closure.
struct BadNewsInfo {
  int c = 0;
  int ell = 0;
  long long d = 0;
  long long h = 0;
  std::vector<int> tier;  // original depth, or depth of the lower endpoint for subdivision vertices
  [[nodiscard]] long long part_cap() const { return (h * d - 1) / (ell - 1); }
};

struct Instance {
  FamilySpec spec;
  Graph graph;
  std::optional<RootedForest> forest;                      // tree-rooted families
  std::optional<TreeDecomposition> decomposition;          // known-width families
  std::optional<int> known_width;
  std::vector<std::pair<Vertex, Vertex>> product_pairs;    // strong products: (a, b)
  std::optional<BadNewsInfo> bad_news;
};

namespace detail {

inline void need(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput("generate: " + what);
}

inline Instance from_forest(RootedForest f) {
  Instance inst;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (f.parent(v) != kNoParent) edges.emplace_back(f.parent(v), v);
  }
  inst.graph = Graph::build(f.size(), edges);
  inst.forest = std::move(f);
  return inst;
}

inline std::vector<Vertex> dary_parents(long long d, int height) {
  long long count = 0;
  long long level = 1;
  for (int i = 0; i < height; ++i) {
    count += level;
    level *= d;
    need(count <= 5'000'000, "tree too large");
  }
  std::vector<Vertex> parent(count, kNoParent);
  for (long long v = 1; v < count; ++v) parent[v] = static_cast<Vertex>((v - 1) / d);
  return parent;
}

}  // namespace detail

inline long long bad_news_vertex_count(int c, int ell) {
  const long long d = static_cast<long long>(c) * ell * ell;
  long long h = 1;
  for (int i = 0; i < ell - 1; ++i) h *= c;
  for (int i = 0; i < 2 * ell - 4; ++i) h *= ell;
  // h * (d + d^2 + ... + d^(l-1)) + 1
  long long sum = 0;
  long long p = 1;
  for (int i = 1; i < ell; ++i) {
    p *= d;
    sum += p;
  }
  return h * sum + 1;
}

inline Instance generate(const FamilySpec& spec);

inline Instance bad_news_instance(int c, int ell) {
  using detail::need;
  need(c >= 1 && ell >= 2, "bad_news needs c >= 1 and l >= 2");
  need(bad_news_vertex_count(c, ell) <= 2'000'000, "bad_news instance too large");
  BadNewsInfo info;
  info.c = c;
  info.ell = ell;
  info.d = static_cast<long long>(c) * ell * ell;
  info.h = 1;
  for (int i = 0; i < ell - 1; ++i) info.h *= c;
  for (int i = 0; i < 2 * ell - 4; ++i) info.h *= ell;
  const std::vector<Vertex> tparent = detail::dary_parents(info.d, ell);
  const int base = static_cast<int>(tparent.size());
  std::vector<int> depth(base, 0);
  for (int v = 1; v < base; ++v) depth[v] = depth[tparent[v]] + 1;
  // subdivision vertices appended per edge (ordered by child id), parent side first
  std::vector<Vertex> parent(tparent.begin(), tparent.end());
  std::vector<int> tier(depth.begin(), depth.end());
  for (int child = 1; child < base; ++child) {
    Vertex above = tparent[child];
    for (long long i = 0; i < info.h - 1; ++i) {
      const Vertex s = static_cast<Vertex>(parent.size());
      parent.push_back(above);
      tier.push_back(depth[child]);
      above = s;
    }
    parent[child] = above;
  }
  info.tier = std::move(tier);
  RootedForest f(std::move(parent));
  Instance inst;
  inst.graph = closure(f);
  inst.forest = std::move(f);
  inst.bad_news = std::move(info);
  return inst;
}

inline Instance generate(const FamilySpec& spec) {
  using detail::need;
  const auto& p = spec.params;
  const auto& fam = spec.family;
  auto nparams = [&](std::size_t k) {
    need(p.size() == k && spec.inner.empty(), fam + " expects " + std::to_string(k) + " integer parameters");
  };
  Instance inst;
  if (fam == "path" || fam == "path_power") {
    const bool power = fam == "path_power";
    nparams(power ? 2 : 1);
    const long long n = p[0];
    const long long k = power ? p[1] : 1;
    need(n >= 1 && n <= 10'000'000 && k >= 1, "path needs n >= 1 and k >= 1");
    std::vector<Edge> edges;
    for (long long i = 0; i < n; ++i) {
      for (long long j = i + 1; j <= std::min(n - 1, i + k); ++j) edges.emplace_back(i, j);
    }
    inst.graph = Graph::build(static_cast<int>(n), edges);
    std::vector<VertexSet> bags;
    std::vector<Edge> tree;
    for (long long i = 0; i + k < n; ++i) {
      std::vector<Vertex> b;
      for (long long j = i; j <= i + k; ++j) b.push_back(static_cast<Vertex>(j));
      bags.emplace_back(std::move(b));
      if (i > 0) tree.emplace_back(i - 1, i);
    }
    if (bags.empty()) bags.push_back(VertexSet::range(static_cast<int>(n)));
    inst.decomposition = TreeDecomposition::make(std::move(bags), tree);
    inst.known_width = inst.decomposition->width();
  } else if (fam == "grid") {
    nparams(2);
    need(p[0] >= 1 && p[1] >= 1 && p[0] * p[1] <= 10'000'000, "grid needs positive sides");
    const int r = static_cast<int>(p[0]);
    const int c = static_cast<int>(p[1]);
    std::vector<Edge> edges;
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        if (j + 1 < c) edges.emplace_back(i * c + j, i * c + j + 1);
        if (i + 1 < r) edges.emplace_back(i * c + j, (i + 1) * c + j);
      }
    }
    inst.graph = Graph::build(r * c, edges);
  } else if (fam == "cycle") {
    nparams(1);
    need(p[0] >= 3 && p[0] <= 10'000'000, "cycle needs n >= 3");
    const int n = static_cast<int>(p[0]);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    inst.graph = Graph::build(n, edges);
  } else if (fam == "complete") {
    nparams(1);
    need(p[0] >= 1 && p[0] <= 5000, "complete needs 1 <= n <= 5000");
    const int n = static_cast<int>(p[0]);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    inst.graph = Graph::build(n, edges);
    inst.decomposition = TreeDecomposition::make({VertexSet::range(n)}, {});
    inst.known_width = n - 1;
  } else if (fam == "star") {
    nparams(1);
    need(p[0] >= 0 && p[0] <= 10'000'000, "star needs p >= 0");
    std::vector<Vertex> parent(p[0] + 1, 0);
    parent[0] = kNoParent;
    inst = detail::from_forest(RootedForest(std::move(parent)));
  } else if (fam == "complete_dary_tree") {
    nparams(2);
    need(p[0] >= 1 && p[1] >= 1, "complete_dary_tree needs d >= 1 and height >= 1");
    inst = detail::from_forest(RootedForest(detail::dary_parents(p[0], static_cast<int>(p[1]))));
  } else if (fam == "random_tree") {
    need(spec.inner.empty() && (p.size() == 2 || p.size() == 3), "random_tree expects (n, seed[, degree cap])");
    const long long n = p[0];
    const long long cap = p.size() == 3 ? p[2] : 0;
    need(n >= 1 && n <= 10'000'000, "random_tree needs n >= 1");
    need(cap == 0 || cap >= 2 || n <= 2, "random_tree degree cap must be 0 (none) or >= 2");
    std::mt19937_64 rng(static_cast<std::uint64_t>(p[1]));
    std::vector<Vertex> parent(n, kNoParent);
    std::vector<int> deg(n, 0);
    std::vector<Vertex> open{0};  // vertices still below the cap
    for (long long v = 1; v < n; ++v) {
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
      const Vertex u = open[i];
      parent[v] = u;
      ++deg[u];
      deg[v] = 1;
      if (cap > 0 && deg[u] >= cap) {
        open[i] = open.back();
        open.pop_back();
      }
      if (cap == 0 || deg[v] < cap) open.push_back(static_cast<Vertex>(v));
    }
    inst = detail::from_forest(RootedForest(std::move(parent)));
  } else if (fam == "k_tree") {
    nparams(3);
    const long long n = p[0];
    const long long k = p[1];
    need(k >= 1 && n >= k + 1 && n <= 1'000'000, "k_tree needs k >= 1 and n >= k+1");
    std::mt19937_64 rng(static_cast<std::uint64_t>(p[2]));
    std::vector<Edge> edges;
    for (int i = 0; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) edges.emplace_back(i, j);
    }
    // every k-clique with a decomposition node containing it
    std::vector<std::pair<std::vector<Vertex>, int>> cliques;
    std::vector<VertexSet> bags{VertexSet::range(static_cast<int>(k + 1))};
    std::vector<Edge> tree;
    for (int drop = 0; drop <= k; ++drop) {
      std::vector<Vertex> c;
      for (int i = 0; i <= k; ++i) {
        if (i != drop) c.push_back(i);
      }
      cliques.emplace_back(std::move(c), 0);
    }
    for (long long v = k + 1; v < n; ++v) {
      const auto [clique, node] = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
      for (Vertex u : clique) edges.emplace_back(u, static_cast<Vertex>(v));
      std::vector<Vertex> bag = clique;
      bag.push_back(static_cast<Vertex>(v));
      const int here = static_cast<int>(bags.size());
      bags.emplace_back(bag);
      tree.emplace_back(node, here);
      for (std::size_t drop = 0; drop < clique.size(); ++drop) {
        std::vector<Vertex> c = clique;
        c[drop] = static_cast<Vertex>(v);
        std::sort(c.begin(), c.end());
        cliques.emplace_back(std::move(c), here);
      }
    }
    inst.graph = Graph::build(static_cast<int>(n), edges);
    inst.decomposition = TreeDecomposition::make(std::move(bags), tree);
    inst.known_width = static_cast<int>(k);
  } else if (fam == "subdivision") {
    need(spec.inner.size() == 1 && p.size() == 1 && p[0] >= 0, "subdivision expects (inner, s >= 0)");
    const Instance in = generate(spec.inner[0]);
    const int n0 = in.graph.vertex_count();
    const auto old_edges = in.graph.edges();
    need(static_cast<long long>(old_edges.size()) * p[0] + n0 <= 10'000'000, "subdivision too large");
    std::vector<Edge> edges;
    int next = n0;
    for (const auto& [u, v] : old_edges) {
      Vertex prev = u;
      for (long long i = 0; i < p[0]; ++i) {
        edges.emplace_back(prev, next);
        prev = next++;
      }
      edges.emplace_back(prev, v);
    }
    inst.graph = Graph::build(next, edges);
  } else if (fam == "closure") {
    need(spec.inner.size() == 1 && p.empty(), "closure expects one rooted-tree spec");
    Instance in = generate(spec.inner[0]);
    need(in.forest.has_value(), "closure needs a tree-rooted family");
    inst.graph = closure(*in.forest);
    inst.forest = std::move(in.forest);
  } else if (fam == "strong_product") {
    need(spec.inner.size() == 2 && p.empty(), "strong_product expects two specs");
    const Instance a = generate(spec.inner[0]);
    const Instance b = generate(spec.inner[1]);
    const int na = a.graph.vertex_count();
    const int nb = b.graph.vertex_count();
    need(static_cast<long long>(na) * nb <= 10'000'000, "strong product too large");
    std::vector<Edge> edges;
    auto id = [&](Vertex x, Vertex y) { return x * nb + y; };
    for (Vertex x = 0; x < na; ++x) {
      std::vector<Vertex> xs{x};
      xs.insert(xs.end(), a.graph.neighbors(x).begin(), a.graph.neighbors(x).end());
      for (Vertex y = 0; y < nb; ++y) {
        std::vector<Vertex> ys{y};
        ys.insert(ys.end(), b.graph.neighbors(y).begin(), b.graph.neighbors(y).end());
        for (Vertex x2 : xs) {
          for (Vertex y2 : ys) {
            if (id(x2, y2) > id(x, y)) edges.emplace_back(id(x, y), id(x2, y2));
          }
        }
      }
    }
    inst.graph = Graph::build(na * nb, edges);
    for (Vertex x = 0; x < na; ++x) {
      for (Vertex y = 0; y < nb; ++y) inst.product_pairs.emplace_back(x, y);
    }
  } else if (fam == "bad_news") {
    nparams(2);
    need(p[0] >= 1 && p[0] <= 100 && p[1] >= 2 && p[1] <= 20, "bad_news needs c >= 1 and l >= 2");
    inst = bad_news_instance(static_cast<int>(p[0]), static_cast<int>(p[1]));
  } else {
    throw InvalidInput("generate: unknown family '" + fam + "'");
  }
  inst.spec = spec;
  return inst;
}

inline Instance generate(const std::string& text) { return generate(parse_family(text)); }

struct BadNewsWitness {
  std::vector<Vertex> path;  // root first, ends at a leaf of T'_l
  VertexSet parts_hit;       // part indices met by the path
};

/// Root-leaf path of T'_l meeting at least l parts, following the induction
/// over T'_1, ..., T'_l: extend the previous path from its leaf v into a
/// descendant outside the parts already met, then down to a leaf.
inline BadNewsWitness bad_news_witness(const Instance& inst, const std::vector<VertexSet>& parts) {
  if (!inst.bad_news || !inst.forest) throw InvalidInput("bad_news_witness needs a bad_news instance");
  const BadNewsInfo& info = *inst.bad_news;
  const RootedForest& f = *inst.forest;
  const int n = inst.graph.vertex_count();
  std::vector<int> owner(n, -1);
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    if (parts[i].size() > info.part_cap()) {
      throw PreconditionViolated("part " + std::to_string(i) + " has " + std::to_string(parts[i].size()) +
                                 " vertices, cap is " + std::to_string(info.part_cap()));
    }
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= n || owner[v] >= 0) throw InvalidInput("bad_news_witness: parts do not partition V(G)");
      owner[v] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw InvalidInput("bad_news_witness: parts do not cover V(G)");
  }
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < n; ++v) {
    if (f.parent(v) != kNoParent) children[f.parent(v)].push_back(v);
  }
  BadNewsWitness w;
  w.path = {0};
  std::vector<int> hit{owner[0]};
  for (int j = 2; j <= info.ell; ++j) {
    const Vertex v = w.path.back();
    // descendants of v inside T'_j, in preorder
    std::vector<Vertex> stack(children[v].rbegin(), children[v].rend());
    Vertex x = -1;
    while (!stack.empty() && x < 0) {
      const Vertex y = stack.back();
      stack.pop_back();
      if (info.tier[y] > j - 1) continue;
      if (std::find(hit.begin(), hit.end(), owner[y]) == hit.end()) {
        x = y;
        break;
      }
      stack.insert(stack.end(), children[y].rbegin(), children[y].rend());
    }
    if (x < 0) throw EngineFailure("bad_news_witness: every descendant already in a met part");
    std::vector<Vertex> up;
    for (Vertex a = x; a != v; a = f.parent(a)) up.push_back(a);
    w.path.insert(w.path.end(), up.rbegin(), up.rend());
    // down to a leaf of T'_j: follow the first child until tier j-1 ends
    for (Vertex a = x; !children[a].empty() && info.tier[children[a].front()] == info.tier[x];) {
      a = children[a].front();
      w.path.push_back(a);
    }
    hit.clear();
    for (Vertex a : w.path) {
      if (std::find(hit.begin(), hit.end(), owner[a]) == hit.end()) hit.push_back(owner[a]);
    }
  }
  w.parts_hit = VertexSet(std::move(hit));
  return w;
}

}  // namespace prodstruct
