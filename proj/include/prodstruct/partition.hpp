#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/graph.hpp"
#include "prodstruct/separators.hpp"

namespace prodstruct {

/// Partition of V(G) indexed by the vertices of a host graph H. G is then
/// contained in H strong-product K_width.
struct HPartition {
  std::vector<VertexSet> parts;
  Graph host;

  [[nodiscard]] int width() const {
    int w = 0;
    for (const auto& p : parts) w = std::max(w, p.size());
    return w;
  }

  /// part_of[v] for every vertex of an n-vertex graph; -1 if uncovered.
  [[nodiscard]] std::vector<int> part_of(int n) const {
    std::vector<int> out(n, -1);
    for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
      for (Vertex v : parts[i]) {
        if (v >= 0 && v < n) out[v] = i;
      }
    }
    return out;
  }
};

struct PartitionViolation {
  enum class Kind { VertexOutOfRange, Uncovered, Duplicated, EmptyPart, HostSizeMismatch, EdgeNotMapped, BadWitness };
  Kind kind;
  std::string message;
  std::vector<int> ids;
};

inline const char* to_string(PartitionViolation::Kind k) {
  using K = PartitionViolation::Kind;
  switch (k) {
    case K::VertexOutOfRange: return "vertex-out-of-range";
    case K::Uncovered: return "uncovered";
    case K::Duplicated: return "duplicated";
    case K::EmptyPart: return "empty-part";
    case K::HostSizeMismatch: return "host-size-mismatch";
    case K::EdgeNotMapped: return "edge-not-mapped";
    case K::BadWitness: return "bad-witness";
  }
  return "unknown";
}

struct PartitionCertificate {
  bool valid = false;
  int width = 0;
  std::vector<PartitionViolation> violations;
  std::optional<RootedForest> forest;               // host is inside its closure
  std::optional<TreeDecomposition> decomposition;   // of the host
  std::optional<VertexSet> clique;                  // clique of the host
};

/// Checks that the parts partition V(g) and that every edge stays in a part
/// or maps onto a host edge. Every violating edge is listed.
inline PartitionCertificate verify_hpartition(const Graph& g, const HPartition& p) {
  using Kind = PartitionViolation::Kind;
  PartitionCertificate cert;
  const int n = g.vertex_count();
  const int t = static_cast<int>(p.parts.size());
  if (p.host.vertex_count() != t) {
    cert.violations.push_back({Kind::HostSizeMismatch,
                               "host has " + std::to_string(p.host.vertex_count()) + " vertices for " +
                                   std::to_string(t) + " parts",
                               {}});
  }
  std::vector<int> owner(n, -1);
  for (int i = 0; i < t; ++i) {
    if (p.parts[i].empty()) cert.violations.push_back({Kind::EmptyPart, "part " + std::to_string(i) + " is empty", {i}});
    for (Vertex v : p.parts[i]) {
      if (!g.valid(v)) {
        cert.violations.push_back(
            {Kind::VertexOutOfRange, "part " + std::to_string(i) + " holds unknown vertex " + std::to_string(v), {i, v}});
      } else if (owner[v] >= 0) {
        cert.violations.push_back({Kind::Duplicated,
                                   "vertex " + std::to_string(v) + " is in parts " + std::to_string(owner[v]) +
                                       " and " + std::to_string(i),
                                   {v}});
      } else {
        owner[v] = i;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] < 0) cert.violations.push_back({Kind::Uncovered, "vertex " + std::to_string(v) + " is in no part", {v}});
  }
  for (const auto& [u, v] : g.edges()) {
    const int a = owner[u];
    const int b = owner[v];
    if (a < 0 || b < 0 || a == b) continue;
    if (!p.host.valid(a) || !p.host.valid(b) || !p.host.has_edge(a, b)) {
      cert.violations.push_back({Kind::EdgeNotMapped,
                                 "edge (" + std::to_string(u) + "," + std::to_string(v) + ") joins parts " +
                                     std::to_string(a) + " and " + std::to_string(b) + " which are not adjacent in H",
                                 {u, v}});
    }
  }
  cert.width = p.width();
  cert.valid = cert.violations.empty();
  return cert;
}

/// Attaches a forest witness; records a violation unless host is inside
/// its closure.
inline void attach_forest(PartitionCertificate& cert, const HPartition& p, const RootedForest& f) {
  if (f.size() != p.host.vertex_count() || !verify_closure_embedding(p.host, f)) {
    cert.violations.push_back({PartitionViolation::Kind::BadWitness, "host is not inside the forest closure", {}});
    cert.valid = false;
  }
  cert.forest = f;
}

inline void attach_decomposition(PartitionCertificate& cert, const HPartition& p, const TreeDecomposition& td) {
  if (auto check = validate_decomposition(p.host, td); !check.ok()) {
    cert.violations.push_back(
        {PartitionViolation::Kind::BadWitness, "host decomposition: " + check.violations.front().message, {}});
    cert.valid = false;
  }
  cert.decomposition = td;
}

inline void attach_clique(PartitionCertificate& cert, const HPartition& p, const VertexSet& clique) {
  bool ok = std::all_of(clique.begin(), clique.end(), [&](Vertex v) { return p.host.valid(v); });
  for (std::size_t i = 0; ok && i < clique.members().size(); ++i) {
    for (std::size_t j = i + 1; ok && j < clique.members().size(); ++j) ok = p.host.has_edge(clique[i], clique[j]);
  }
  if (!ok) {
    cert.violations.push_back({PartitionViolation::Kind::BadWitness, "claimed host clique is not a clique", {}});
    cert.valid = false;
  }
  cert.clique = clique;
}

/// Minimal host: ij is an edge iff some edge of g joins parts i and j.
inline Graph quotient(const Graph& g, const std::vector<VertexSet>& parts) {
  const int n = g.vertex_count();
  std::vector<int> owner(n, -1);
  for (int i = 0; i < static_cast<int>(parts.size()); ++i) {
    for (Vertex v : parts[i]) {
      if (!g.valid(v) || owner[v] >= 0) throw InvalidInput("quotient: parts do not partition the vertex set");
      owner[v] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw InvalidInput("quotient: parts do not cover the vertex set");
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (owner[u] != owner[v]) edges.emplace_back(owner[u], owner[v]);
  }
  return Graph::build(static_cast<int>(parts.size()), edges);
}

struct BoundedPartition {
  HPartition partition;
  std::optional<RootedForest> forest;  // host == closure(forest) when set
  double bound = 0;
  std::string formula;
};

/// Star-partition: the fragmentation set with target n^(1/(1+eps)) is the
/// centre part, components of the rest are leaves.
inline BoundedPartition star_partition(const Graph& g, const SeparatorEngine& engine, const ClassGuarantee& cg) {
  cg.validate();
  const int n = g.vertex_count();
  const double alpha = 1.0 / (1.0 + cg.eps);
  BoundedPartition out;
  out.bound = std::max(cg.gamma(), 1.0) * std::pow(std::max(n, 1), alpha);
  out.formula = "max{" + std::to_string(cg.gamma()) + ",1}*" + std::to_string(n) + "^(1/(1+" +
                std::to_string(cg.eps) + "))";
  if (n == 0) {
    out.partition.host = Graph(0);
    return out;
  }
  const long long target = std::max<long long>(1, safe_floor(std::pow(n, alpha)));
  const auto frag = fragment(g, engine, target, cg);
  std::vector<VertexSet> parts;
  if (!frag.S.empty()) parts.push_back(frag.S);
  for (auto& comp : components_without(g, frag.S)) parts.push_back(std::move(comp));
  std::vector<Edge> star;
  for (int i = 1; i < static_cast<int>(parts.size()); ++i) star.emplace_back(0, i);
  out.partition.host = Graph::build(static_cast<int>(parts.size()), star);
  out.partition.parts = std::move(parts);
  std::vector<Vertex> parent(out.partition.parts.size(), 0);
  parent[0] = kNoParent;
  out.forest = RootedForest(std::move(parent));
  return out;
}

namespace detail {

// Parts and forest-parent links built by the recursive constructions.
struct ForestAssembly {
  std::vector<VertexSet> parts;
  std::vector<Vertex> parent;

  int add(VertexSet part, int above) {
    parts.push_back(std::move(part));
    parent.push_back(above);
    return static_cast<int>(parts.size()) - 1;
  }

  BoundedPartition finish() {
    BoundedPartition out;
    RootedForest f(std::move(parent));
    out.partition.host = closure(f);
    out.partition.parts = std::move(parts);
    out.forest = std::move(f);
    return out;
  }
};

}  // namespace detail

/// gamma * n^((1-eps)/(1-eps^d)).
inline double tdd_bound(const ClassGuarantee& cg, double n, int d) {
  return cg.gamma() * std::pow(n, (1 - cg.eps) / (1 - std::pow(cg.eps, d)));
}

/// Bounded tree-depth partition: the root part is a fragmentation set with
/// alpha = (1-eps^(d-1))/(1-eps^d), each remaining component recurses with
/// depth d-1. An empty fragmentation set consumes the level without a part.
inline BoundedPartition tdd_partition(const Graph& g, const SeparatorEngine& engine, const ClassGuarantee& cg, int d) {
  cg.validate();
  if (d < 1) throw InvalidInput("tdd_partition needs d >= 1");
  detail::ForestAssembly fa;
  std::function<void(const VertexSet&, int, int)> rec = [&](const VertexSet& keep, int depth, int above) {
    if (keep.empty()) return;
    const int n = keep.size();
    if (depth == 1 || n == 1) {
      fa.add(keep, above);
      return;
    }
    const double alpha = (1 - std::pow(cg.eps, depth - 1)) / (1 - std::pow(cg.eps, depth));
    const long long target = std::max<long long>(1, safe_floor(std::pow(n, alpha)));
    const auto frag = fragment(g, engine, target, cg, keep);
    int here = above;
    if (!frag.S.empty()) here = fa.add(frag.S, above);
    for (const auto& comp : components_within(g, set_difference(keep, frag.S))) rec(comp, depth - 1, here);
  };
  rec(VertexSet::range(g.vertex_count()), d, kNoParent);
  auto out = fa.finish();
  out.bound = tdd_bound(cg, std::max(g.vertex_count(), 1), d);
  out.formula = std::to_string(cg.gamma()) + "*" + std::to_string(g.vertex_count()) + "^((1-" +
                std::to_string(cg.eps) + ")/(1-" + std::to_string(cg.eps) + "^" + std::to_string(d) + "))";
  return out;
}

enum class DepthSchedule { FixedDelta, SlowH, LogLog };

struct DepthChoice {
  int d = 1;
  double exponent = 1;  // m <= coefficient * n^exponent
  double bound = 0;
  std::string formula;
};

namespace detail {

inline int ceil_near(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(x));
}

}  // namespace detail

/// Depth schedules. FixedDelta: d = ceil(log_eps(delta/(1-eps+delta))).
/// SlowH: d = ceil(h) with gap delta(n) = (1-eps)((1-eps^h)^-1 - 1).
/// LogLog: d = ceil(log(1+log n)/(-log eps)). Logarithms are binary.
inline DepthChoice choose_depth(double n, double eps, double c, DepthSchedule schedule, double param = 0) {
  if (!(eps > 0 && eps < 1) || !(c > 0)) throw InvalidInput("choose_depth needs 0 < eps < 1 and c > 0");
  if (!(n >= 1)) throw InvalidInput("choose_depth needs n >= 1");
  const double gamma = c * std::pow(2.0, eps) / (std::pow(2.0, eps) - 1);
  DepthChoice out;
  switch (schedule) {
    case DepthSchedule::FixedDelta: {
      const double delta = param;
      if (!(delta > 0 && delta < eps)) throw InvalidInput("fixed-delta schedule needs 0 < delta < eps");
      out.d = std::max(1, detail::ceil_near(std::log(delta / (1 - eps + delta)) / std::log(eps)));
      out.exponent = 1 - eps + delta;
      out.bound = gamma * std::pow(n, out.exponent);
      out.formula = std::to_string(gamma) + "*n^(1-" + std::to_string(eps) + "+" + std::to_string(delta) + ")";
      break;
    }
    case DepthSchedule::SlowH: {
      const double h = param;
      if (!(h >= 1)) throw InvalidInput("slow-h schedule needs h(n) >= 1");
      out.d = detail::ceil_near(h);
      const double delta = (1 - eps) * (1 / (1 - std::pow(eps, h)) - 1);
      out.exponent = 1 - eps + delta;
      out.bound = gamma * std::pow(n, out.exponent);
      out.formula = std::to_string(gamma) + "*n^(1-" + std::to_string(eps) + "+" + std::to_string(delta) + ")";
      break;
    }
    case DepthSchedule::LogLog: {
      out.d = std::max(1, detail::ceil_near(std::log2(1 + std::log2(n)) / -std::log2(eps)));
      out.exponent = 1 - eps;
      const double coeff = 2 * c / (std::pow(2.0, eps) - 1);
      out.bound = coeff * std::pow(n, out.exponent);
      out.formula = std::to_string(coeff) + "*n^(1-" + std::to_string(eps) + ")";
      break;
    }
  }
  return out;
}

/// (k+1)^(1-1/d) n^(1/d).
inline double treewidth_tdd_bound(int k, double n, int d) {
  return std::pow(k + 1.0, 1.0 - 1.0 / d) * std::pow(n, 1.0 / d);
}

/// Tree-depth-d partition of a graph with a normalized width-k
/// decomposition: separator with p = (k+1)^(1-1/d) n^(1/d),
/// q = (k+1)^(1/d) n^(1-1/d), then depth d-1 on each component.
inline BoundedPartition treewidth_tdd_partition(const Graph& g, const NormalizedDecomposition& nd, int d) {
  require_normalized(g, nd);
  if (d < 1) throw InvalidInput("treewidth_tdd_partition needs d >= 1");
  detail::ForestAssembly fa;
  std::function<void(const VertexSet&, const NormalizedDecomposition&, int, int)> rec =
      [&](const VertexSet& keep, const NormalizedDecomposition& local_nd, int depth, int above) {
        const int n = keep.size();
        if (n == 0) return;
        if (depth == 1 || n == 1) {
          fa.add(keep, above);
          return;
        }
        const SubgraphView view = induced(g, keep);
        const int k = local_nd.k;
        const double p = std::pow(k + 1.0, 1.0 - 1.0 / depth) * std::pow(n, 1.0 / depth);
        const double q = std::pow(k + 1.0, 1.0 / depth) * std::pow(n, 1.0 - 1.0 / depth);
        const VertexSet s = view.lift(treewidth_separator(view.graph(), local_nd, std::max<double>(p, k + 1), q));
        int here = above;
        if (!s.empty()) here = fa.add(s, above);
        for (const auto& comp : components_within(g, set_difference(keep, s))) {
          const SubgraphView cv = induced(g, comp);
          const TreeDecomposition restricted = restrict_decomposition(
              [&] {
                TreeDecomposition lifted = local_nd.td;
                for (auto& bag : lifted.bags) bag = view.lift(bag);
                return lifted;
              }(),
              cv);
          rec(comp, normalize(cv.graph(), restricted), depth - 1, here);
        }
      };
  const int n = g.vertex_count();
  if (n > 0) rec(VertexSet::range(n), nd, d, kNoParent);
  auto out = fa.finish();
  out.bound = treewidth_tdd_bound(nd.k, std::max(n, 1), d);
  out.formula = "(" + std::to_string(nd.k) + "+1)^(1-1/" + std::to_string(d) + ")*" + std::to_string(n) + "^(1/" +
                std::to_string(d) + ")";
  return out;
}

/// False iff n > (2m)^d, i.e. no height-d host of width m contains P_n.
inline bool path_lower_bound_check(long long n, int d, long long m) {
  if (m < 1 || d < 1) throw InvalidInput("path_lower_bound_check needs m >= 1 and d >= 1");
  long double cap = 1;
  for (int i = 0; i < d; ++i) {
    cap *= 2.0L * static_cast<long double>(m);
    if (cap >= static_cast<long double>(n)) return true;
  }
  return static_cast<long double>(n) <= cap;
}

}  // namespace prodstruct
