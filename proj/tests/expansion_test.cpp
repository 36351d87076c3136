#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <variant>

#include "prodstruct/expansion.hpp"
#include "prodstruct/instances.hpp"

using namespace prodstruct;

namespace {

int boundary(const Graph& g, const VertexSet& s) {
  std::vector<char> in(g.vertex_count(), 0), hit(g.vertex_count(), 0);
  for (Vertex v : s) in[v] = 1;
  int count = 0;
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(v)) {
      if (!in[w] && !hit[w]) {
        hit[w] = 1;
        ++count;
      }
    }
  }
  return count;
}

int tree_radius(const STOutcome& o) {
  int r = 0;
  for (Vertex v = 0; v < static_cast<int>(o.parent.size()); ++v) {
    int depth = 0;
    for (Vertex x = v; x != o.root; x = o.parent[x]) ++depth;
    r = std::max(r, depth);
  }
  return r;
}

Graph grid_subgraph(int side, double keep, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(keep);
  std::vector<Edge> e;
  for (auto edge : generate("grid(" + std::to_string(side) + "," + std::to_string(side) + ")").graph.edges()) {
    if (coin(rng)) e.push_back(edge);
  }
  return Graph::build(side * side, e);
}

}  // namespace

TEST(ShallowModel, FindExamples) {
  const auto k3 = find_shallow_clique_model(generate("complete(3)").graph, 3, 0);
  ASSERT_TRUE(k3.has_value());
  EXPECT_EQ(k3->branch_sets, (std::vector<VertexSet>{{0}, {1}, {2}}));
  const Graph c5 = generate("cycle(5)").graph;
  EXPECT_FALSE(find_shallow_clique_model(c5, 3, 0).has_value());
  const auto m = find_shallow_clique_model(c5, 3, 1);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(verify_shallow_model(c5, *m));
  EXPECT_THROW(find_shallow_clique_model(generate("path(13)").graph, 2, 0), TooLarge);
  EXPECT_FALSE(find_shallow_clique_model(generate("grid(3,3)").graph, 5, 4).has_value());
}

TEST(ShallowModel, VerifyExamples) {
  const Graph c5 = generate("cycle(5)").graph;
  EXPECT_TRUE(verify_shallow_model(c5, {{{0, 1}, {2, 3}, {4}}, {0, 2, 4}, 1}));
  EXPECT_FALSE(verify_shallow_model(c5, {{{0, 1}, {2, 3}, {4}}, {0, 2, 4}, 0}));
  EXPECT_FALSE(verify_shallow_model(c5, {{{0, 1}, {1, 2}}, {0, 2}, 1}));
  EXPECT_FALSE(verify_shallow_model(c5, {{{0}, {2}}, {0, 2}, 1}));
  EXPECT_FALSE(verify_shallow_model(c5, {{{0, 2}, {3}}, {0, 3}, 3}));
}

TEST(StDichotomy, Examples) {
  const auto p8 = st_dichotomy(generate("path(8)").graph, 1);
  ASSERT_TRUE(p8.is_tree);
  EXPECT_LE(tree_radius(p8), 14);
  EXPECT_EQ(st_radius_bound(1, 8), 14);

  const Graph p1000 = generate("path(1000)").graph;
  const auto cut = st_dichotomy(p1000, 10);
  ASSERT_FALSE(cut.is_tree);
  EXPECT_EQ(cut.S.size() + cut.T.size(), 1000);
  EXPECT_TRUE(set_intersection(cut.S, cut.T).empty());
  EXPECT_LE(boundary(p1000, cut.S) * 10, cut.S.size());
  EXPECT_LE(boundary(p1000, cut.T) * 10, cut.T.size());

  const auto k1 = st_dichotomy(Graph(1), 3);
  EXPECT_TRUE(k1.is_tree);
  EXPECT_EQ(k1.radius, 0);
  EXPECT_THROW(st_dichotomy(Graph(2), 1), PreconditionViolated);
  EXPECT_THROW(st_dichotomy(Graph(2), 0.5), InvalidInput);
}

TEST(StDichotomy, PathsBothBranches) {
  for (int n : {1, 2, 50, 300, 1200, 5000}) {
    const Graph g = generate("path(" + std::to_string(n) + ")").graph;
    for (double ell : {1.0, 2.0, 10.0, 40.0}) {
      const auto o = st_dichotomy(g, ell);
      EXPECT_TRUE(verify_st(g, ell, o));
      if (o.is_tree) {
        EXPECT_LE(tree_radius(o), st_radius_bound(ell, n));
        EXPECT_EQ(tree_radius(o), o.radius);
      } else {
        EXPECT_LE(boundary(g, o.S) * ell, o.S.size() + 1e-9);
        EXPECT_LE(boundary(g, o.T) * ell, o.T.size() + 1e-9);
      }
    }
  }
}

TEST(ExpansionPartition, GridExample) {
  const Graph g = generate("grid(4,4)").graph;
  const auto out = expansion_partition(g, 2, 5);
  ASSERT_TRUE(std::holds_alternative<ExpansionResult>(out));
  const auto& res = std::get<ExpansionResult>(out);
  EXPECT_EQ(res.d, 34);
  EXPECT_EQ(res.part_cap, 137);
  EXPECT_LE(res.Y.size(), 8);
  EXPECT_TRUE(verify_expansion(g, res).ok());
  EXPECT_LE(res.host_tw_witness.width(), 3);
}

TEST(ExpansionPartition, CompleteGraphSurfacesModel) {
  const Graph k5 = generate("complete(5)").graph;
  const auto out = expansion_partition(k5, 1, 5);
  ASSERT_TRUE(std::holds_alternative<PromiseViolation>(out));
  const auto& m = std::get<PromiseViolation>(out).model;
  EXPECT_EQ(m.branch_sets.size(), 5u);
  EXPECT_TRUE(verify_shallow_model(k5, m));
  const auto k4 = expansion_partition(generate("complete(4)").graph, 1, 5);
  EXPECT_TRUE(std::holds_alternative<ExpansionResult>(k4));
}

TEST(ExpansionPartition, SingleVertex) {
  const auto out = expansion_partition(Graph(1), 3, 2);
  ASSERT_TRUE(std::holds_alternative<ExpansionResult>(out));
  const auto& res = std::get<ExpansionResult>(out);
  EXPECT_TRUE(res.Y.empty());
  EXPECT_EQ(res.partition.parts, (std::vector<VertexSet>{{0}}));
  EXPECT_EQ(res.partition.host, Graph(1));
  EXPECT_THROW(expansion_partition(Graph(1), 0.5, 2), InvalidInput);
  EXPECT_THROW(expansion_partition(Graph(1), 1, 1), InvalidInput);
}

TEST(ExpansionPartition, PlanarLikeInstances) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const int side = 3 + t % 8;
    const Graph g = t % 2 ? grid_subgraph(side, 0.8, rng) : generate("grid(" + std::to_string(side) + "," + std::to_string(side + 1) + ")").graph;
    for (double ell : {1.0, 2.0, 4.0}) {
      const auto out = expansion_partition(g, ell, 5);
      ASSERT_TRUE(std::holds_alternative<ExpansionResult>(out));
      const auto& res = std::get<ExpansionResult>(out);
      const auto check = verify_expansion(g, res);
      EXPECT_TRUE(check.ok());
      EXPECT_LE(res.host_tw_witness.width(), 3);
      EXPECT_LE(res.Y.size(), g.vertex_count() / ell + 1e-9);
    }
  }
}

TEST(ExpansionPartition, LongPathsForceCuts) {
  for (int n : {400, 2000}) {
    const Graph g = generate("path(" + std::to_string(n) + ")").graph;
    const auto out = expansion_partition(g, 8, 3);
    ASSERT_TRUE(std::holds_alternative<ExpansionResult>(out));
    const auto& res = std::get<ExpansionResult>(out);
    EXPECT_TRUE(verify_expansion(g, res).ok());
    EXPECT_GT(res.recursive_calls, 1);
  }
}

TEST(DominateMerge, Examples) {
  const Graph g = generate("grid(4,4)").graph;
  const auto res = std::get<ExpansionResult>(expansion_partition(g, 2, 5));
  ASSERT_TRUE(res.Y.empty());
  const auto same = dominate_merge(res, g);
  EXPECT_EQ(same.partition.parts, res.partition.parts);

  ExpansionResult withy = res;
  withy.Y = VertexSet{0, 5, 10};
  withy.partition.parts.clear();
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < 16; ++v) {
    if (!withy.Y.contains(v)) rest.push_back(v);
  }
  withy.partition.parts = {VertexSet(rest)};
  withy.partition.host = Graph(1);
  withy.host_tw_witness = TreeDecomposition::make({{0}}, {});
  const auto merged = dominate_merge(withy, g);
  EXPECT_EQ(merged.partition.host, Graph::build(2, {{0, 1}}));
  EXPECT_EQ(merged.partition.width(), 13);
  EXPECT_TRUE(verify_hpartition(g, merged.partition).valid);
  EXPECT_LE(merged.host_decomposition.width(), 1);

  ExpansionResult broken = withy;
  broken.partition.parts = {VertexSet{1, 2}};
  EXPECT_THROW(dominate_merge(broken, g), InvalidInput);
}

TEST(Polyexp, Parameters) {
  EXPECT_THROW(polyexp_partition(generate("path(64)").graph, 1, 4, 0.25, false), PreconditionViolated);
  const auto r = polyexp_partition(generate("path(1024)").graph, 1, 4, 0.25, false);
  EXPECT_NEAR(r.ell, std::pow(1024, 0.25) * std::pow(10, -0.75), 1e-9);
  EXPECT_EQ(r.d, 43);
  EXPECT_EQ(r.h, 177);
  EXPECT_TRUE(r.vacuous);
  EXPECT_FALSE(r.outcome.has_value());
  EXPECT_THROW(polyexp_partition(Graph(4), 1, 4, 0.4, false), InvalidInput);
  const auto run = polyexp_partition(generate("grid(32,32)").graph, 1, 4, 0.25);
  ASSERT_TRUE(run.outcome.has_value());
  ASSERT_TRUE(std::holds_alternative<ExpansionResult>(*run.outcome));
  EXPECT_TRUE(verify_expansion(generate("grid(32,32)").graph, std::get<ExpansionResult>(*run.outcome)).ok());
}
