#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "prodstruct/decomposition.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/instances.hpp"

using namespace prodstruct;
using Kind = DecompositionViolation::Kind;

namespace {

bool has_violation(const DecompositionCheck& c, Kind k, std::vector<int> ids) {
  for (const auto& v : c.violations) {
    if (v.kind == k && v.ids == ids) return true;
  }
  return false;
}

}  // namespace

TEST(Validate, Examples) {
  const Graph p3 = generate("path(3)").graph;
  EXPECT_TRUE(validate_decomposition(p3, TreeDecomposition::make({{0, 1}, {1, 2}}, std::vector<Edge>{{0, 1}})).ok());
  const auto bad = validate_decomposition(p3, TreeDecomposition::make({{0, 1}, {2}}, std::vector<Edge>{{0, 1}}));
  EXPECT_TRUE(has_violation(bad, Kind::EdgeUncovered, {1, 2}));
  const Graph c4 = generate("cycle(4)").graph;
  const auto c = validate_decomposition(
      c4, TreeDecomposition::make({{0, 1}, {1, 2}, {2, 3}}, std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(has_violation(c, Kind::EdgeUncovered, {0, 3}));
}

TEST(Validate, StructuralViolations) {
  const Graph p3 = generate("path(3)").graph;
  EXPECT_FALSE(validate_decomposition(p3, TreeDecomposition::make({{0, 1}, {1, 2}}, {})).ok());
  const auto trace = validate_decomposition(
      p3, TreeDecomposition::make({{0, 1}, {2}, {1, 2}}, std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(trace.ok());
  bool found = false;
  for (const auto& v : trace.violations) found |= v.kind == Kind::TraceDisconnected;
  EXPECT_TRUE(found);
  EXPECT_FALSE(validate_decomposition(p3, TreeDecomposition::make({{0, 1, 2, 7}}, {})).ok());
  EXPECT_FALSE(validate_decomposition(Graph(4), TreeDecomposition::make({{0, 1, 2}}, {})).ok());
}

TEST(Heuristic, Examples) {
  EXPECT_EQ(heuristic_tree_decomposition(generate("random_tree(40,5)").graph).width(), 1);
  EXPECT_EQ(heuristic_tree_decomposition(generate("complete(5)").graph).width(), 4);
  const Graph grid = generate("grid(3,3)").graph;
  const auto td = heuristic_tree_decomposition(grid);
  EXPECT_TRUE(validate_decomposition(grid, td).ok());
  EXPECT_LE(td.width(), 4);
  EXPECT_GE(td.width(), 3);
}

TEST(ExactTreewidth, Examples) {
  EXPECT_EQ(exact_treewidth(generate("path(6)").graph).width, 1);
  EXPECT_EQ(exact_treewidth(generate("cycle(6)").graph).width, 2);
  EXPECT_EQ(exact_treewidth(generate("grid(3,3)").graph).width, 3);
  EXPECT_THROW(exact_treewidth(generate("path(25)").graph), TooLarge);
}

TEST(ExactTreewidth, MatchesPermutationOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(7, 0.2 + 0.05 * (t % 10), rng);
    const auto ex = exact_treewidth(g);
    EXPECT_EQ(ex.width, oracle::treewidth_by_permutations(g));
    EXPECT_TRUE(validate_decomposition(g, ex.decomposition).ok());
    EXPECT_EQ(ex.decomposition.width(), std::max(ex.width, 0));
    EXPECT_LE(ex.width, heuristic_tree_decomposition(g).width());
  }
}

TEST(ExactTreeDepth, Examples) {
  EXPECT_EQ(exact_tree_depth(generate("star(5)").graph).depth, 2);
  EXPECT_EQ(exact_tree_depth(generate("complete(4)").graph).depth, 4);
  EXPECT_EQ(exact_tree_depth(generate("path(4)").graph).depth, 3);
  EXPECT_THROW(exact_tree_depth(generate("path(40)").graph), TooLarge);
}

TEST(ExactTreeDepth, MatchesRecursionAndWitness) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Graph g = oracle::random_graph(8, 0.15 + 0.05 * (t % 8), rng);
    const auto ex = exact_tree_depth(g);
    EXPECT_EQ(ex.depth, oracle::tree_depth(g));
    EXPECT_TRUE(verify_closure_embedding(g, ex.forest));
    EXPECT_EQ(ex.forest.vertex_height(), ex.depth);
    // tw <= td - 1
    EXPECT_LE(exact_treewidth(g).width, ex.depth - 1);
  }
}

TEST(ExactLimit, EnvironmentOverride) {
  ::setenv("PRODSTRUCT_EXACT_LIMIT", "5", 1);
  EXPECT_EQ(exact_limit(20), 5);
  EXPECT_THROW(exact_treewidth(generate("path(6)").graph), TooLarge);
  ::unsetenv("PRODSTRUCT_EXACT_LIMIT");
  EXPECT_EQ(exact_limit(20), 20);
}

TEST(ClosureEmbedding, Examples) {
  EXPECT_TRUE(verify_closure_embedding(generate("path(3)").graph, RootedForest({1, kNoParent, 1})));
  EXPECT_TRUE(verify_closure_embedding(generate("complete(3)").graph, RootedForest({kNoParent, 0, 1})));
  EXPECT_FALSE(verify_closure_embedding(generate("cycle(4)").graph, RootedForest({kNoParent, 0, 0, 0})));
  EXPECT_THROW(verify_closure_embedding(generate("path(3)").graph, RootedForest({kNoParent, 0})), InvalidInput);
}

TEST(Forest, RejectsCycles) {
  EXPECT_THROW(RootedForest({1, 0}), InvalidInput);
  EXPECT_THROW(RootedForest({0}), InvalidInput);
  EXPECT_THROW(RootedForest({5, kNoParent}), InvalidInput);
  const RootedForest f({kNoParent, 0, 1, 0, kNoParent});
  EXPECT_EQ(f.vertex_height(), 3);
  EXPECT_EQ(f.roots(), (VertexSet{0, 4}));
  EXPECT_TRUE(f.is_ancestor(0, 2));
  EXPECT_FALSE(f.comparable(2, 3));
}

namespace {

void expect_normalized(const Graph& g, const NormalizedDecomposition& nd) {
  EXPECT_TRUE(validate_decomposition(g, nd.td).ok());
  EXPECT_TRUE(check_condition_a(nd));
  EXPECT_TRUE(check_condition_b(nd));
  EXPECT_TRUE(check_condition_c(nd, g.vertex_count()));
  if (nd.td.node_count() <= 12) {
    EXPECT_TRUE(check_condition_d_exhaustive(nd));
  }
  EXPECT_TRUE(check_condition_d_sampled(nd, 50, 77));
}

}  // namespace

TEST(Normalize, Examples) {
  const Graph k3 = generate("complete(3)").graph;
  const auto a = normalize(k3, TreeDecomposition::make({{0, 1, 2}}, {}));
  EXPECT_EQ(a.k, 2);
  EXPECT_EQ(a.td.node_count(), 1);
  const Graph p4 = generate("path(4)").graph;
  const auto b = normalize(p4, TreeDecomposition::make({{0, 1}, {1, 2}, {2, 3}}, std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(b.td.node_count(), 3);
  EXPECT_EQ(b.k, 1);
  expect_normalized(p4, b);
  const auto c = normalize(
      p4, TreeDecomposition::make({{0, 1}, {1, 2}, {1, 2}, {2, 3}}, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(c.td.node_count(), 3);
  expect_normalized(p4, c);
}

TEST(Normalize, RejectsInvalidInput) {
  const Graph p3 = generate("path(3)").graph;
  EXPECT_THROW(normalize(p3, TreeDecomposition::make({{0, 1}, {2}}, std::vector<Edge>{{0, 1}})), InvalidInput);
}

TEST(Normalize, SupersetBagsAndWideInput) {
  // a width-3 decomposition of a path: normalizes with respect to width 3
  const Graph p6 = generate("path(6)").graph;
  const auto nd =
      normalize(p6, TreeDecomposition::make({{0, 1, 2, 3}, {2, 3, 4}, {4, 5}}, std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(nd.k, 3);
  expect_normalized(p6, nd);
}

TEST(Normalize, RandomKTreeSubgraphs) {
  for (int t = 0; t < 40; ++t) {
    const int k = 1 + t % 3;
    const auto inst = oracle::random_ktree_subgraph(10 + t, k, 0.7, 100 + t);
    const auto nd = normalize(inst.graph, *inst.decomposition);
    EXPECT_EQ(nd.k, k);
    expect_normalized(inst.graph, nd);
  }
}

TEST(Normalize, HeuristicInputs) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Graph g = oracle::random_graph(15, 0.2, rng);
    const auto td = heuristic_tree_decomposition(g);
    const auto nd = normalize(g, td);
    EXPECT_EQ(nd.k, td.width());
    expect_normalized(g, nd);
  }
}

TEST(DecompositionIo, RoundTrip) {
  const auto inst = generate("k_tree(12,2,3)");
  std::ostringstream out;
  write_decomposition(out, *inst.decomposition, 12);
  std::istringstream in(out.str());
  const auto back = read_decomposition(in);
  EXPECT_EQ(back.bags, inst.decomposition->bags);
  EXPECT_EQ(back.tree, inst.decomposition->tree);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "10 3 12");
  std::istringstream bad("2 2 3\n0 0 1\n1 1 2\n");
  EXPECT_THROW(read_decomposition(bad), FormatError);
}
