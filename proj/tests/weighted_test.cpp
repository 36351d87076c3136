#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "prodstruct/instances.hpp"
#include "prodstruct/weighted.hpp"

using namespace prodstruct;
using Kind = SeparabilityStructure::Kind;

namespace {

std::vector<double> unit(int n) { return std::vector<double>(n, 1.0); }

std::vector<double> random_integer_weights(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<double> out(n);
  for (auto& x : out) x = w(rng);
  return out;
}

// Re-sums the class weight and recomputes component sizes independently.
void expect_report_consistent(const WeightedGraph& wg, const WeightedSeparatorReport& r) {
  double w = 0;
  for (Vertex v : r.S) w += wg.weights[v];
  EXPECT_NEAR(w, r.weight, 1e-9);
  const int n = wg.graph.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (auto [a, b] : wg.graph.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> seen(n, 0);
  for (Vertex v : r.S) seen[v] = 1;
  int largest = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    int size = 0;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex x : adj[v]) {
        if (!seen[x]) {
          seen[x] = 1;
          stack.push_back(x);
        }
      }
    }
    largest = std::max(largest, size);
  }
  EXPECT_EQ(largest, r.max_component);
  EXPECT_TRUE(r.meets_bound);
  EXPECT_LE(r.weight, r.weight_bound + 1e-9);
  EXPECT_LE(r.max_component, r.component_bound + 1e-9);
}

}  // namespace

TEST(WeightedSeparator, PathExample) {
  auto [g, pc] = blowup_graph({16}, 1);
  const WeightedGraph wg(g, unit(16));
  const auto r = weighted_separator(wg, {Kind::PathBlowup, pc, 3});
  EXPECT_EQ(r.m, 4);
  EXPECT_EQ(r.weight, 4);
  EXPECT_LE(r.max_component, 3);
  EXPECT_DOUBLE_EQ(r.weight_bound, 4);
  expect_report_consistent(wg, r);
}

TEST(WeightedSeparator, GridExample) {
  auto [g, pc] = blowup_graph({4, 4}, 1);
  const WeightedGraph wg(g, unit(16));
  const auto r = weighted_separator(wg, {Kind::GridBlowup, pc, 3});
  EXPECT_EQ(r.m, 4);
  EXPECT_NEAR(r.weight_bound, std::pow(32.0, 2.0 / 3), 1e-9);
  EXPECT_LE(r.weight, 8);
  EXPECT_LE(r.max_component, 9);
  expect_report_consistent(wg, r);
}

TEST(WeightedSeparator, BinaryTreeExample) {
  const Graph t = generate("complete_dary_tree(2,4)").graph;
  ASSERT_EQ(t.vertex_count(), 15);
  const WeightedGraph wg(t, unit(15));
  const auto r = weighted_separator(wg, {Kind::Tree, {}, 3});
  EXPECT_EQ(r.m, 2);
  EXPECT_LE(r.weight, 7);
  EXPECT_EQ(r.max_component, 1);
  expect_report_consistent(wg, r);
}

TEST(WeightedSeparator, Errors) {
  auto [g, pc] = blowup_graph({4, 4}, 1);
  EXPECT_THROW(weighted_separator(WeightedGraph(g, unit(16)), {Kind::PathBlowup, pc, 3}), InvalidInput);
  auto [p, ppc] = blowup_graph({5}, 1);
  EXPECT_THROW(weighted_separator(WeightedGraph(p, unit(5)), {Kind::GridBlowup, pc, 3}), InvalidInput);
  EXPECT_THROW(weighted_separator(WeightedGraph(generate("cycle(20)").graph, unit(20)), {Kind::Tree, {}, 3}),
               InvalidInput);
  EXPECT_THROW(weighted_separator(WeightedGraph(generate("path(20)").graph, unit(20)), {Kind::Tree, {}, 2}),
               InvalidInput);
  EXPECT_THROW(weighted_separator(WeightedGraph(generate("star(30)").graph, unit(31)), {Kind::Tree, {}, 3}),
               InvalidInput);
  EXPECT_THROW(WeightedGraph(p, {1, 1, -1, 1, 1}), InvalidInput);
  EXPECT_THROW(WeightedGraph(p, {1, 1}), InvalidInput);
  (void)ppc;
}

TEST(WeightedSeparator, RandomBlowups) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const int c = 1 + t % 3;
    auto [pg, ppc] = blowup_graph({5 + 3 * t}, c);
    const WeightedGraph pw(pg, random_integer_weights(pg.vertex_count(), rng));
    expect_report_consistent(pw, weighted_separator(pw, {Kind::PathBlowup, ppc, 3}));

    std::vector<int> lens = {3 + t % 5, 2 + t % 7};
    if (t % 3 == 0) lens.push_back(3);
    auto [gg, gpc] = blowup_graph(lens, c);
    const WeightedGraph gw(gg, random_integer_weights(gg.vertex_count(), rng));
    expect_report_consistent(gw, weighted_separator(gw, {Kind::GridBlowup, gpc, 3}));
  }
}

TEST(WeightedSeparator, RandomBoundedDegreeTrees) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 30; ++t) {
    const int delta = 3 + t % 3;
    const int n = 40 + 53 * t;
    const Graph g = generate("random_tree(" + std::to_string(n) + "," + std::to_string(t) + "," +
                             std::to_string(delta) + ")")
                        .graph;
    ASSERT_LE(g.max_degree(), delta);
    const WeightedGraph wg(g, random_integer_weights(n, rng));
    expect_report_consistent(wg, weighted_separator(wg, {Kind::Tree, {}, delta}));
  }
}

TEST(WeightedSeparator, StarNeedsLinearSeparator) {
  // p leaves of weight 1, center of weight p/2, total n = 3p/2: with the
  // center in S the weight is p/2 = n/3; without it the center's component
  // keeps weight >= p/2 = n/3. Every choice of S is covered by (center in or
  // out) x (number j of leaves in S).
  for (int p = 2; p <= 30; p += 2) {
    const double n = 1.5 * p;
    for (int center = 0; center <= 1; ++center) {
      for (int j = 0; j <= p; ++j) {
        const double weight = j + (center ? p / 2.0 : 0);
        const double component = center ? (j < p ? 1 : 0) : p / 2.0 + (p - j);
        EXPECT_FALSE(weight < n / 3 && component < n / 3) << p << " " << center << " " << j;
      }
    }
  }
}

TEST(SeparableTransform, PathInK1TimesPath) {
  const Graph p9 = generate("path(9)").graph;
  auto [j, jpc] = blowup_graph({9}, 1);
  ProductEmbedding e{Graph(1), j, {}, std::nullopt};
  for (Vertex v = 0; v < 9; ++v) e.coords.emplace_back(0, v);
  const auto res = separable_transform(p9, e, structure_provider({Kind::PathBlowup, jpc, 3}));
  EXPECT_TRUE(verify_hpartition(p9, res.partition).valid);
  EXPECT_LE(res.partition.width(), 3);
  ASSERT_GE(res.z_part, 0);
  EXPECT_EQ(res.partition.host.degree(res.z_part), res.partition.host.vertex_count() - 1);
  EXPECT_TRUE(validate_decomposition(res.partition.host, res.host_decomposition).ok());
  EXPECT_LE(res.host_decomposition.width(), 1);
}

TEST(SeparableTransform, CycleInK2TimesPath) {
  const Graph c4 = generate("cycle(4)").graph;
  auto [j, jpc] = blowup_graph({4}, 1);
  ProductEmbedding e{Graph::build(2, {{0, 1}}), j, {{0, 0}, {0, 1}, {1, 1}, {1, 0}}, std::nullopt};
  const auto res = separable_transform(c4, e, structure_provider({Kind::PathBlowup, jpc, 3}));
  auto cert = verify_hpartition(c4, res.partition);
  attach_decomposition(cert, res.partition, res.host_decomposition);
  EXPECT_TRUE(cert.valid);
  EXPECT_LE(res.host_decomposition.width(), 2);
  const double m = weighted_separator(WeightedGraph(j, {2, 2, 0, 0}), {Kind::PathBlowup, jpc, 3}).weight_bound;
  EXPECT_LE(res.partition.width(), m + 1e-9);
}

TEST(SeparableTransform, EmptySeparatorSuppressesZ) {
  const Graph p3 = generate("path(3)").graph;
  ProductEmbedding e{Graph(1), generate("path(3)").graph, {{0, 0}, {0, 1}, {0, 2}}, std::nullopt};
  const auto res = separable_transform(p3, e, [](const WeightedGraph&) { return VertexSet{}; });
  EXPECT_EQ(res.z_part, -1);
  EXPECT_EQ(res.partition.parts, (std::vector<VertexSet>{{0, 1, 2}}));
  EXPECT_EQ(res.partition.host, Graph(1));
}

TEST(SeparableTransform, InvalidEmbedding) {
  const Graph c4 = generate("cycle(4)").graph;
  ProductEmbedding e{Graph(1), generate("path(4)").graph, {{0, 0}, {0, 1}, {0, 2}, {0, 3}}, std::nullopt};
  EXPECT_THROW(separable_transform(c4, e, [](const WeightedGraph&) { return VertexSet{}; }), InvalidInput);
  e.coords = {{0, 0}, {0, 0}, {0, 1}, {0, 2}};
  EXPECT_THROW(separable_transform(c4, e, [](const WeightedGraph&) { return VertexSet{}; }), InvalidInput);
}

TEST(SeparableTransform, GeneratedProductsAndTrees) {
  for (int t = 0; t < 10; ++t) {
    const int rows = 3 + t;
    const auto inst = generate("strong_product(path(" + std::to_string(rows) + "),path(" + std::to_string(2 * rows) + "))");
    auto [j, jpc] = blowup_graph({2 * rows}, 1);
    const Graph h = generate("path(" + std::to_string(rows) + ")").graph;
    ProductEmbedding e{h, j, {}, std::nullopt};
    for (const auto& [x, y] : inst.product_pairs) e.coords.emplace_back(x, y);
    const auto res = separable_transform(inst.graph, e, structure_provider({Kind::PathBlowup, jpc, 3}));
    auto cert = verify_hpartition(inst.graph, res.partition);
    attach_decomposition(cert, res.partition, res.host_decomposition);
    EXPECT_TRUE(cert.valid);
    EXPECT_LE(res.host_decomposition.width(), 2);

    const Graph tree = generate("complete_dary_tree(2," + std::to_string(4 + t % 4) + ")").graph;
    const auto tp = generate("strong_product(path(3),complete_dary_tree(2," + std::to_string(4 + t % 4) + "))");
    ProductEmbedding te{generate("path(3)").graph, tree, {}, std::nullopt};
    for (const auto& [x, y] : tp.product_pairs) te.coords.emplace_back(x, y);
    const auto tres = separable_transform(tp.graph, te, structure_provider({Kind::Tree, {}, 3}));
    auto tcert = verify_hpartition(tp.graph, tres.partition);
    attach_decomposition(tcert, tres.partition, tres.host_decomposition);
    EXPECT_TRUE(tcert.valid);
  }
}
