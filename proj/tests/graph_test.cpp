#include "fodist/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace fodist {
namespace {

TEST(Graph6, DecodesByHand) {
  // n = 5 -> 'D'; ten triangle bits need two 6-bit groups, all zero -> "??".
  Graph g = parse_graph6("D??");
  EXPECT_EQ(g.order(), 5);
  EXPECT_EQ(g.edge_count(), 0U);
  // n = 2 -> 'A'; single bit x(0,1)=1 -> 100000b = 32 -> 95 = '_'.
  Graph k2 = parse_graph6("A_");
  EXPECT_EQ(k2, complete_graph(2));
}

TEST(Graph6, RejectsMalformed) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("D?"), ParseError);    // one group short for n = 5
  EXPECT_THROW(parse_graph6("A "), ParseError);    // byte below 63
  EXPECT_THROW(parse_graph6("A\x7f"), ParseError);  // byte above 126
  EXPECT_THROW(parse_graph6("~??"), ParseError);   // long-form marker, unsupported
  EXPECT_THROW(parse_graph6("A`"), ParseError);    // nonzero padding bit
}

TEST(Graph6, EncodesByHand) {
  EXPECT_EQ(write_graph6(complete_graph(2)), "A_");
  EXPECT_EQ(write_graph6(empty_graph(5)), "D??");
  EXPECT_EQ(write_graph6(Graph(0)), "?");
  EXPECT_THROW(write_graph6(Graph(63)), ResourceLimitError);
}

TEST(Graph6, RoundTripExhaustiveSmallOrders) {
  for (int n = 0; n <= 7; ++n) {
    const int bits = n * (n - 1) / 2;
    // Every labelled graph for n <= 5, a seeded sample for 6 and 7.
    std::mt19937_64 rng(n);
    const std::uint64_t total = std::uint64_t{1} << bits;
    const std::uint64_t samples = n <= 5 ? total : 4096;
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint64_t mask = n <= 5 ? i : rng() & (total - 1);
      Graph g(n);
      int k = 0;
      for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u, ++k)
          if ((mask >> k) & 1U) g.add_edge(u, v);
      Graph back = parse_graph6(write_graph6(g));
      ASSERT_EQ(back, g);
      back.check_invariants();
    }
  }
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = testing_support::random_graph(20 + trial % 43, 0.3, rng);
    ASSERT_EQ(parse_graph6(write_graph6(g)), g);
  }
}

TEST(EdgeList, ParsesAndRejects) {
  Graph g = parse_edge_list("4\n0 1\n2 3\n");
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_EQ(parse_edge_list(write_edge_list(cycle_graph(5))), cycle_graph(5));
  EXPECT_THROW(parse_edge_list(""), ParseError);
  EXPECT_THROW(parse_edge_list("3\n0 3\n"), ParseError);
  EXPECT_THROW(parse_edge_list("3\n1 1\n"), ParseError);
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement(complete_graph(3)), empty_graph(3));
  // P3 a-b-c: pairs ab, bc edges; ac non-edge -> complement is {a,c}, b isolated.
  Graph c = complement(path_graph(3));
  EXPECT_EQ(c.edge_count(), 1U);
  EXPECT_TRUE(c.adjacent(0, 2));
  EXPECT_EQ(c.degree(1), 0);
}

TEST(Complement, InvolutionAndEdgeCount) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = static_cast<int>(rng() % 12);
    Graph g = testing_support::random_graph(n, 0.5, rng);
    EXPECT_EQ(complement(complement(g)), g);
    EXPECT_EQ(g.edge_count() + complement(g).edge_count(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(DisjointUnion, Examples) {
  Graph u = disjoint_union(complete_graph(2), complete_graph(3));
  EXPECT_EQ(u.order(), 5);
  EXPECT_EQ(u.edge_count(), 4U);
  Graph g = cycle_graph(4);
  EXPECT_EQ(disjoint_union(g, Graph(0)), g);
  Graph k2e2 = disjoint_union(complete_graph(2), empty_graph(2));
  EXPECT_EQ(k2e2.order(), 4);
  EXPECT_EQ(k2e2.edge_count(), 1U);
}

TEST(InducedSubgraph, Examples) {
  VertexSet s(4);
  s.set(0);
  s.set(2);
  s.set(3);
  EXPECT_EQ(induced_subgraph(complete_graph(4), s), complete_graph(3));
  Graph p = induced_subgraph(path_graph(4), s);  // a, c, d
  EXPECT_EQ(p.edge_count(), 1U);
  EXPECT_TRUE(p.adjacent(1, 2));
  EXPECT_EQ(induced_subgraph(cycle_graph(5), VertexSet(5)).order(), 0);
}

TEST(Components, Examples) {
  auto comps = connected_components(disjoint_union(complete_graph(2), complete_graph(3)));
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0].count(), 2U);
  EXPECT_EQ(comps[1].count(), 3U);
  EXPECT_EQ(connected_components(empty_graph(4)).size(), 4U);
  EXPECT_EQ(connected_components(cycle_graph(5)).size(), 1U);
}

TEST(Distance, Examples) {
  EXPECT_EQ(distance(path_graph(4), 0, 3), 3);
  EXPECT_EQ(distance(cycle_graph(6), 2, 2), 0);
  Graph two = disjoint_union(complete_graph(2), complete_graph(2));
  EXPECT_EQ(distance(two, 0, 2), std::nullopt);
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(is_isomorphic(cycle_graph(4), complete_bipartite(2, 2)));
  EXPECT_FALSE(is_isomorphic(complete_graph(3), path_graph(3)));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    Graph g = testing_support::random_graph(n, 0.4, rng);
    auto perm = testing_support::random_permutation(n, rng);
    Graph h = permute(g, perm);
    auto map = find_isomorphism(g, h);
    ASSERT_TRUE(map.has_value());
    for (auto [u, v] : g.edges()) EXPECT_TRUE(h.adjacent((*map)[u], (*map)[v]));
  }
}

TEST(Isomorphism, EquivalenceOnSamples) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4;
    Graph a = testing_support::random_graph(n, 0.5, rng);
    Graph b = testing_support::random_graph(n, 0.5, rng);
    Graph c = testing_support::random_graph(n, 0.5, rng);
    EXPECT_TRUE(is_isomorphic(a, a));
    EXPECT_EQ(is_isomorphic(a, b), is_isomorphic(b, a));
    if (is_isomorphic(a, b) && is_isomorphic(b, c)) EXPECT_TRUE(is_isomorphic(a, c));
    // Canonical codes agree with the backtracking oracle.
    EXPECT_EQ(canonical_code(a) == canonical_code(b), is_isomorphic(a, b));
  }
}

TEST(Catalogue, KnownCounts) {
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156, 1044};
  for (int n = 0; n <= 7; ++n) EXPECT_EQ(graph_catalogue(n).size(), expected[n]) << "n=" << n;
  // Pairwise non-isomorphic at n = 5.
  const auto& five = graph_catalogue(5);
  for (std::size_t i = 0; i < five.size(); ++i)
    for (std::size_t j = i + 1; j < five.size(); ++j) EXPECT_FALSE(is_isomorphic(five[i], five[j]));
}

TEST(Regularity, Detects) {
  EXPECT_EQ(regular_degree(complete_graph(4)), 3);
  EXPECT_EQ(regular_degree(cycle_graph(7)), 2);
  EXPECT_EQ(regular_degree(path_graph(3)), std::nullopt);
}

}  // namespace
}  // namespace fodist
