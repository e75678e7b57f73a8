#include "fodist/wl.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fodist/solver.hpp"
#include "test_support.hpp"

namespace fodist {
namespace {

using testing_support::random_graph;
using testing_support::random_permutation;

std::size_t tuple_index(std::span<const int> t, int n) {
  std::size_t idx = 0;
  for (int u : t) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(u);
  return idx;
}

std::size_t power(int n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= static_cast<std::size_t>(n);
  return p;
}

TEST(Isotype, Examples) {
  Graph k3 = complete_graph(3);
  std::vector<int> same{1, 1, 1};
  auto t = isotype(k3, same);
  EXPECT_EQ(t.s, 1);
  EXPECT_EQ(t.f, (std::vector<int>{1, 1, 1}));
  EXPECT_FALSE(t.edge(0, 0));

  std::vector<int> pair{0, 2};
  auto e = isotype(k3, pair);
  EXPECT_EQ(e.s, 2);
  EXPECT_EQ(e.f, (std::vector<int>{1, 2}));
  EXPECT_TRUE(e.edge(0, 1));
  EXPECT_TRUE(e.edge(1, 0));

  std::vector<int> back{2, 0, 2};
  auto b = isotype(k3, back);
  EXPECT_EQ(b.f, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(b.key(), (std::vector<int>{1, 2, 1, 1}));
}

TEST(Isotype, InvariantsOnRandomTuples) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    Graph g = random_graph(n, 0.5, rng);
    std::vector<int> t(1 + rng() % 4);
    for (auto& u : t) u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    auto it = isotype(g, t);
    ASSERT_EQ(it.f[0], 1);
    for (std::size_t i = 1; i < it.f.size(); ++i) {
      int seen = *std::max_element(it.f.begin(), it.f.begin() + static_cast<std::ptrdiff_t>(i));
      ASSERT_LE(it.f[i], seen + 1);
    }
    for (int i = 0; i < it.s; ++i) {
      ASSERT_FALSE(it.edge(i, i));
      for (int j = 0; j < it.s; ++j) ASSERT_EQ(it.edge(i, j), it.edge(j, i));
    }
  }
}

TEST(WlRefine, SeparatesEdgeFromNonEdgeAtDimensionTwo) {
  Graph k2 = complete_graph(2);
  Graph e2 = empty_graph(2);
  Coloring c0 = wl_initial(k2, e2, 2);
  EXPECT_EQ(c0.g[0], c0.h[0]);
  Coloring c1 = wl_refine_step(k2, e2, c0, WlVariant::Set);
  EXPECT_NE(c1.g[0], c1.h[0]);
  EXPECT_NE(c1.g[3], c1.h[3]);
  EXPECT_EQ(wl_iso_test(k2, e2, 2), WlVerdict::NonIsomorphic);
  EXPECT_EQ(wl_iso_test(k2, e2, 1), WlVerdict::Isomorphic);
  EXPECT_THROW(wl_refine_step(k2, complete_graph(3), c0, WlVariant::Set), std::invalid_argument);
}

TEST(WlRefine, DimensionOneStaysUniform) {
  std::mt19937_64 rng(8);
  Graph g = random_graph(6, 0.5, rng);
  Graph h = random_graph(6, 0.3, rng);
  auto st = wl_stabilize(g, h, 1, WlVariant::Multiset);
  EXPECT_EQ(st.steps, 0);
  EXPECT_EQ(st.coloring.classes, 1U);
}

TEST(WlStabilize, Examples) {
  auto one = wl_stabilize(Graph(1), Graph(1), 1);
  EXPECT_LT(one.steps, 2);
  auto two = wl_stabilize(complete_graph(2), empty_graph(2), 2);
  EXPECT_LT(two.steps, 8);
  Coloring again = wl_refine_step(complete_graph(2), empty_graph(2), two.coloring, WlVariant::Set);
  EXPECT_EQ(again.g, two.coloring.g);
  EXPECT_EQ(again.h, two.coloring.h);
}

TEST(WlStabilize, PermutedCopiesCorrespondAtEveryStep) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const int k = 1 + static_cast<int>(rng() % 3);
    const WlVariant var = trial % 2 ? WlVariant::Multiset : WlVariant::Set;
    Graph g = random_graph(n, 0.4, rng);
    auto perm = random_permutation(n, rng);
    Graph h = permute(g, perm);
    Coloring c = wl_initial(g, h, k);
    for (int step = 0; step < 4; ++step) {
      for (std::size_t idx = 0; idx < power(n, k); ++idx) {
        std::vector<int> t(static_cast<std::size_t>(k));
        std::size_t rest = idx;
        for (int i = k - 1; i >= 0; --i) {
          t[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
          rest /= static_cast<std::size_t>(n);
        }
        std::vector<int> mapped;
        for (int u : t) mapped.push_back(perm[static_cast<std::size_t>(u)]);
        ASSERT_EQ(c.g[idx], c.h[tuple_index(mapped, n)]);
      }
      c = wl_refine_step(g, h, c, var);
    }
    EXPECT_EQ(wl_iso_test(g, h, k, var), WlVerdict::Isomorphic);
    auto st = wl_stabilize(g, h, k, var);
    EXPECT_LT(static_cast<std::size_t>(st.steps), 2 * power(n, k));
  }
}

TEST(WlStabilize, RefinesMonotonically) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(6, 0.5, rng);
    Graph h = random_graph(6, 0.5, rng);
    Coloring prev = wl_initial(g, h, 2);
    for (int step = 0; step < 5; ++step) {
      Coloring next = wl_refine_step(g, h, prev, WlVariant::Set);
      // Same new id implies same old id.
      std::vector<std::int64_t> parent(next.classes, -1);
      auto check = [&](const std::vector<std::uint32_t>& nc, const std::vector<std::uint32_t>& pc) {
        for (std::size_t i = 0; i < nc.size(); ++i) {
          if (parent[nc[i]] < 0) parent[nc[i]] = pc[i];
          ASSERT_EQ(parent[nc[i]], static_cast<std::int64_t>(pc[i]));
        }
      };
      check(next.g, prev.g);
      check(next.h, prev.h);
      prev = std::move(next);
    }
  }
}

TEST(WlCanonicalForm, Examples) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Graph g = random_graph(n, 0.5, rng);
    Graph h = permute(g, random_permutation(n, rng));
    auto a = wl_canonical_form(g, 2);
    auto b = wl_canonical_form(h, 2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.serialize(), b.serialize());
  }
  EXPECT_NE(wl_canonical_form(complete_graph(3), 2), wl_canonical_form(path_graph(3), 2));
  auto single = wl_canonical_form(Graph(1), 1);
  EXPECT_EQ(single.steps, 1);
  EXPECT_EQ(single.tables.size(), 2U);
}

TEST(WlOptimalDimension, Examples) {
  EXPECT_EQ(wl_optimal_dimension(complete_graph(2), empty_graph(2)), 2);
  Graph a = disjoint_union(complete_graph(2), empty_graph(2));
  Graph b = disjoint_union(complete_graph(3), empty_graph(1));
  EXPECT_EQ(wl_optimal_dimension(a, b), 2);
  EXPECT_EQ(pebble_V(a, b), 2);
  EXPECT_THROW(wl_optimal_dimension(path_graph(4), path_graph(4)), IsomorphicInputError);
  EXPECT_THROW(wl_optimal_dimension(path_graph(4), path_graph(3)), std::invalid_argument);
}

TEST(WlOptimalDimension, MatchesPebbleNumberUpToOrderFour) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& [g, h] : testing_support::same_order_pairs(n)) {
      const int k = wl_optimal_dimension(g, h);
      EXPECT_LE(k, wl_dimension_cap(n));
      EXPECT_EQ(k, std::max(pebble_V(g, h) - 1, 2)) << write_graph6(g) << " " << write_graph6(h);
    }
  }
}

TEST(WlIsoTest, SeparationIsSoundAndMultisetDominates) {
  for (int n = 2; n <= 5; ++n) {
    const auto& cat = graph_catalogue(n);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      for (std::size_t j = i; j < cat.size(); ++j) {
        for (int k = 1; k <= 3; ++k) {
          const auto set = wl_iso_test(cat[i], cat[j], k, WlVariant::Set);
          const auto multi = wl_iso_test(cat[i], cat[j], k, WlVariant::Multiset);
          if (i == j) {
            ASSERT_EQ(set, WlVerdict::Isomorphic);
            ASSERT_EQ(multi, WlVerdict::Isomorphic);
          }
          if (set == WlVerdict::NonIsomorphic) ASSERT_EQ(multi, WlVerdict::NonIsomorphic);
        }
      }
    }
  }
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 3);
    Graph g = random_graph(n, 0.5, rng);
    Graph h = rng() % 4 == 0 ? permute(g, random_permutation(n, rng)) : random_graph(n, 0.5, rng);
    const int k = 1 + static_cast<int>(rng() % 3);
    const auto set = wl_iso_test(g, h, k, WlVariant::Set);
    const auto multi = wl_iso_test(g, h, k, WlVariant::Multiset);
    if (multi == WlVerdict::NonIsomorphic) ASSERT_FALSE(is_isomorphic(g, h));
    if (set == WlVerdict::NonIsomorphic) ASSERT_EQ(multi, WlVerdict::NonIsomorphic);
  }
}

}  // namespace
}  // namespace fodist
