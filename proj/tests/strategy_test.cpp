#include "fodist/strategy.hpp"

#include <random>

#include <gtest/gtest.h>

#include "fodist/similarity.hpp"
#include "test_support.hpp"

namespace fodist {
namespace {

VertexSet vset(int n, std::initializer_list<int> vs) {
  VertexSet s(static_cast<std::size_t>(n));
  for (int v : vs) s.set(static_cast<std::size_t>(v));
  return s;
}

std::size_t classes_with(const Graph& g, VertexSet x, int u) {
  x.set(static_cast<std::size_t>(u));
  return cx_partition(g, x).classes.size();
}

Transcript play_optimal(const Graph& g, const Graph& h, int cap) {
  OptimalDuplicator dup(g, h, cap);
  return simulate_match(g, h, [&](std::span<const PebblePair> hist, Side s, int v) { return dup.reply(hist, s, v); },
                        cap + 2);
}

bool exception_shape(const Graph& small, const Graph& large) {
  if (small.order() >= large.order()) return false;
  auto p = similarity_partition(small);
  for (const auto& c : p.classes)
    if (c.count() >= 2 && is_isomorphic(oplus(small, static_cast<int>(c.first()), large.order() - small.order()), large))
      return true;
  return false;
}

TEST(CxPartition, Examples) {
  Graph p4 = path_graph(4);
  auto none = cx_partition(p4, p4.empty_set());
  ASSERT_EQ(none.classes.size(), 1U);
  EXPECT_EQ(none.classes[0], p4.full_set());

  auto a = cx_partition(p4, vset(4, {0}));
  ASSERT_EQ(a.classes.size(), 2U);
  EXPECT_EQ(a.classes[0], vset(4, {1}));
  EXPECT_EQ(a.classes[1], vset(4, {2, 3}));
  EXPECT_EQ(a.y, vset(4, {1}));
  EXPECT_EQ(a.z, vset(4, {2, 3}));
  ASSERT_EQ(a.d_classes.size(), 2U);
  EXPECT_EQ(a.d_classes[0], vset(4, {2}));
  EXPECT_EQ(a.d_classes[1], vset(4, {3}));

  auto all = cx_partition(p4, p4.full_set());
  EXPECT_TRUE(all.classes.empty());
  EXPECT_TRUE(all.d_classes.empty());
}

TEST(CMaximalSet, Examples) {
  auto e = c_maximal_set(empty_graph(5));
  EXPECT_TRUE(e.order.empty());
  EXPECT_EQ(e.state.classes.size(), 1U);

  auto p4 = c_maximal_set(path_graph(4));
  EXPECT_EQ(p4.order, std::vector<int>{0});
  EXPECT_EQ(p4.state.classes.size(), 2U);

  // The centre leaves one class; a leaf splits off the centre.
  auto star = c_maximal_set(complete_bipartite(1, 3));
  EXPECT_EQ(classes_with(complete_bipartite(1, 3), VertexSet(4), 0), 1U);
  EXPECT_EQ(star.order, std::vector<int>{1});
  EXPECT_EQ(star.state.classes.size(), 2U);
}

TEST(CMaximalSet, PropertiesExhaustively) {
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : graph_catalogue(n)) {
      auto cm = c_maximal_set(g);
      const auto& st = cm.state;
      const std::size_t size = cm.order.size();
      ASSERT_EQ(st.x.count(), size);
      ASSERT_GE(st.classes.size(), size + 1) << write_graph6(g);
      ASSERT_LE(2 * static_cast<int>(size), n - 1) << write_graph6(g);
      for (int u = 0; u < n; ++u)
        if (!st.x.test(static_cast<std::size_t>(u))) ASSERT_LE(classes_with(g, st.x, u), st.classes.size());

      std::vector<VertexSet> big;
      for (const auto& c : st.classes) {
        ASSERT_TRUE(is_clique(g, c) || is_independent(g, c)) << write_graph6(g);
        if (c.count() >= 2) big.push_back(c);
      }
      for (std::size_t i = 0; i < big.size(); ++i) {
        for (std::size_t j = i + 1; j < big.size(); ++j) {
          std::size_t edges = 0;
          for (int u : big[i].members())
            for (int v : big[j].members()) edges += g.adjacent(u, v) ? 1 : 0;
          ASSERT_TRUE(edges == 0 || edges == big[i].count() * big[j].count()) << write_graph6(g);
        }
      }

      auto sim = similarity_partition(g);
      for (const auto& d : st.d_classes) {
        const int cls = sim.class_of[d.first()];
        for (int v : d.members()) ASSERT_EQ(sim.class_of[v], cls) << write_graph6(g);
      }
      VertexSet cover = st.x | st.y | st.z;
      ASSERT_EQ(cover, g.full_set());
      ASSERT_FALSE(st.y.intersects(st.z));
    }
  }
}

TEST(PhiMatch, Examples) {
  Graph p4 = path_graph(4);
  auto st = cx_partition(p4, vset(4, {0}));
  std::vector<PebblePair> id{{0, 0}};
  auto m = phi_match(p4, st, p4, st, id);
  EXPECT_EQ(m.defect, PhiMatch::Defect::None);
  EXPECT_EQ(m.counterpart, (std::vector<int>{0, 1}));
  EXPECT_TRUE(m.unequal_sizes.empty());

  Graph a = disjoint_union(complete_graph(2), empty_graph(2));
  Graph b = disjoint_union(complete_graph(3), empty_graph(1));
  auto ma = phi_match(a, cx_partition(a, a.empty_set()), b, cx_partition(b, b.empty_set()), {});
  EXPECT_EQ(ma.defect, PhiMatch::Defect::None);
  EXPECT_EQ(ma.counterpart, std::vector<int>{0});

  Graph star = complete_bipartite(1, 3);
  Graph small = disjoint_union(complete_bipartite(1, 2), empty_graph(1));
  std::vector<PebblePair> centres{{0, 0}};
  auto ms = phi_match(star, cx_partition(star, vset(4, {0})), small, cx_partition(small, vset(4, {0})), centres);
  EXPECT_EQ(ms.unequal_sizes, std::vector<int>{0});
  EXPECT_EQ(ms.defect, PhiMatch::Defect::Unmatched);
  EXPECT_EQ(ms.defect_side, Side::H);

  std::vector<PebblePair> bad{{0, 0}, {1, 3}};
  EXPECT_THROW(phi_match(star, cx_partition(star, vset(4, {0, 1})), small, cx_partition(small, vset(4, {0, 3})), bad),
               std::invalid_argument);
}

TEST(SpoilerPlan, Examples) {
  Graph a = disjoint_union(complete_graph(2), empty_graph(2));
  Graph b = disjoint_union(complete_graph(3), empty_graph(1));
  auto t = play_optimal(a, b, 3);
  EXPECT_TRUE(t.spoiler_won);
  EXPECT_LE(t.rounds, 3);

  Graph e4 = empty_graph(4);
  Graph p2e2 = disjoint_union(complete_graph(2), empty_graph(2));
  auto t2 = play_optimal(e4, p2e2, 3);
  EXPECT_TRUE(t2.spoiler_won);
  EXPECT_LE(t2.rounds, 3);

  EXPECT_THROW(SpoilerPlan(empty_graph(4), empty_graph(5)), std::invalid_argument);
  EXPECT_THROW(SpoilerPlan(path_graph(4), path_graph(4)), IsomorphicInputError);
}

TEST(SimulateMatch, IsomorphismPlayingDuplicatorSurvives) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Graph g = testing_support::random_graph(n, 0.5, rng);
    auto perm = testing_support::random_permutation(n, rng);
    Graph h = permute(g, perm);
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    auto iso = [&](std::span<const PebblePair>, Side s, int v) {
      return s == Side::G ? perm[static_cast<std::size_t>(v)] : inv[static_cast<std::size_t>(v)];
    };
    auto t = simulate_match(g, h, iso, 10);
    EXPECT_FALSE(t.spoiler_won);
    for (const auto& r : t.moves) EXPECT_TRUE(r.alive);
  }
}

TEST(SimulateMatch, RandomDuplicatorOnTriangleVersusPath) {
  Graph k3 = complete_graph(3);
  Graph p3 = path_graph(3);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    auto random_reply = [&](std::span<const PebblePair>, Side s, int) {
      return static_cast<int>(rng() % static_cast<std::uint64_t>(s == Side::G ? p3.order() : k3.order()));
    };
    auto t = simulate_match(k3, p3, random_reply, 10);
    EXPECT_TRUE(t.spoiler_won);
    EXPECT_LE(t.rounds, 2);
  }
}

TEST(SpoilerPlan, WinsAgainstOptimalDuplicatorSameOrder) {
  for (int n = 2; n <= 6; ++n) {
    const int bound = (n + 3) / 2;
    for (const auto& [g, h] : testing_support::same_order_pairs(n)) {
      auto t = play_optimal(g, h, bound);
      ASSERT_TRUE(t.spoiler_won) << write_graph6(g) << " " << write_graph6(h);
      ASSERT_LE(t.rounds, bound) << write_graph6(g) << " " << write_graph6(h);
      ASSERT_LE(t.alternations, 1) << write_graph6(g) << " " << write_graph6(h);
      SpoilerPlan plan(g, h);
      ASSERT_LE(t.rounds, plan.predicted_rounds()) << write_graph6(g) << " " << write_graph6(h);
    }
  }
}

TEST(SpoilerPlan, WinsAgainstOptimalDuplicatorUnequalOrder) {
  for (int n = 1; n <= 5; ++n) {
    const int bound = (n + 5) / 2;
    for (int m = n + 1; m <= std::min(n + 2, 6); ++m) {
      for (const auto& g : graph_catalogue(n)) {
        for (const auto& h : graph_catalogue(m)) {
          if (exception_shape(g, h)) {
            EXPECT_THROW(SpoilerPlan(g, h), std::invalid_argument);
            continue;
          }
          auto t = play_optimal(g, h, bound);
          ASSERT_TRUE(t.spoiler_won) << write_graph6(g) << " " << write_graph6(h);
          ASSERT_LE(t.rounds, bound) << write_graph6(g) << " " << write_graph6(h);
          ASSERT_LE(t.alternations, 1);
          auto swapped = play_optimal(h, g, bound);
          ASSERT_TRUE(swapped.spoiler_won) << write_graph6(h) << " " << write_graph6(g);
          ASSERT_LE(swapped.rounds, bound);
        }
      }
    }
  }
}

}  // namespace
}  // namespace fodist
