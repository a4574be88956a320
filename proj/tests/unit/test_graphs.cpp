#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <random>

#include "efx/errors.hpp"
#include "efx/fixtures.hpp"
#include "efx/graphs.hpp"
#include "naive.hpp"

namespace {

using efx::Allocation;
using efx::GoodSet;

// Smallest subset of s that i strictly prefers to X_i, by brute force.
std::optional<std::size_t> naive_kappa(const efx::Instance& inst, const Allocation& x, std::size_t i,
                                       const GoodSet& s) {
  std::optional<std::size_t> best;
  for (const auto& t : naive::subsets(s)) {
    if (naive::compare(inst, i, t, x.bundles[i], true) > 0 && (!best || t.size() < *best)) best = t.size();
  }
  return best;
}

std::vector<std::size_t> naive_most_envious(const efx::Instance& inst, const Allocation& x, const GoodSet& s) {
  std::optional<std::size_t> low;
  for (std::size_t i = 0; i < x.bundles.size(); ++i) {
    const auto k = naive_kappa(inst, x, i, s);
    if (k && (!low || *k < *low)) low = k;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.bundles.size(); ++i) {
    if (low && naive_kappa(inst, x, i, s) == low) out.push_back(i);
  }
  return out;
}

// Random partial allocation: every good goes to one of the agents or the pool.
Allocation random_partial(std::mt19937_64& rng, std::size_t agents, std::size_t goods) {
  Allocation x = Allocation::empty(agents, goods);
  std::uniform_int_distribution<std::size_t> owner(0, agents);
  for (std::size_t g = 0; g < goods; ++g) {
    const auto o = owner(rng);
    if (o == agents) continue;
    x.bundles[o].insert(g);
    x.pool.erase(g);
  }
  return x;
}

TEST(EnvyGraph, Table1Partial) {
  const auto inst = efx::table1_instance();
  const auto g = efx::envy_graph(inst, efx::table1_partial());
  EXPECT_EQ(g.edges(), (std::vector<std::pair<efx::AgentId, efx::AgentId>>{{0, 2}}));
  EXPECT_EQ(g.sources(), (std::vector<efx::AgentId>{0, 1}));
  EXPECT_TRUE(g.is_acyclic());
}

TEST(Kappa, Table1FirstBundlePlusG7) {
  const auto inst = efx::table1_instance();
  const auto x = efx::table1_partial();
  const GoodSet s = x.bundles[0].with(6);
  EXPECT_EQ(efx::kappa(inst, x, 1, s), 3u);
  EXPECT_EQ(efx::kappa(inst, x, 2, s), std::nullopt);
  EXPECT_EQ(efx::kappa(inst, x, 0, s), 4u);
  EXPECT_EQ(efx::most_envious(inst, x, s), (std::vector<efx::AgentId>{1}));
}

TEST(Champions, Table1FormsThreeCycle) {
  const auto inst = efx::table1_instance();
  const auto m = efx::champion_graph(inst, efx::table1_partial(), 6);
  EXPECT_EQ(m.good, 6u);
  EXPECT_TRUE(m.has_edge(1, 0));
  EXPECT_TRUE(m.has_edge(2, 1));
  EXPECT_TRUE(m.has_edge(0, 2));
  EXPECT_EQ(m.edges().size(), 3u);
  EXPECT_FALSE(m.self_champions(0));
}

TEST(Champions, Table1Cut) {
  const auto inst = efx::table1_instance();
  const auto cut = efx::champion_cut(inst, efx::table1_partial(), 1, 0, 6);
  EXPECT_EQ(cut.lower, GoodSet(7, {1}));
  EXPECT_EQ(cut.upper, GoodSet(7, {2, 3, 6}));
  EXPECT_THROW(efx::champion_cut(inst, efx::table1_partial(), 0, 1, 6), efx::ContractError);
}

TEST(Digraph, CycleAndPath) {
  efx::AgentDigraph d(4);
  d.add_edge(0, 1);
  d.add_edge(1, 2);
  d.add_edge(2, 3);
  EXPECT_TRUE(d.is_acyclic());
  EXPECT_EQ(d.path(0, 3), (std::vector<efx::AgentId>{0, 1, 2, 3}));
  EXPECT_EQ(d.path(2, 2), (std::vector<efx::AgentId>{2}));
  EXPECT_EQ(d.path(3, 0), std::nullopt);
  d.add_edge(0, 3);
  EXPECT_EQ(d.path(0, 3), (std::vector<efx::AgentId>{0, 3}));
  d.add_edge(3, 1);
  const auto cycle = d.find_cycle();
  ASSERT_TRUE(cycle.has_value());
  EXPECT_EQ(*cycle, (std::vector<efx::AgentId>{1, 2, 3}));
  efx::AgentDigraph loop(2);
  loop.add_edge(1, 1);
  EXPECT_EQ(loop.find_cycle(), (std::vector<efx::AgentId>{1}));
}

TEST(CycleElimination, TwoAgentSwap) {
  const auto inst = efx::parse_instance_text(R"({"agents": 2, "goods": ["a", "b"], "values": [[1, 0], [0, 1]]})");
  Allocation x = Allocation::empty(2, 2);
  x.bundles[0].insert(1);
  x.bundles[1].insert(0);
  x.pool = GoodSet(2);
  const auto out = efx::eliminate_envy_cycles_counted(inst, x);
  EXPECT_EQ(out.rotations, 1u);
  EXPECT_EQ(out.result.bundles[0], GoodSet(2, {0}));
  EXPECT_EQ(out.result.bundles[1], GoodSet(2, {1}));
  EXPECT_TRUE(efx::is_envy_free(inst, out.result));
}

class RandomStates : public ::testing::TestWithParam<int> {};

TEST_P(RandomStates, KappaChampionsAndCutsMatchBruteForce) {
  const int seed = GetParam();
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  const std::size_t m = 2 + static_cast<std::size_t>(seed) % 5;
  const auto inst = efx::random_instance(static_cast<std::uint64_t>(seed), 3, m, seed % 3 ? 9 : 2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_partial(rng, 3, m);
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(efx::kappa(inst, x, i, x.bundles[j]), naive_kappa(inst, x, i, x.bundles[j]));
      }
    }
    for (const efx::GoodId g : x.pool.members()) {
      const auto champ = efx::champion_graph(inst, x, g);
      for (std::size_t j = 0; j < 3; ++j) {
        const GoodSet s = x.bundles[j].with(g);
        const auto expected = naive_most_envious(inst, x, s);
        EXPECT_EQ(efx::most_envious(inst, x, s), expected);
        for (std::size_t i = 0; i < 3; ++i) {
          const bool is_champ = std::find(expected.begin(), expected.end(), i) != expected.end();
          EXPECT_EQ(champ.has_edge(i, j), is_champ);
          if (!is_champ) {
            EXPECT_THROW(efx::champion_cut(inst, x, i, j, g), efx::ContractError);
            continue;
          }
          // The upper half is i's best subset of size kappa.
          const auto k = *naive_kappa(inst, x, i, s);
          std::optional<GoodSet> best;
          for (const auto& t : naive::subsets(s)) {
            if (t.size() == k && (!best || naive::compare(inst, i, t, *best, true) > 0)) best = t;
          }
          const auto cut = efx::champion_cut(inst, x, i, j, g);
          EXPECT_EQ(cut.upper, *best);
          EXPECT_EQ(cut.lower, s - *best);
          EXPECT_GT(naive::compare(inst, i, cut.upper, x.bundles[i], true), 0);
          for (const efx::GoodId h : cut.upper.members()) {
            EXPECT_LE(naive::compare(inst, i, cut.upper.without(h), x.bundles[i], true), 0);
          }
        }
      }
    }
  }
}

TEST_P(RandomStates, CycleEliminationKeepsBundlesAndEfx) {
  const int seed = GetParam();
  const std::size_t m = 1 + static_cast<std::size_t>(seed) % 5;
  const auto inst = efx::random_instance(static_cast<std::uint64_t>(seed) + 100, 3, m, 6);
  for (const auto& x : naive::all_complete(3, m)) {
    const auto y = efx::eliminate_envy_cycles(inst, x);
    EXPECT_TRUE(efx::envy_graph(inst, y).is_acyclic());
    auto before = x.bundles;
    auto after = y.bundles;
    auto by_key = [](const GoodSet& a, const GoodSet& b) { return naive::key(a) < naive::key(b); };
    std::sort(before.begin(), before.end(), by_key);
    std::sort(after.begin(), after.end(), by_key);
    EXPECT_EQ(before, after);
    EXPECT_EQ(y.pool, x.pool);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(naive::compare(inst, i, y.bundles[i], x.bundles[i], true), 0);
    }
    if (naive::is_efx(inst, x, true)) EXPECT_TRUE(naive::is_efx(inst, y, true));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomStates, ::testing::Range(1, 31));

}  // namespace
