#include <gtest/gtest.h>

#include "efx/errors.hpp"
#include "efx/fixtures.hpp"
#include "efx/oracle.hpp"
#include "naive.hpp"

namespace {

using efx::Allocation;
using efx::GoodSet;

efx::OracleOptions with_list(efx::OracleOrder order = efx::OracleOrder::Base) {
  efx::OracleOptions o;
  o.keep_list = true;
  o.order = order;
  return o;
}

TEST(Oracle, Table1Total) {
  const auto report = efx::enumerate_efx(efx::table1_instance());
  EXPECT_EQ(report.total, 2187u);
  EXPECT_EQ(report.agents, 3u);
  EXPECT_EQ(report.goods, 7u);
  std::uint64_t expected = 0;
  for (const auto& x : naive::all_complete(3, 7)) expected += naive::is_efx(efx::table1_instance(), x, false);
  EXPECT_EQ(report.efx_count, expected);
}

TEST(Oracle, IntroEfxSet) {
  const auto inst = efx::intro_instance();
  const auto report = efx::enumerate_efx(inst, with_list());
  EXPECT_EQ(report.total, 8u);
  ASSERT_EQ(report.efx_list.size(), 2u);
  EXPECT_EQ(report.efx_list[0].bundles, (std::vector<GoodSet>{GoodSet(3, {0, 1}), GoodSet(3, {2})}));
  EXPECT_EQ(report.efx_list[1].bundles, (std::vector<GoodSet>{GoodSet(3, {2}), GoodSet(3, {0, 1})}));
  for (const auto& x : report.efx_list) {
    EXPECT_TRUE(x.is_complete());
    EXPECT_TRUE(naive::is_efx(inst, x, false));
  }
}

TEST(Oracle, MaxNashIntro) {
  const auto best = efx::max_nash_efx(efx::intro_instance());
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->first, 4);
  EXPECT_EQ(best->second.bundles, (std::vector<GoodSet>{GoodSet(3, {0, 1}), GoodSet(3, {2})}));
}

TEST(Oracle, MaxNashZeroWhenSomeoneValuesNothing) {
  const auto inst = efx::parse_instance_text(R"({"agents": 2, "goods": ["a"], "values": [[1], [0]]})");
  const auto best = efx::max_nash_efx(inst);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(best->first, 0);
}

TEST(Oracle, NoGoodsHasOneAllocation) {
  const auto inst = efx::parse_instance_text(R"({"agents": 3, "goods": [], "values": [[], [], []]})");
  const auto report = efx::enumerate_efx(inst);
  EXPECT_EQ(report.total, 1u);
  EXPECT_EQ(report.efx_count, 1u);
  EXPECT_EQ(report.best_nash, 0);
}

TEST(Oracle, Table1PartialHasNoDominator) {
  EXPECT_EQ(efx::exists_pareto_dominator(efx::table1_instance(), efx::table1_partial()), std::nullopt);
}

TEST(Oracle, EmptyAllocationIsDominated) {
  const auto inst = efx::intro_instance();
  const auto witness = efx::exists_pareto_dominator(inst, Allocation::empty(2, 3));
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(witness->bundles, (std::vector<GoodSet>{GoodSet(3, {0, 1}), GoodSet(3, {2})}));
}

class RandomOracle : public ::testing::TestWithParam<int> {};

// Nested loops over every complete allocation, written independently.
TEST_P(RandomOracle, AgreesWithNaiveDoubleLoop) {
  const int seed = GetParam();
  const std::size_t m = 1 + static_cast<std::size_t>(seed) % 6;
  const auto inst = efx::random_instance(static_cast<std::uint64_t>(seed) * 31, 3, m, seed % 2 ? 2 : 12);
  for (const auto order : {efx::OracleOrder::Base, efx::OracleOrder::Perturbed}) {
    const bool perturbed = order == efx::OracleOrder::Perturbed;
    const auto report = efx::enumerate_efx(inst, with_list(order));
    std::vector<Allocation> expected;
    std::optional<efx::Rational> best;
    for (const auto& x : naive::all_complete(3, m)) {
      if (!naive::is_efx(inst, x, perturbed)) continue;
      expected.push_back(x);
      efx::Rational p = 1;
      for (std::size_t i = 0; i < 3; ++i) p *= naive::total(inst, i, x.bundles[i]);
      if (!best || p > *best) best = p;
    }
    EXPECT_EQ(report.efx_list, expected);
    EXPECT_EQ(report.efx_count, expected.size());
    EXPECT_EQ(report.best_nash, best);

    // Dominators: pick a few allocations, partial and complete.
    for (std::size_t k = 0; k < expected.size(); k += 7) {
      Allocation x = expected[k];
      const auto g = x.bundles[0].empty() ? std::nullopt : std::optional<efx::GoodId>(x.bundles[0].first());
      if (g) {
        x.bundles[0].erase(*g);
        x.pool.insert(*g);
      }
      std::optional<Allocation> first;
      for (const auto& y : expected) {
        bool strict = false;
        bool weak = true;
        for (std::size_t i = 0; i < 3; ++i) {
          const int c = naive::compare(inst, i, y.bundles[i], x.bundles[i], perturbed);
          weak = weak && c >= 0;
          strict = strict || c > 0;
        }
        if (weak && strict) {
          first = y;
          break;
        }
      }
      efx::OracleOptions o;
      o.order = order;
      EXPECT_EQ(efx::exists_pareto_dominator(inst, x, o), first);
    }
  }
}

TEST_P(RandomOracle, PerturbedEfxImpliesBaseEfx) {
  const int seed = GetParam();
  const auto inst = efx::random_instance(static_cast<std::uint64_t>(seed), 3, 5, 3);
  const auto base = efx::enumerate_efx(inst, with_list(efx::OracleOrder::Base));
  const auto pert = efx::enumerate_efx(inst, with_list(efx::OracleOrder::Perturbed));
  EXPECT_LE(pert.efx_count, base.efx_count);
  for (const auto& x : pert.efx_list) {
    EXPECT_NE(std::find(base.efx_list.begin(), base.efx_list.end(), x), base.efx_list.end());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomOracle, ::testing::Range(1, 25));

TEST(Oracle, EnumerationOrderIsCartesianProduct) {
  for (std::size_t agents = 1; agents <= 3; ++agents) {
    for (std::size_t m = 0; m <= 3; ++m) {
      efx::Instance inst;
      inst.num_agents = agents;
      for (std::size_t g = 0; g < m; ++g) inst.goods.push_back("g" + std::to_string(g + 1));
      inst.values.assign(agents, std::vector<efx::Rational>(m, efx::Rational(1)));
      std::vector<Allocation> seen;
      efx::for_each_complete(inst, 16, [&](const std::vector<std::uint64_t>& masks) {
        seen.push_back(efx::allocation_from_masks(masks, m));
        return true;
      });
      EXPECT_EQ(seen, naive::all_complete(agents, m)) << agents << " agents, " << m << " goods";
    }
  }
}

TEST(Oracle, VisitorCanStopEarly) {
  int calls = 0;
  efx::for_each_complete(efx::table1_instance(), 16, [&](const std::vector<std::uint64_t>&) {
    return ++calls < 5;
  });
  EXPECT_EQ(calls, 5);
}

TEST(Oracle, MaskConversionRoundTrips) {
  const auto x = efx::table1_partial();
  const auto masks = efx::masks_from_allocation(x);
  EXPECT_EQ(masks, (std::vector<std::uint64_t>{0b0001110, 0b0010001, 0b0100000}));
  const auto y = efx::allocation_from_masks(masks, 7);
  EXPECT_EQ(y, x);
}

TEST(Oracle, ReportJsonIsStable) {
  const auto inst = efx::intro_instance();
  const auto a = efx::report_to_json(inst, efx::enumerate_efx(inst, with_list()), efx::rational_to_json);
  const auto b = efx::report_to_json(inst, efx::enumerate_efx(inst, with_list()), efx::rational_to_json);
  EXPECT_EQ(a.dump(2), b.dump(2));
  EXPECT_EQ(a["total"], 8);
  EXPECT_EQ(a["efx_count"], 2);
  EXPECT_EQ(a["efx_allocations"].size(), 2u);
  EXPECT_EQ(a["max_nash"]["product"], 4);
  EXPECT_EQ(a["max_nash"]["witness"]["bundles"], nlohmann::json::parse(R"([["g1","g2"],["g3"]])"));
  const auto none = efx::report_to_json(inst, efx::enumerate_efx(inst), efx::rational_to_json);
  EXPECT_FALSE(none.contains("efx_allocations"));
}

TEST(Oracle, Guard) {
  EXPECT_NO_THROW(efx::check_guard(16, efx::kDefaultMaxGoods));
  EXPECT_THROW(efx::check_guard(17, efx::kDefaultMaxGoods), efx::InputError);
  EXPECT_NO_THROW(efx::check_guard(17, 20));
  EXPECT_THROW(efx::check_guard(63, 100), efx::InputError);
  const auto big = efx::random_instance(1, 3, 17, 5);
  EXPECT_THROW(efx::enumerate_efx(big), efx::InputError);
  EXPECT_THROW(efx::exists_pareto_dominator(big, Allocation::empty(3, 17)), efx::InputError);
}

TEST(Certify, RandomInstancesPass) {
  for (int seed = 1; seed <= 40; ++seed) {
    const auto inst = efx::random_instance(static_cast<std::uint64_t>(seed), 3, 1 + seed % 7, 10);
    const auto cert = efx::certify_solver(inst);
    EXPECT_TRUE(cert.pass) << seed << ": " << (cert.failures.empty() ? "" : cert.failures.front());
  }
}

}  // namespace
