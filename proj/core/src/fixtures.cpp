#include "efx/fixtures.hpp"

#include <random>
#include <string>

namespace efx {

namespace {

std::vector<std::string> numbered_goods(std::size_t m) {
  std::vector<std::string> goods;
  for (std::size_t g = 1; g <= m; ++g) goods.push_back("g" + std::to_string(g));
  return goods;
}

Instance from_rows(const std::vector<std::vector<long>>& rows) {
  Instance inst;
  inst.num_agents = rows.size();
  inst.goods = numbered_goods(rows.empty() ? 0 : rows.front().size());
  for (const auto& row : rows) {
    std::vector<Rational> values;
    for (long v : row) values.emplace_back(v);
    inst.values.push_back(std::move(values));
  }
  return inst;
}

Allocation three_bundles(std::size_t goods, const std::vector<std::vector<GoodId>>& bundles) {
  Allocation x = Allocation::empty(bundles.size(), goods);
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    for (GoodId g : bundles[i]) {
      x.bundles[i].insert(g);
      x.pool.erase(g);
    }
  }
  return x;
}

}  // namespace

Instance table1_instance() {
  return from_rows({
      {8, 2, 12, 2, 0, 17, 1},
      {5, 0, 9, 4, 10, 0, 3},
      {0, 0, 0, 0, 9, 10, 2},
  });
}

Allocation table1_partial() { return three_bundles(7, {{1, 2, 3}, {0, 4}, {5}}); }

Allocation table2_partial() { return table1_partial(); }

Allocation table2_hat() { return three_bundles(7, {{5}, {2, 3, 6}, {0, 1, 4}}); }

Instance intro_instance() { return from_rows({{1, 1, 2}, {1, 1, 2}}); }

Instance random_instance(std::uint64_t seed, std::size_t agents, std::size_t goods, std::uint64_t max_value) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, max_value);
  Instance inst;
  inst.num_agents = agents;
  inst.goods = numbered_goods(goods);
  inst.values.assign(agents, std::vector<Rational>(goods));
  for (auto& row : inst.values) {
    for (auto& v : row) v = Rational(std::to_string(dist(rng)));
  }
  return inst;
}

Instance random_identical_instance(std::uint64_t seed, std::size_t agents, std::size_t goods,
                                   std::uint64_t max_value) {
  Instance inst = random_instance(seed, 1, goods, max_value);
  inst.num_agents = agents;
  inst.values.assign(agents, inst.values.front());
  return inst;
}

}  // namespace efx
