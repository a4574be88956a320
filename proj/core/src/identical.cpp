#include "efx/errors.hpp"
#include "efx/solver.hpp"

namespace efx {

// Start from a round-robin allocation; while some agent strongly envies
// another, move the envied bundle's least valuable good to the poorest agent.
// Every move raises the sorted vector of bundle values lexicographically.
Allocation solve_identical(const Instance& inst) {
  validate(inst);
  for (AgentId i = 1; i < inst.num_agents; ++i) {
    if (inst.values[i] != inst.values[0]) throw InputError("valuations are not identical");
  }
  const std::size_t n = inst.num_agents;
  Allocation x = Allocation::empty(n, inst.num_goods());
  for (GoodId g = 0; g < inst.num_goods(); ++g) {
    x.bundles[g % n].insert(g);
    x.pool.erase(g);
  }

  auto val = [&](const GoodSet& s) { return value(inst, 0, s); };
  for (;;) {
    AgentId poorest = 0;
    for (AgentId i = 1; i < n; ++i) {
      if (val(x.bundles[i]) < val(x.bundles[poorest])) poorest = i;
    }
    bool moved = false;
    for (AgentId j = 0; j < n && !moved; ++j) {
      if (j == poorest || x.bundles[j].empty()) continue;
      const GoodId cheapest = goods_descending(inst, 0, x.bundles[j]).back();
      if (val(x.bundles[j].without(cheapest)) > val(x.bundles[poorest])) {
        x.bundles[j].erase(cheapest);
        x.bundles[poorest].insert(cheapest);
        moved = true;
      }
    }
    if (!moved) return x;
  }
}

}  // namespace efx
