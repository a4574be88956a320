#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/good_set.hpp"
#include "efx/instance.hpp"

namespace efx {

// One bundle per agent plus the unallocated pool. Goods in neither are
// not yet part of the allocation problem (never the case inside the solver).
struct Allocation {
  std::vector<GoodSet> bundles;
  GoodSet pool;

  static Allocation empty(std::size_t agents, std::size_t goods);

  std::size_t num_agents() const { return bundles.size(); }
  GoodSet allocated() const;
  bool is_complete() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// Throws InputError if bundles overlap each other or the pool, or the
// shape does not match (agents, goods).
void validate(const Allocation& x, std::size_t agents, std::size_t goods);

template <class Order>
bool envies(const Order& order, const Allocation& x, AgentId i, AgentId j) {
  return order(i, x.bundles[j], x.bundles[i]) > 0;
}

// i strongly envies j: i prefers X_j minus some good to X_i.
template <class Order>
bool strong_envy(const Order& order, const Allocation& x, AgentId i, AgentId j) {
  for (GoodId g : x.bundles[j].members()) {
    if (order(i, x.bundles[j].without(g), x.bundles[i]) > 0) return true;
  }
  return false;
}

template <class Order>
bool weak_envy(const Order& order, const Allocation& x, AgentId i, AgentId j) {
  return envies(order, x, i, j) && !strong_envy(order, x, i, j);
}

struct EnvyWitness {
  AgentId envier;
  AgentId envied;
  GoodId removed;
};

// Every (i, j, g) with X_j \ {g} strictly preferred by i to X_i.
template <class Order>
std::vector<EnvyWitness> strong_envy_witnesses(const Order& order, const Allocation& x) {
  std::vector<EnvyWitness> out;
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      if (i == j) continue;
      for (GoodId g : x.bundles[j].members()) {
        if (order(i, x.bundles[j].without(g), x.bundles[i]) > 0) out.push_back({i, j, g});
      }
    }
  }
  return out;
}

template <class Order>
bool is_efx(const Order& order, const Allocation& x) {
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      if (i != j && strong_envy(order, x, i, j)) return false;
    }
  }
  return true;
}

template <class Order>
bool is_ef1(const Order& order, const Allocation& x) {
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      if (i == j || !envies(order, x, i, j)) continue;
      bool fixable = false;
      for (GoodId g : x.bundles[j].members()) {
        if (order(i, x.bundles[j].without(g), x.bundles[i]) <= 0) {
          fixable = true;
          break;
        }
      }
      if (!fixable) return false;
    }
  }
  return true;
}

template <class Order>
bool is_envy_free(const Order& order, const Allocation& x) {
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    for (AgentId j = 0; j < x.num_agents(); ++j) {
      if (i != j && envies(order, x, i, j)) return false;
    }
  }
  return true;
}

// Perturbed-order conveniences; these are what the solver relies on.
bool strong_envy(const Instance& inst, const Allocation& x, AgentId i, AgentId j);
bool weak_envy(const Instance& inst, const Allocation& x, AgentId i, AgentId j);
bool is_efx(const Instance& inst, const Allocation& x);
bool is_ef1(const Instance& inst, const Allocation& x);
bool is_envy_free(const Instance& inst, const Allocation& x);

// Product of the agents' unperturbed bundle values (NSW to the n-th power).
template <class V>
V nash_product(const BasicInstance<V>& inst, const Allocation& x) {
  V product{1};
  for (AgentId i = 0; i < x.num_agents(); ++i) product *= bundle_value(inst, i, x.bundles[i]);
  return product;
}

// Y is at least as good for everyone and strictly better for someone.
template <class Order>
bool pareto_dominates(const Order& order, const Allocation& y, const Allocation& x) {
  bool strict = false;
  for (AgentId i = 0; i < x.num_agents(); ++i) {
    const auto c = order(i, y.bundles[i], x.bundles[i]);
    if (c < 0) return false;
    if (c > 0) strict = true;
  }
  return strict;
}

bool pareto_dominates(const Instance& inst, const Allocation& y, const Allocation& x);

// The agent order (a, b, c, ...) of the potential; fixed for a whole solve.
struct PhiOrder {
  std::vector<AgentId> agent_order;

  static PhiOrder identity(std::size_t agents);
  AgentId first() const { return agent_order.front(); }
};

void validate(const PhiOrder& order, std::size_t agents);

// (v_a(X_a), v_b(X_b), ...) in perturbed values.
std::vector<PerturbedValue> phi(const Instance& inst, const PhiOrder& order, const Allocation& x);

// phi(Y) lexicographically exceeds phi(X).
bool lex_dominates(const Instance& inst, const PhiOrder& order, const Allocation& y, const Allocation& x);

// Allocation JSON: {"bundles": [[ids...], ...], "pool": [ids...]}. A missing
// pool is the complement of the bundles.
template <class V>
Allocation parse_allocation(const BasicInstance<V>& inst, const nlohmann::json& doc);
template <class V>
nlohmann::json serialize_allocation(const BasicInstance<V>& inst, const Allocation& x);

Allocation parse_allocation_text(const Instance& inst, std::string_view text);

// Implementation detail shared by the templates above.
namespace detail {
Allocation parse_allocation_names(const std::vector<std::string>& goods, std::size_t agents,
                                  const nlohmann::json& doc);
nlohmann::json serialize_allocation_names(const std::vector<std::string>& goods, const Allocation& x);
}  // namespace detail

template <class V>
Allocation parse_allocation(const BasicInstance<V>& inst, const nlohmann::json& doc) {
  return detail::parse_allocation_names(inst.goods, inst.num_agents, doc);
}

template <class V>
nlohmann::json serialize_allocation(const BasicInstance<V>& inst, const Allocation& x) {
  return detail::serialize_allocation_names(inst.goods, x);
}

}  // namespace efx
