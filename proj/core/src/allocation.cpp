#include "efx/allocation.hpp"

#include <algorithm>

#include "efx/errors.hpp"

namespace efx {

Allocation Allocation::empty(std::size_t agents, std::size_t goods) {
  Allocation x;
  x.bundles.assign(agents, GoodSet(goods));
  x.pool = GoodSet::full(goods);
  return x;
}

GoodSet Allocation::allocated() const {
  GoodSet all(pool.universe());
  for (const auto& b : bundles) all |= b;
  return all;
}

bool Allocation::is_complete() const {
  return pool.empty() && allocated() == GoodSet::full(pool.universe());
}

void validate(const Allocation& x, std::size_t agents, std::size_t goods) {
  if (x.bundles.size() != agents) {
    throw InputError("allocation has " + std::to_string(x.bundles.size()) + " bundles, expected " +
                     std::to_string(agents));
  }
  GoodSet seen(goods);
  auto claim = [&](const GoodSet& s) {
    if (s.universe() != goods) throw InputError("bundle is not over this instance's goods");
    if (seen.intersects(s)) throw InputError("a good appears in more than one place");
    seen |= s;
  };
  for (const auto& b : x.bundles) claim(b);
  claim(x.pool);
}

bool strong_envy(const Instance& inst, const Allocation& x, AgentId i, AgentId j) {
  return strong_envy(PerturbedOrder(inst), x, i, j);
}
bool weak_envy(const Instance& inst, const Allocation& x, AgentId i, AgentId j) {
  return weak_envy(PerturbedOrder(inst), x, i, j);
}
bool is_efx(const Instance& inst, const Allocation& x) { return is_efx(PerturbedOrder(inst), x); }
bool is_ef1(const Instance& inst, const Allocation& x) { return is_ef1(PerturbedOrder(inst), x); }
bool is_envy_free(const Instance& inst, const Allocation& x) {
  return is_envy_free(PerturbedOrder(inst), x);
}

bool pareto_dominates(const Instance& inst, const Allocation& y, const Allocation& x) {
  return pareto_dominates(PerturbedOrder(inst), y, x);
}

PhiOrder PhiOrder::identity(std::size_t agents) {
  PhiOrder order;
  for (AgentId i = 0; i < agents; ++i) order.agent_order.push_back(i);
  return order;
}

void validate(const PhiOrder& order, std::size_t agents) {
  auto sorted = order.agent_order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != PhiOrder::identity(agents).agent_order) {
    throw InputError("potential order must be a permutation of the agents");
  }
}

std::vector<PerturbedValue> phi(const Instance& inst, const PhiOrder& order, const Allocation& x) {
  std::vector<PerturbedValue> out;
  out.reserve(order.agent_order.size());
  for (AgentId a : order.agent_order) out.push_back(value(inst, a, x.bundles[a]));
  return out;
}

bool lex_dominates(const Instance& inst, const PhiOrder& order, const Allocation& y, const Allocation& x) {
  for (AgentId a : order.agent_order) {
    const auto c = compare(inst, a, y.bundles[a], x.bundles[a]);
    if (c != 0) return c > 0;
  }
  return false;
}

namespace detail {

namespace {
GoodSet read_goods(const std::vector<std::string>& goods, const nlohmann::json& list,
                   const std::string& where) {
  if (!list.is_array()) throw InputError(where + " must be an array of good ids");
  GoodSet s(goods.size());
  for (const auto& item : list) {
    if (!item.is_string()) throw InputError(where + " must contain good id strings");
    const auto name = item.get<std::string>();
    auto it = std::find(goods.begin(), goods.end(), name);
    if (it == goods.end()) throw InputError("unknown good '" + name + "' in " + where);
    const auto g = static_cast<GoodId>(it - goods.begin());
    if (s.contains(g)) throw InputError("good '" + name + "' listed twice in " + where);
    s.insert(g);
  }
  return s;
}

nlohmann::json write_goods(const std::vector<std::string>& goods, const GoodSet& s) {
  auto out = nlohmann::json::array();
  for (GoodId g : s.members()) out.push_back(goods[g]);
  return out;
}
}  // namespace

Allocation parse_allocation_names(const std::vector<std::string>& goods, std::size_t agents,
                                  const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("bundles") || !doc["bundles"].is_array()) {
    throw InputError("allocation must be an object with a \"bundles\" array");
  }
  Allocation x;
  std::size_t k = 0;
  for (const auto& b : doc["bundles"]) {
    x.bundles.push_back(read_goods(goods, b, "bundle " + std::to_string(++k)));
  }
  if (x.bundles.size() != agents) {
    throw InputError("allocation has " + std::to_string(x.bundles.size()) + " bundles, expected " +
                     std::to_string(agents));
  }
  if (doc.contains("pool")) {
    x.pool = read_goods(goods, doc["pool"], "pool");
  } else {
    x.pool = GoodSet::full(goods.size());
    for (const auto& b : x.bundles) x.pool -= b;
  }
  validate(x, agents, goods.size());
  return x;
}

nlohmann::json serialize_allocation_names(const std::vector<std::string>& goods, const Allocation& x) {
  nlohmann::json doc;
  auto bundles = nlohmann::json::array();
  for (const auto& b : x.bundles) bundles.push_back(write_goods(goods, b));
  doc["bundles"] = std::move(bundles);
  doc["pool"] = write_goods(goods, x.pool);
  return doc;
}

}  // namespace detail

Allocation parse_allocation_text(const Instance& inst, std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_allocation(inst, doc);
}

}  // namespace efx
