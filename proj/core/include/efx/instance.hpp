#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/errors.hpp"
#include "efx/good_set.hpp"
#include "efx/rational.hpp"

namespace efx {

// Agents x goods matrix of additive values over a value ring V (Rational for
// ordinary instances, EpsPoly for infinitesimal ones).
template <class V>
struct BasicInstance {
  std::size_t num_agents = 0;
  std::vector<std::string> goods;
  std::vector<std::vector<V>> values;  // values[agent][good]
  std::string comment;

  std::size_t num_goods() const { return goods.size(); }
  const V& at(AgentId i, GoodId g) const { return values[i][g]; }
  GoodSet all_goods() const { return GoodSet::full(num_goods()); }
  GoodSet no_goods() const { return GoodSet(num_goods()); }

  GoodId index_of(std::string_view name) const {
    for (GoodId g = 0; g < goods.size(); ++g) {
      if (goods[g] == name) return g;
    }
    throw InputError("unknown good '" + std::string(name) + "'");
  }

  GoodSet bundle(std::initializer_list<std::string_view> names) const {
    GoodSet s(num_goods());
    for (auto n : names) s.insert(index_of(n));
    return s;
  }
};

using Instance = BasicInstance<Rational>;

// Throws InputError on ragged rows, negative entries or duplicate good names.
template <class V>
void validate(const BasicInstance<V>& inst) {
  if (inst.num_agents == 0) throw InputError("instance needs at least one agent");
  if (inst.values.size() != inst.num_agents) {
    throw InputError("values has " + std::to_string(inst.values.size()) + " rows, expected " +
                     std::to_string(inst.num_agents));
  }
  for (std::size_t i = 0; i < inst.values.size(); ++i) {
    if (inst.values[i].size() != inst.num_goods()) {
      throw InputError("row " + std::to_string(i + 1) + " has " +
                       std::to_string(inst.values[i].size()) + " entries, expected " +
                       std::to_string(inst.num_goods()));
    }
    for (const V& v : inst.values[i]) {
      if (is_negative(v)) throw InputError("negative value in row " + std::to_string(i + 1));
    }
  }
  for (std::size_t a = 0; a < inst.goods.size(); ++a) {
    for (std::size_t b = a + 1; b < inst.goods.size(); ++b) {
      if (inst.goods[a] == inst.goods[b]) throw InputError("duplicate good id '" + inst.goods[a] + "'");
    }
  }
}

template <class V>
V bundle_value(const BasicInstance<V>& inst, AgentId i, const GoodSet& s) {
  V total{};
  for (GoodId g : s.members()) total += inst.at(i, g);
  return total;
}

// v_i(S) under the infinitesimal tie-break: the real value plus
// epsilon * sum_{g_j in S} 2^j. Ordered lexicographically on (base, key),
// which is the epsilon -> 0+ limit of the perturbed order.
struct PerturbedValue {
  Rational base;
  GoodSet key;

  BigInt key_integer() const { return key.tie_key(); }

  friend std::strong_ordering operator<=>(const PerturbedValue& a, const PerturbedValue& b) {
    if (auto c = compare_values(a.base, b.base); c != 0) return c;
    return a.key.compare_key(b.key);
  }
  friend bool operator==(const PerturbedValue& a, const PerturbedValue& b) {
    return (a <=> b) == 0;
  }
};

PerturbedValue value(const Instance& inst, AgentId i, const GoodSet& s);

// Equal only when s == t.
std::strong_ordering compare(const Instance& inst, AgentId i, const GoodSet& s, const GoodSet& t);

// Perturbed order on single goods: by value, then by index.
bool good_less(const Instance& inst, AgentId i, GoodId g, GoodId h);

// Members of s sorted by agent i's perturbed order, most valuable first.
std::vector<GoodId> goods_descending(const Instance& inst, AgentId i, const GoodSet& s);

// Comparison policies used by the fairness predicates.
struct PerturbedOrder {
  const Instance* inst;
  explicit PerturbedOrder(const Instance& in) : inst(&in) {}
  std::size_t num_agents() const { return inst->num_agents; }
  std::size_t num_goods() const { return inst->num_goods(); }
  std::strong_ordering operator()(AgentId i, const GoodSet& s, const GoodSet& t) const {
    return compare(*inst, i, s, t);
  }
};

// Plain values, ties allowed.
template <class V>
struct BaseOrder {
  const BasicInstance<V>* inst;
  explicit BaseOrder(const BasicInstance<V>& in) : inst(&in) {}
  std::size_t num_agents() const { return inst->num_agents; }
  std::size_t num_goods() const { return inst->num_goods(); }
  std::strong_ordering operator()(AgentId i, const GoodSet& s, const GoodSet& t) const {
    return compare_values(bundle_value(*inst, i, s), bundle_value(*inst, i, t));
  }
};

// Instance JSON: {"agents": n, "goods": [...], "values": [[...], ...]}.
// Entries are JSON integers or "p/q" strings; an optional "comment" string
// is carried through.
Instance parse_instance(const nlohmann::json& doc);
Instance parse_instance_text(std::string_view text);
nlohmann::json serialize_instance(const Instance& inst);

Rational rational_from_json(const nlohmann::json& v);
nlohmann::json rational_to_json(const Rational& r);

// Shared skeleton for instance documents over any value ring.
template <class V, class Decode>
BasicInstance<V> parse_instance_with(const nlohmann::json& doc, Decode&& decode) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  if (!doc.contains("agents") || !doc["agents"].is_number_integer() || doc["agents"].get<long long>() < 1) {
    throw InputError("instance.agents must be a positive integer");
  }
  if (!doc.contains("goods") || !doc["goods"].is_array()) throw InputError("instance.goods must be an array");
  if (!doc.contains("values") || !doc["values"].is_array()) throw InputError("instance.values must be an array");
  BasicInstance<V> inst;
  inst.num_agents = doc["agents"].get<std::size_t>();
  for (const auto& g : doc["goods"]) {
    if (!g.is_string()) throw InputError("good ids must be strings");
    inst.goods.push_back(g.get<std::string>());
  }
  for (const auto& row : doc["values"]) {
    if (!row.is_array()) throw InputError("each values row must be an array");
    std::vector<V> parsed;
    for (const auto& entry : row) parsed.push_back(decode(entry));
    inst.values.push_back(std::move(parsed));
  }
  if (doc.contains("comment")) {
    if (!doc["comment"].is_string()) throw InputError("instance.comment must be a string");
    inst.comment = doc["comment"].get<std::string>();
  }
  validate(inst);
  return inst;
}

}  // namespace efx
