#include "efx/instance.hpp"

#include <algorithm>

namespace efx {

PerturbedValue value(const Instance& inst, AgentId i, const GoodSet& s) {
  if (i >= inst.num_agents) throw ContractError("agent index out of range");
  if (s.universe() != inst.num_goods()) throw InputError("bundle is not over this instance's goods");
  return PerturbedValue{bundle_value(inst, i, s), s};
}

std::strong_ordering compare(const Instance& inst, AgentId i, const GoodSet& s, const GoodSet& t) {
  return value(inst, i, s) <=> value(inst, i, t);
}

bool good_less(const Instance& inst, AgentId i, GoodId g, GoodId h) {
  if (auto c = compare_values(inst.at(i, g), inst.at(i, h)); c != 0) return c < 0;
  return g < h;
}

std::vector<GoodId> goods_descending(const Instance& inst, AgentId i, const GoodSet& s) {
  auto goods = s.members();
  std::sort(goods.begin(), goods.end(), [&](GoodId g, GoodId h) { return good_less(inst, i, h, g); });
  return goods;
}

Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(BigInt(std::to_string(v.get<unsigned long long>())));
    return Rational(BigInt(std::to_string(v.get<long long>())));
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("values must be integers or \"p/q\" strings, got " + v.dump());
}

nlohmann::json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

Instance parse_instance(const nlohmann::json& doc) {
  return parse_instance_with<Rational>(doc, [](const nlohmann::json& v) { return rational_from_json(v); });
}

Instance parse_instance_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

nlohmann::json serialize_instance(const Instance& inst) {
  nlohmann::json doc;
  if (!inst.comment.empty()) doc["comment"] = inst.comment;
  doc["agents"] = inst.num_agents;
  doc["goods"] = inst.goods;
  auto rows = nlohmann::json::array();
  for (const auto& row : inst.values) {
    auto out = nlohmann::json::array();
    for (const auto& v : row) out.push_back(rational_to_json(v));
    rows.push_back(std::move(out));
  }
  doc["values"] = std::move(rows);
  return doc;
}

}  // namespace efx
