#include "efx/eps_poly.hpp"

#include <limits>
#include <sstream>

#include "efx/errors.hpp"

namespace efx {

EpsPoly::EpsPoly(const Rational& constant) {
  if (sgn(constant) != 0) coeffs_[0] = constant;
}

EpsPoly EpsPoly::term(unsigned degree, const Rational& coeff) {
  EpsPoly p;
  if (sgn(coeff) != 0) p.coeffs_[degree] = coeff;
  return p;
}

Rational EpsPoly::coefficient(unsigned degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

int EpsPoly::sign() const { return coeffs_.empty() ? 0 : sgn(coeffs_.begin()->second); }

void EpsPoly::normalize() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it = sgn(it->second) == 0 ? coeffs_.erase(it) : std::next(it);
  }
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& other) {
  for (const auto& [d, c] : other.coeffs_) coeffs_[d] += c;
  normalize();
  return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& other) {
  for (const auto& [d, c] : other.coeffs_) coeffs_[d] -= c;
  normalize();
  return *this;
}

EpsPoly& EpsPoly::operator*=(const EpsPoly& other) {
  std::map<unsigned, Rational> out;
  for (const auto& [d1, c1] : coeffs_) {
    for (const auto& [d2, c2] : other.coeffs_) out[d1 + d2] += c1 * c2;
  }
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

EpsPoly EpsPoly::operator-() const {
  EpsPoly p = *this;
  for (auto& [_, c] : p.coeffs_) c = -c;
  return p;
}

std::strong_ordering operator<=>(const EpsPoly& a, const EpsPoly& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_eps(const EpsPoly& p, const EpsPoly& q) { return p <=> q; }

Rational EpsPoly::evaluate(const Rational& eps) const {
  Rational total = 0;
  for (const auto& [d, c] : coeffs_) {
    Rational power = 1;
    for (unsigned k = 0; k < d; ++k) power *= eps;
    total += c * power;
  }
  return total;
}

std::string EpsPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, c] : coeffs_) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << '-';
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (d == 0) {
      out << efx::to_string(mag);
      continue;
    }
    if (mag != 1) out << efx::to_string(mag);
    out << "eps";
    if (d > 1) out << '^' << d;
  }
  return out.str();
}

nlohmann::json eps_to_json(const EpsPoly& p) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [d, c] : p.coefficients()) out[std::to_string(d)] = efx::to_string(c);
  return out;
}

EpsPoly eps_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) return EpsPoly(rational_from_json(doc));
  EpsPoly p;
  for (const auto& [key, coeff] : doc.items()) {
    unsigned long degree = 0;
    try {
      if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument(key);
      }
      degree = std::stoul(key);
      if (degree > std::numeric_limits<unsigned>::max()) throw std::out_of_range(key);
    } catch (const std::exception&) {
      throw InputError("polynomial degree must be a non-negative integer, got '" + key + "'");
    }
    p += EpsPoly::term(static_cast<unsigned>(degree), rational_from_json(coeff));
  }
  return p;
}

EpsInstance parse_eps_instance(const nlohmann::json& doc) {
  return parse_instance_with<EpsPoly>(doc, [](const nlohmann::json& v) { return eps_from_json(v); });
}

nlohmann::json serialize_eps_instance(const EpsInstance& inst) {
  nlohmann::json doc;
  if (!inst.comment.empty()) doc["comment"] = inst.comment;
  doc["agents"] = inst.num_agents;
  doc["goods"] = inst.goods;
  auto rows = nlohmann::json::array();
  for (const auto& row : inst.values) {
    auto out = nlohmann::json::array();
    for (const auto& v : row) out.push_back(eps_to_json(v));
    rows.push_back(std::move(out));
  }
  doc["values"] = std::move(rows);
  return doc;
}

EpsInstance table2_instance() {
  auto e = [](unsigned d, long c = 1) { return EpsPoly::term(d, Rational(c)); };
  const EpsPoly ten(10L);
  EpsInstance inst;
  inst.num_agents = 3;
  inst.goods = {"g1", "g2", "g3", "g4", "g5", "g6", "g7"};
  inst.values = {
      {e(3) + e(5, 6), e(5, 2), ten - e(3), e(3), ten - e(3, 2), ten + e(5, 3), e(5)},
      {e(1), EpsPoly(), ten - e(2) + e(6), e(2, 2), ten, EpsPoly(), e(1) - e(2)},
      {EpsPoly(), EpsPoly(), EpsPoly(), EpsPoly(), ten - e(4), ten, e(4, 2)},
  };
  return inst;
}

}  // namespace efx
