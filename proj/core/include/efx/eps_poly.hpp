#pragma once

#include <compare>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "efx/instance.hpp"
#include "efx/rational.hpp"

namespace efx {

// Polynomial in an infinitesimal epsilon > 0 with rational coefficients.
// Ordered as epsilon -> 0+: p > q iff the lowest-degree nonzero coefficient
// of p - q is positive.
class EpsPoly {
 public:
  EpsPoly() = default;
  EpsPoly(long constant) : EpsPoly(Rational(constant)) {}  // NOLINT: implicit by design of the ring
  EpsPoly(const Rational& constant);                        // NOLINT

  // coeff * eps^degree
  static EpsPoly term(unsigned degree, const Rational& coeff);

  const std::map<unsigned, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(unsigned degree) const;
  bool is_zero() const { return coeffs_.empty(); }
  int sign() const;  // sign as eps -> 0+

  EpsPoly& operator+=(const EpsPoly& other);
  EpsPoly& operator-=(const EpsPoly& other);
  EpsPoly& operator*=(const EpsPoly& other);
  friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
  friend EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
  friend EpsPoly operator*(EpsPoly a, const EpsPoly& b) { return a *= b; }
  EpsPoly operator-() const;

  friend std::strong_ordering operator<=>(const EpsPoly& a, const EpsPoly& b);
  friend bool operator==(const EpsPoly& a, const EpsPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Exact value at a concrete epsilon.
  Rational evaluate(const Rational& eps) const;

  std::string to_string() const;

 private:
  void normalize();
  std::map<unsigned, Rational> coeffs_;  // no zero entries
};

std::strong_ordering compare_eps(const EpsPoly& p, const EpsPoly& q);

inline std::strong_ordering compare_values(const EpsPoly& a, const EpsPoly& b) { return a <=> b; }
inline bool is_negative(const EpsPoly& p) { return p.sign() < 0; }

// {"0": "10", "5": "3"} for 10 + 3 eps^5. Plain integers and "p/q"
// strings are accepted as constants when parsing.
nlohmann::json eps_to_json(const EpsPoly& p);
EpsPoly eps_from_json(const nlohmann::json& doc);

using EpsInstance = BasicInstance<EpsPoly>;

EpsInstance parse_eps_instance(const nlohmann::json& doc);
nlohmann::json serialize_eps_instance(const EpsInstance& inst);

// The seven-good instance with infinitesimal entries on which a partial EFX
// allocation beats every complete EFX allocation in Nash welfare.
EpsInstance table2_instance();

}  // namespace efx
