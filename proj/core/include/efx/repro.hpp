#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/eps_poly.hpp"
#include "efx/oracle.hpp"

namespace efx {

struct ReproCheck {
  std::string id;
  std::string description;
  bool pass = false;
  nlohmann::json detail;  // counts, values, or a counter-witness
};

struct ReproReport {
  std::string name;
  std::vector<ReproCheck> checks;

  bool pass() const;
  nlohmann::json to_json() const;
  std::string summary() const;  // one line per check
};

ReproReport repro_table1(const OracleOptions& options = {});

// `instance` replaces the built-in infinitesimal instance (negative controls).
ReproReport repro_table2(const std::optional<EpsInstance>& instance = std::nullopt,
                         const OracleOptions& options = {});

// (10 + 2 eps^5)(10 + eps)(10): cubed Nash welfare of the partial allocation.
EpsPoly table2_partial_product();

}  // namespace efx
