#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "efx/allocation.hpp"
#include "efx/errors.hpp"
#include "efx/instance.hpp"

namespace efx {

// Exhaustive search over all n^m complete allocations. Bundles are bitmasks
// here (bit g = good g), so instances are capped well below 64 goods; the
// default guard is 16.
inline constexpr std::size_t kDefaultMaxGoods = 16;

enum class OracleOrder {
  Base,       // unperturbed values, ties allowed
  Perturbed,  // (value, tie key), as used by the solver
};

struct OracleOptions {
  std::size_t max_goods = kDefaultMaxGoods;
  OracleOrder order = OracleOrder::Base;
  bool keep_list = false;
};

// Throws InputError when the instance exceeds the guard.
void check_guard(std::size_t goods, std::size_t max_goods);

// v_i(S) for every agent and every subset mask.
template <class V>
class ValueTable {
 public:
  explicit ValueTable(const BasicInstance<V>& inst) : agents_(inst.num_agents), goods_(inst.num_goods()) {
    const std::uint64_t subsets = std::uint64_t{1} << goods_;
    table_.assign(agents_, std::vector<V>(subsets));
    for (std::size_t i = 0; i < agents_; ++i) {
      for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        const int low = __builtin_ctzll(mask);
        table_[i][mask] = table_[i][mask & (mask - 1)] + inst.at(i, static_cast<GoodId>(low));
      }
    }
  }

  const V& operator()(std::size_t agent, std::uint64_t mask) const { return table_[agent][mask]; }
  std::size_t agents() const { return agents_; }
  std::size_t goods() const { return goods_; }

  std::strong_ordering compare(std::size_t agent, std::uint64_t a, std::uint64_t b, OracleOrder order) const {
    if (auto c = compare_values(table_[agent][a], table_[agent][b]); c != 0) return c;
    if (order == OracleOrder::Base || a == b) return std::strong_ordering::equal;
    return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  bool is_efx(const std::vector<std::uint64_t>& masks, OracleOrder order) const {
    for (std::size_t i = 0; i < agents_; ++i) {
      for (std::size_t j = 0; j < agents_; ++j) {
        if (i == j) continue;
        for (std::uint64_t rest = masks[j]; rest; rest &= rest - 1) {
          const std::uint64_t bit = rest & (~rest + 1);
          if (compare(i, masks[j] ^ bit, masks[i], order) > 0) return false;
        }
      }
    }
    return true;
  }

 private:
  std::size_t agents_;
  std::size_t goods_;
  std::vector<std::vector<V>> table_;
};

Allocation allocation_from_masks(const std::vector<std::uint64_t>& masks, std::size_t goods);
std::vector<std::uint64_t> masks_from_allocation(const Allocation& x);

// Visits every complete allocation, good-major/agent-minor: the owner of g1
// is the most significant digit and the owner of g_m changes fastest.
// The visitor returns false to stop early.
template <class V, class Visit>
void for_each_complete(const BasicInstance<V>& inst, std::size_t max_goods, Visit&& visit) {
  check_guard(inst.num_goods(), max_goods);
  const std::size_t n = inst.num_agents;
  const std::size_t m = inst.num_goods();
  std::vector<std::size_t> owner(m, 0);
  std::vector<std::uint64_t> masks(n, 0);
  masks[0] = m == 0 ? 0 : ((std::uint64_t{1} << m) - 1);
  for (;;) {
    if (!visit(masks)) return;
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      const std::uint64_t bit = std::uint64_t{1} << pos;
      masks[owner[pos]] ^= bit;
      if (owner[pos] + 1 < n) {
        ++owner[pos];
        masks[owner[pos]] ^= bit;
        break;
      }
      owner[pos] = 0;
      masks[0] ^= bit;
      if (pos == 0) return;
    }
    if (m == 0) return;
  }
}

template <class V>
struct EnumerationReport {
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t total = 0;
  std::uint64_t efx_count = 0;
  std::vector<Allocation> efx_list;
  std::optional<V> best_nash;
  std::optional<Allocation> best_nash_witness;
};

template <class V>
EnumerationReport<V> enumerate_efx(const BasicInstance<V>& inst, const OracleOptions& options = {}) {
  EnumerationReport<V> report;
  report.agents = inst.num_agents;
  report.goods = inst.num_goods();
  check_guard(inst.num_goods(), options.max_goods);
  const ValueTable<V> table(inst);
  for_each_complete(inst, options.max_goods, [&](const std::vector<std::uint64_t>& masks) {
    ++report.total;
    if (!table.is_efx(masks, options.order)) return true;
    ++report.efx_count;
    if (options.keep_list) report.efx_list.push_back(allocation_from_masks(masks, report.goods));
    V product{1};
    for (std::size_t i = 0; i < masks.size(); ++i) product *= table(i, masks[i]);
    if (!report.best_nash || compare_values(product, *report.best_nash) > 0) {
      report.best_nash = product;
      report.best_nash_witness = allocation_from_masks(masks, report.goods);
    }
    return true;
  });
  return report;
}

// Maximum Nash product over complete EFX allocations with its first
// witness in enumeration order, or nullopt if there is no complete EFX
// allocation.
template <class V>
std::optional<std::pair<V, Allocation>> max_nash_efx(const BasicInstance<V>& inst,
                                                     const OracleOptions& options = {}) {
  auto report = enumerate_efx(inst, options);
  if (!report.best_nash) return std::nullopt;
  return std::make_pair(*report.best_nash, *report.best_nash_witness);
}

// First complete EFX allocation (enumeration order) that Pareto dominates X.
template <class V>
std::optional<Allocation> exists_pareto_dominator(const BasicInstance<V>& inst, const Allocation& x,
                                                  const OracleOptions& options = {}) {
  check_guard(inst.num_goods(), options.max_goods);
  validate(x, inst.num_agents, inst.num_goods());
  const ValueTable<V> table(inst);
  const auto current = masks_from_allocation(x);
  std::optional<Allocation> found;
  for_each_complete(inst, options.max_goods, [&](const std::vector<std::uint64_t>& masks) {
    bool strict = false;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const auto c = table.compare(i, masks[i], current[i], options.order);
      if (c < 0) return true;
      if (c > 0) strict = true;
    }
    if (!strict || !table.is_efx(masks, options.order)) return true;
    found = allocation_from_masks(masks, inst.num_goods());
    return false;
  });
  return found;
}

// Runs the solver and checks completeness, membership in the oracle's
// complete-EFX set (both orders) and strict potential growth along the trace.
struct Certification {
  bool pass = false;
  std::vector<std::string> failures;
  std::size_t steps = 0;
};
Certification certify_solver(const Instance& inst, const OracleOptions& options = {});

template <class V>
nlohmann::json report_to_json(const BasicInstance<V>& inst, const EnumerationReport<V>& report,
                              nlohmann::json (*value_to_json)(const V&)) {
  nlohmann::json doc;
  doc["agents"] = report.agents;
  doc["goods"] = report.goods;
  doc["total"] = report.total;
  doc["efx_count"] = report.efx_count;
  if (!report.efx_list.empty()) {
    auto list = nlohmann::json::array();
    for (const auto& x : report.efx_list) list.push_back(serialize_allocation(inst, x));
    doc["efx_allocations"] = std::move(list);
  }
  if (report.best_nash) {
    doc["max_nash"] = {{"product", value_to_json(*report.best_nash)},
                       {"witness", serialize_allocation(inst, *report.best_nash_witness)}};
  } else {
    doc["max_nash"] = nullptr;
  }
  return doc;
}

}  // namespace efx
