#include "efx/repro.hpp"

#include <sstream>

#include "efx/fixtures.hpp"

namespace efx {

bool ReproReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::json ReproReport::to_json() const {
  nlohmann::json doc;
  doc["experiment"] = name;
  doc["pass"] = pass();
  auto list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"id", c.id}, {"description", c.description}, {"pass", c.pass}, {"detail", c.detail}});
  }
  doc["checks"] = std::move(list);
  return doc;
}

std::string ReproReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) out << (c.pass ? "PASS " : "FAIL ") << name << '/' << c.id << ": " << c.description << '\n';
  out << (pass() ? "PASS " : "FAIL ") << name << '\n';
  return out.str();
}

EpsPoly table2_partial_product() {
  return (EpsPoly(10) + EpsPoly::term(5, 2)) * (EpsPoly(10) + EpsPoly::term(1, 1)) * EpsPoly(10);
}

namespace {

template <class V>
nlohmann::json values_json(const BasicInstance<V>& inst, const Allocation& x,
                           nlohmann::json (*to_json)(const V&)) {
  auto out = nlohmann::json::array();
  for (AgentId i = 0; i < x.num_agents(); ++i) out.push_back(to_json(bundle_value(inst, i, x.bundles[i])));
  return out;
}

nlohmann::json rational_json(const Rational& r) { return to_string(r); }
nlohmann::json eps_json(const EpsPoly& p) { return eps_to_json(p); }

template <class V>
nlohmann::json witnesses_json(const BasicInstance<V>& inst, const Allocation& x) {
  auto out = nlohmann::json::array();
  for (const auto& w : strong_envy_witnesses(BaseOrder<V>(inst), x)) {
    out.push_back({{"envier", w.envier + 1}, {"envied", w.envied + 1}, {"good", inst.goods[w.removed]}});
  }
  return out;
}

}  // namespace

ReproReport repro_table1(const OracleOptions& options) {
  const Instance inst = table1_instance();
  const Allocation x = table1_partial();
  ReproReport report{"table1", {}};

  const std::vector<Rational> expected{16, 15, 10};
  bool values_ok = true;
  for (AgentId i = 0; i < 3; ++i) values_ok = values_ok && bundle_value(inst, i, x.bundles[i]) == expected[i];
  report.checks.push_back({"values", "partial allocation is worth exactly 16, 15, 10 to its owners", values_ok,
                           values_json<Rational>(inst, x, rational_json)});

  const bool efx_base = is_efx(BaseOrder<Rational>(inst), x);
  const bool efx_perturbed = is_efx(inst, x);
  report.checks.push_back({"partial-efx", "partial allocation of g1..g6 is EFX", efx_base && efx_perturbed,
                           {{"base", efx_base}, {"perturbed", efx_perturbed}, {"pool", inst.goods[6]}}});

  OracleOptions enum_options = options;
  enum_options.order = OracleOrder::Base;
  const auto summary = enumerate_efx(inst, enum_options);
  report.checks.push_back({"enumeration", "all 3^7 = 2187 complete allocations scanned", summary.total == 2187,
                           {{"total", summary.total}, {"efx", summary.efx_count}}});

  const auto dominator = exists_pareto_dominator(inst, x, enum_options);
  nlohmann::json detail = {{"dominator", nullptr}};
  if (dominator) detail["dominator"] = serialize_allocation(inst, *dominator);
  report.checks.push_back({"no-dominator", "no complete EFX allocation Pareto dominates the partial allocation",
                           !dominator.has_value(), detail});
  return report;
}

ReproReport repro_table2(const std::optional<EpsInstance>& instance, const OracleOptions& options) {
  const EpsInstance inst = instance ? *instance : table2_instance();
  if (inst.num_agents != 3 || inst.num_goods() != 7) throw InputError("table2 instance must have 3 agents and 7 goods");
  const Allocation x = table2_partial();
  const Allocation hat = table2_hat();
  const BaseOrder<EpsPoly> order(inst);
  const EpsPoly target = table2_partial_product();
  ReproReport report{"table2", {}};

  report.checks.push_back({"partial-efx", "partial allocation of g1..g6 is EFX", is_efx(order, x),
                           {{"strong_envy", witnesses_json(inst, x)}}});

  const EpsPoly partial_product = nash_product(inst, x);
  report.checks.push_back({"partial-nash", "cubed Nash welfare of the partial allocation is (10+2eps^5)(10+eps)(10)",
                           partial_product == target,
                           {{"product", eps_to_json(partial_product)}, {"expected", eps_to_json(target)}}});

  report.checks.push_back({"hat-efx", "({g6},{g3,g4,g7},{g1,g2,g5}) is complete and EFX",
                           hat.is_complete() && is_efx(order, hat),
                           {{"values", values_json<EpsPoly>(inst, hat, eps_json)},
                            {"strong_envy", witnesses_json(inst, hat)}}});

  // One pass over all complete allocations drives the remaining checks.
  const ValueTable<EpsPoly> table(inst);
  const Rational eps_numeric("1/1000000");
  const Rational target_numeric = target.evaluate(eps_numeric);
  std::uint64_t total = 0;
  std::uint64_t efx_count = 0;
  std::optional<Allocation> above_target;
  std::optional<Allocation> shared_big_good;
  std::optional<Allocation> numeric_mismatch;
  std::optional<EpsPoly> best;
  constexpr std::uint64_t big = (1U << 2) | (1U << 4) | (1U << 5);  // g3, g5, g6
  for_each_complete(inst, options.max_goods, [&](const std::vector<std::uint64_t>& masks) {
    ++total;
    if (!table.is_efx(masks, OracleOrder::Base)) return true;
    ++efx_count;
    EpsPoly product{1};
    for (std::size_t i = 0; i < 3; ++i) product *= table(i, masks[i]);
    if (!best || product > *best) best = product;
    const auto symbolic = compare_eps(product, target);
    if (symbolic >= 0 && !above_target) above_target = allocation_from_masks(masks, 7);
    for (std::size_t i = 0; i < 3; ++i) {
      if (__builtin_popcountll(masks[i] & big) != 1 && !shared_big_good) {
        shared_big_good = allocation_from_masks(masks, 7);
      }
    }
    if (compare_values(product.evaluate(eps_numeric), target_numeric) != symbolic && !numeric_mismatch) {
      numeric_mismatch = allocation_from_masks(masks, 7);
    }
    return true;
  });

  nlohmann::json barrier = {{"total", total},
                            {"efx", efx_count},
                            {"bound", eps_to_json(target)},
                            {"best", best ? eps_to_json(*best) : nlohmann::json(nullptr)},
                            {"counter_witness", nullptr}};
  if (above_target) barrier["counter_witness"] = serialize_allocation(inst, *above_target);
  report.checks.push_back({"nash-barrier",
                           "every complete EFX allocation has cubed Nash welfare strictly below the partial one",
                           efx_count > 0 && !above_target, barrier});

  nlohmann::json distinct = {{"counter_witness", nullptr}};
  if (shared_big_good) distinct["counter_witness"] = serialize_allocation(inst, *shared_big_good);
  report.checks.push_back({"distinct-agents", "every complete EFX allocation gives g3, g5, g6 to distinct agents",
                           !shared_big_good, distinct});

  nlohmann::json numeric = {{"eps", to_string(eps_numeric)}, {"counter_witness", nullptr}};
  if (numeric_mismatch) numeric["counter_witness"] = serialize_allocation(inst, *numeric_mismatch);
  report.checks.push_back({"numeric-crosscheck", "every Nash comparison has the same sign at eps = 10^-6",
                           !numeric_mismatch, numeric});
  return report;
}

}  // namespace efx
