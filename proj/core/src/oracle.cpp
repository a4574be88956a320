#include "efx/oracle.hpp"

#include <algorithm>

#include "efx/solver.hpp"

namespace efx {

void check_guard(std::size_t goods, std::size_t max_goods) {
  if (goods > 62) throw InputError("exhaustive search supports at most 62 goods");
  if (goods > max_goods) {
    throw InputError("instance has " + std::to_string(goods) + " goods; exhaustive search is limited to " +
                     std::to_string(max_goods) + " (raise --max-goods or EFX_MAX_GOODS to override)");
  }
}

Allocation allocation_from_masks(const std::vector<std::uint64_t>& masks, std::size_t goods) {
  Allocation x = Allocation::empty(masks.size(), goods);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (GoodId g = 0; g < goods; ++g) {
      if ((masks[i] >> g) & 1U) {
        x.bundles[i].insert(g);
        x.pool.erase(g);
      }
    }
  }
  return x;
}

std::vector<std::uint64_t> masks_from_allocation(const Allocation& x) {
  std::vector<std::uint64_t> masks;
  for (const auto& b : x.bundles) {
    std::uint64_t mask = 0;
    for (GoodId g : b.members()) mask |= std::uint64_t{1} << g;
    masks.push_back(mask);
  }
  return masks;
}

Certification certify_solver(const Instance& inst, const OracleOptions& options) {
  check_guard(inst.num_goods(), options.max_goods);
  Certification cert;
  SolveResult result;
  try {
    result = solve(inst);
  } catch (const std::exception& e) {
    cert.failures.push_back(std::string("solver raised: ") + e.what());
    return cert;
  }
  cert.steps = result.trace.size();
  const Allocation& x = result.allocation;
  if (!x.is_complete()) cert.failures.push_back("allocation is not complete");

  const ValueTable<Rational> table(inst);
  const auto masks = masks_from_allocation(x);
  if (!table.is_efx(masks, OracleOrder::Base)) cert.failures.push_back("not EFX under base values");
  if (!table.is_efx(masks, OracleOrder::Perturbed)) cert.failures.push_back("not EFX under perturbed values");

  bool member = false;
  for_each_complete(inst, options.max_goods, [&](const std::vector<std::uint64_t>& candidate) {
    if (candidate == masks) {
      member = table.is_efx(candidate, OracleOrder::Base);
      return false;
    }
    return true;
  });
  if (!member) cert.failures.push_back("allocation is not in the enumerated complete-EFX set");

  const PhiOrder order = PhiOrder::identity(inst.num_agents);
  auto before = phi(inst, order, Allocation::empty(inst.num_agents, inst.num_goods()));
  for (const auto& rec : result.trace) {
    if (!(rec.phi_before == before)) cert.failures.push_back("trace is not contiguous");
    if (!std::lexicographical_compare(rec.phi_before.begin(), rec.phi_before.end(), rec.phi_after.begin(),
                                      rec.phi_after.end())) {
      cert.failures.push_back("potential did not increase at step " + std::to_string(rec.iteration));
    }
    before = rec.phi_after;
  }
  cert.pass = cert.failures.empty();
  return cert;
}

}  // namespace efx
