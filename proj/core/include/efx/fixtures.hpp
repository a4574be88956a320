#pragma once

#include <cstdint>

#include "efx/allocation.hpp"
#include "efx/eps_poly.hpp"
#include "efx/instance.hpp"

namespace efx {

// Three agents, seven goods; the partial allocation below is EFX on g1..g6
// and no complete EFX allocation Pareto dominates it.
Instance table1_instance();
Allocation table1_partial();  // ({g2,g3,g4}, {g1,g5}, {g6}), pool {g7}

// Same partial allocation for the infinitesimal instance, and the complete
// EFX allocation ({g6}, {g3,g4,g7}, {g1,g2,g5}).
Allocation table2_partial();
Allocation table2_hat();

// Two agents with identical values (1, 1, 2).
Instance intro_instance();

// Uniform integer values in [0, max_value]; deterministic per seed.
Instance random_instance(std::uint64_t seed, std::size_t agents, std::size_t goods, std::uint64_t max_value);

// All agents share one random row.
Instance random_identical_instance(std::uint64_t seed, std::size_t agents, std::size_t goods,
                                   std::uint64_t max_value);

}  // namespace efx
