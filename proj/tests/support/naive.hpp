#pragma once

// Deliberately slow reference implementations used as test oracles. They
// share no code with the library beyond the data types.

#include <cstddef>
#include <functional>
#include <vector>

#include "efx/allocation.hpp"
#include "efx/instance.hpp"
#include "efx/rational.hpp"

namespace naive {

using efx::Allocation;
using efx::GoodSet;

template <class V>
V total(const efx::BasicInstance<V>& inst, std::size_t agent, const GoodSet& s) {
  V total{};
  for (std::size_t g = 0; g < inst.num_goods(); ++g) {
    if (s.contains(g)) total = total + inst.values[agent][g];
  }
  return total;
}

inline efx::BigInt key(const GoodSet& s) {
  efx::BigInt k = 0;
  for (std::size_t g = 0; g < s.universe(); ++g) {
    if (s.contains(g)) {
      efx::BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), 2, g + 1);
      k += p;
    }
  }
  return k;
}

// -1, 0, 1. perturbed adds the tie key as a second coordinate.
template <class V>
int compare(const efx::BasicInstance<V>& inst, std::size_t agent, const GoodSet& s, const GoodSet& t,
            bool perturbed) {
  const V a = total(inst, agent, s);
  const V b = total(inst, agent, t);
  if (a < b) return -1;
  if (b < a) return 1;
  if (!perturbed) return 0;
  const efx::BigInt ka = key(s);
  const efx::BigInt kb = key(t);
  if (ka < kb) return -1;
  if (kb < ka) return 1;
  return 0;
}

template <class V>
bool strong_envy(const efx::BasicInstance<V>& inst, const Allocation& x, std::size_t i, std::size_t j,
                 bool perturbed) {
  for (std::size_t g = 0; g < inst.num_goods(); ++g) {
    if (!x.bundles[j].contains(g)) continue;
    GoodSet rest = x.bundles[j];
    rest.erase(g);
    if (compare(inst, i, rest, x.bundles[i], perturbed) > 0) return true;
  }
  return false;
}

template <class V>
bool is_efx(const efx::BasicInstance<V>& inst, const Allocation& x, bool perturbed) {
  for (std::size_t i = 0; i < x.bundles.size(); ++i) {
    for (std::size_t j = 0; j < x.bundles.size(); ++j) {
      if (i != j && strong_envy(inst, x, i, j, perturbed)) return false;
    }
  }
  return true;
}

template <class V>
bool is_ef1(const efx::BasicInstance<V>& inst, const Allocation& x) {
  for (std::size_t i = 0; i < x.bundles.size(); ++i) {
    for (std::size_t j = 0; j < x.bundles.size(); ++j) {
      if (i == j || compare(inst, i, x.bundles[j], x.bundles[i], true) <= 0) continue;
      bool ok = false;
      for (std::size_t g = 0; g < inst.num_goods(); ++g) {
        if (!x.bundles[j].contains(g)) continue;
        GoodSet rest = x.bundles[j];
        rest.erase(g);
        if (compare(inst, i, rest, x.bundles[i], true) <= 0) ok = true;
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Every complete allocation, built as a Cartesian product by recursion.
inline std::vector<Allocation> all_complete(std::size_t agents, std::size_t goods) {
  std::vector<Allocation> out;
  std::vector<std::size_t> owner(goods);
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == goods) {
      Allocation x{std::vector<GoodSet>(agents, GoodSet(goods)), GoodSet(goods)};
      for (std::size_t h = 0; h < goods; ++h) x.bundles[owner[h]].insert(h);
      out.push_back(std::move(x));
      return;
    }
    for (std::size_t a = 0; a < agents; ++a) {
      owner[g] = a;
      rec(g + 1);
    }
  };
  rec(0);
  return out;
}

// Every subset of s.
inline std::vector<GoodSet> subsets(const GoodSet& s) {
  std::vector<std::size_t> members;
  for (std::size_t g = 0; g < s.universe(); ++g) {
    if (s.contains(g)) members.push_back(g);
  }
  std::vector<GoodSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << members.size()); ++mask) {
    GoodSet t(s.universe());
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((mask >> b) & 1U) t.insert(members[b]);
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace naive
