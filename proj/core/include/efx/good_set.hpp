#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "efx/rational.hpp"

namespace efx {

// Index of a good in its instance, 0-based. The tie-break weight of good
// `g` is 2^(g+1), i.e. 2^j for the 1-based position j.
using GoodId = std::size_t;
using AgentId = std::size_t;

// A subset of the goods {0, ..., universe-1}, stored as a bitset.
class GoodSet {
 public:
  GoodSet() = default;
  explicit GoodSet(std::size_t universe);
  GoodSet(std::size_t universe, std::initializer_list<GoodId> goods);

  static GoodSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t size() const;
  bool empty() const;

  bool contains(GoodId g) const;
  void insert(GoodId g);
  void erase(GoodId g);

  GoodSet with(GoodId g) const;
  GoodSet without(GoodId g) const;

  GoodSet& operator|=(const GoodSet& other);
  GoodSet& operator&=(const GoodSet& other);
  GoodSet& operator-=(const GoodSet& other);
  friend GoodSet operator|(GoodSet a, const GoodSet& b) { return a |= b; }
  friend GoodSet operator&(GoodSet a, const GoodSet& b) { return a &= b; }
  friend GoodSet operator-(GoodSet a, const GoodSet& b) { return a -= b; }

  bool intersects(const GoodSet& other) const;
  bool is_subset_of(const GoodSet& other) const;

  // Members in increasing index order.
  std::vector<GoodId> members() const;
  // Lowest member; precondition: !empty().
  GoodId first() const;

  // Sum of 2^(g+1) over members, as a big integer.
  BigInt tie_key() const;

  // Orders sets by tie_key() without materializing it.
  std::strong_ordering compare_key(const GoodSet& other) const;

  friend bool operator==(const GoodSet& a, const GoodSet& b);

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace efx
