#include "efx/good_set.hpp"

#include <algorithm>
#include <bit>

#include "efx/errors.hpp"

namespace efx {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t universe) { return (universe + kWordBits - 1) / kWordBits; }
}  // namespace

GoodSet::GoodSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

GoodSet::GoodSet(std::size_t universe, std::initializer_list<GoodId> goods) : GoodSet(universe) {
  for (GoodId g : goods) insert(g);
}

GoodSet GoodSet::full(std::size_t universe) {
  GoodSet s(universe);
  for (GoodId g = 0; g < universe; ++g) s.insert(g);
  return s;
}

std::size_t GoodSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool GoodSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool GoodSet::contains(GoodId g) const {
  if (g >= universe_) return false;
  return (words_[g / kWordBits] >> (g % kWordBits)) & 1U;
}

void GoodSet::insert(GoodId g) {
  if (g >= universe_) throw ContractError("good index out of range");
  words_[g / kWordBits] |= std::uint64_t{1} << (g % kWordBits);
}

void GoodSet::erase(GoodId g) {
  if (g >= universe_) return;
  words_[g / kWordBits] &= ~(std::uint64_t{1} << (g % kWordBits));
}

GoodSet GoodSet::with(GoodId g) const {
  GoodSet s = *this;
  s.insert(g);
  return s;
}

GoodSet GoodSet::without(GoodId g) const {
  GoodSet s = *this;
  s.erase(g);
  return s;
}

GoodSet& GoodSet::operator|=(const GoodSet& other) {
  if (other.universe_ != universe_) throw ContractError("good sets over different universes");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

GoodSet& GoodSet::operator&=(const GoodSet& other) {
  if (other.universe_ != universe_) throw ContractError("good sets over different universes");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

GoodSet& GoodSet::operator-=(const GoodSet& other) {
  if (other.universe_ != universe_) throw ContractError("good sets over different universes");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
  return *this;
}

bool GoodSet::intersects(const GoodSet& other) const {
  for (std::size_t k = 0; k < std::min(words_.size(), other.words_.size()); ++k) {
    if (words_[k] & other.words_[k]) return true;
  }
  return false;
}

bool GoodSet::is_subset_of(const GoodSet& other) const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    const std::uint64_t theirs = k < other.words_.size() ? other.words_[k] : 0;
    if (words_[k] & ~theirs) return false;
  }
  return true;
}

std::vector<GoodId> GoodSet::members() const {
  std::vector<GoodId> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

GoodId GoodSet::first() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k]) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  throw ContractError("first() of an empty good set");
}

BigInt GoodSet::tie_key() const {
  BigInt key = 0;
  for (GoodId g : members()) {
    BigInt bit;
    mpz_setbit(bit.get_mpz_t(), g + 1);
    key += bit;
  }
  return key;
}

std::strong_ordering GoodSet::compare_key(const GoodSet& other) const {
  const std::size_t n = std::max(words_.size(), other.words_.size());
  for (std::size_t k = n; k-- > 0;) {
    const std::uint64_t a = k < words_.size() ? words_[k] : 0;
    const std::uint64_t b = k < other.words_.size() ? other.words_[k] : 0;
    if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool operator==(const GoodSet& a, const GoodSet& b) {
  return a.universe_ == b.universe_ && a.words_ == b.words_;
}

}  // namespace efx
