// Copyright 2026 The stablelat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABLELAT_AGENT_SET_HPP_
#define STABLELAT_AGENT_SET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

namespace stablelat {

/// Position of an agent within its side of the market (file order).
using AgentIndex = std::size_t;

/// Agents per side are capped by the bit width of AgentSet.
inline constexpr std::size_t kMaxAgentsPerSide = 64;

/// A set of agents from one side of the market, stored as a 64-bit mask.
class AgentSet {
 public:
  using Bits = std::uint64_t;

  constexpr AgentSet() = default;
  constexpr explicit AgentSet(Bits bits) : bits_(bits) {}

  static constexpr AgentSet single(AgentIndex i) { return AgentSet(Bits{1} << i); }
  /// {0, ..., n-1}
  static constexpr AgentSet first(std::size_t n) {
    return AgentSet(n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1);
  }
  static AgentSet of(std::initializer_list<AgentIndex> members) {
    AgentSet s;
    for (AgentIndex i : members) s.insert(i);
    return s;
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(AgentIndex i) const { return (bits_ >> i) & 1U; }
  constexpr bool subset_of(AgentSet other) const { return (bits_ & ~other.bits_) == 0; }
  /// Lowest member; undefined on the empty set.
  constexpr AgentIndex front() const { return static_cast<AgentIndex>(std::countr_zero(bits_)); }

  constexpr void insert(AgentIndex i) { bits_ |= Bits{1} << i; }
  constexpr void erase(AgentIndex i) { bits_ &= ~(Bits{1} << i); }

  constexpr AgentSet with(AgentIndex i) const { return AgentSet(bits_ | (Bits{1} << i)); }
  constexpr AgentSet without(AgentIndex i) const { return AgentSet(bits_ & ~(Bits{1} << i)); }

  friend constexpr AgentSet operator|(AgentSet a, AgentSet b) { return AgentSet(a.bits_ | b.bits_); }
  friend constexpr AgentSet operator&(AgentSet a, AgentSet b) { return AgentSet(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr AgentSet operator-(AgentSet a, AgentSet b) { return AgentSet(a.bits_ & ~b.bits_); }
  constexpr AgentSet& operator|=(AgentSet o) { bits_ |= o.bits_; return *this; }
  constexpr AgentSet& operator&=(AgentSet o) { bits_ &= o.bits_; return *this; }
  friend constexpr bool operator==(AgentSet, AgentSet) = default;
  friend constexpr auto operator<=>(AgentSet a, AgentSet b) { return a.bits_ <=> b.bits_; }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = AgentIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = AgentIndex;

    constexpr iterator() = default;
    constexpr explicit iterator(Bits rest) : rest_(rest) {}
    constexpr AgentIndex operator*() const { return static_cast<AgentIndex>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    Bits rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<AgentIndex> members() const { return {begin(), end()}; }

 private:
  Bits bits_ = 0;
};

/// Calls fn(sub) for every subset of `set`, in increasing mask order, the
/// empty set first and `set` last.
template <typename Fn>
void for_each_subset(AgentSet set, Fn&& fn) {
  const AgentSet::Bits full = set.bits();
  AgentSet::Bits sub = 0;
  while (true) {
    fn(AgentSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

/// Like for_each_subset, but stops as soon as fn returns false. Returns
/// false iff it stopped early.
template <typename Fn>
bool all_subsets(AgentSet set, Fn&& fn) {
  const AgentSet::Bits full = set.bits();
  AgentSet::Bits sub = 0;
  while (true) {
    if (!fn(AgentSet(sub))) return false;
    if (sub == full) return true;
    sub = (sub - full) & full;
  }
}

}  // namespace stablelat

#endif  // STABLELAT_AGENT_SET_HPP_
