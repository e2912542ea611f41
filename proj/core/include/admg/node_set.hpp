#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace admg {

/// 1-based node index. Node i occupies bit i-1 of a NodeSet.
using NodeId = int;

inline constexpr int kMaxNodes = 64;

/// A set of nodes stored as a bitmask. The raw encoding (`bits()`) is the
/// same set index used by the ASP constraint atoms: sum of 2^(i-1) over members.
class NodeSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = NodeId;
    using difference_type = std::ptrdiff_t;
    using pointer = const NodeId*;
    using reference = NodeId;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr NodeId operator*() const { return std::countr_zero(rest_) + 1; }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr NodeSet() = default;
  constexpr NodeSet(std::initializer_list<NodeId> ids) {
    for (NodeId id : ids) insert(id);
  }

  static constexpr NodeSet from_bits(std::uint64_t bits) {
    NodeSet s;
    s.bits_ = bits;
    return s;
  }
  /// {1, ..., n}
  static constexpr NodeSet range(int n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr NodeSet single(NodeId id) { return from_bits(bit(id)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(NodeId id) const { return (bits_ & bit(id)) != 0; }
  constexpr bool contains(NodeSet other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool intersects(NodeSet other) const { return (bits_ & other.bits_) != 0; }
  /// Lowest member; undefined on an empty set.
  constexpr NodeId first() const { return std::countr_zero(bits_) + 1; }
  /// Highest member; undefined on an empty set.
  constexpr NodeId last() const { return 64 - std::countl_zero(bits_); }

  constexpr void insert(NodeId id) { bits_ |= bit(id); }
  constexpr void erase(NodeId id) { bits_ &= ~bit(id); }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  constexpr NodeSet operator|(NodeSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr NodeSet operator&(NodeSet o) const { return from_bits(bits_ & o.bits_); }
  /// Set difference.
  constexpr NodeSet operator-(NodeSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr NodeSet& operator|=(NodeSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator&=(NodeSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr NodeSet& operator-=(NodeSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr bool operator==(const NodeSet&) const = default;
  constexpr auto operator<=>(const NodeSet& o) const { return bits_ <=> o.bits_; }

  std::vector<NodeId> to_vector() const { return {begin(), end()}; }

 private:
  static constexpr std::uint64_t bit(NodeId id) { return std::uint64_t{1} << (id - 1); }

  std::uint64_t bits_ = 0;
};

/// "{1,3}" style rendering with numeric ids.
std::string to_string(NodeSet s);

/// Calls fn(subset) for every subset of `s`, starting from the empty set.
template <typename Fn>
void for_each_subset(NodeSet s, Fn&& fn) {
  const std::uint64_t mask = s.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(NodeSet::from_bits(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace admg
