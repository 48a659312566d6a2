#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

namespace sched {

/// Maximum number of jobs a JobSet can hold.
inline constexpr int kMaxJobs = 64;

/// A set of job indices in [0, 64), stored as a bit mask.
class JobSet {
 public:
  class iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr JobSet() = default;
  constexpr JobSet(std::initializer_list<int> jobs) {
    for (int v : jobs) insert(v);
  }

  static constexpr JobSet from_bits(std::uint64_t bits) {
    JobSet s;
    s.bits_ = bits;
    return s;
  }
  /// {0, ..., n-1}.
  static constexpr JobSet first(int n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr JobSet single(int v) { return from_bits(std::uint64_t{1} << v); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  /// Smallest member; undefined on the empty set.
  constexpr int front() const { return std::countr_zero(bits_); }

  constexpr void insert(int v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr JobSet with(int v) const { return from_bits(bits_ | (std::uint64_t{1} << v)); }
  constexpr JobSet without(int v) const { return from_bits(bits_ & ~(std::uint64_t{1} << v)); }

  constexpr bool subset_of(JobSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(JobSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr JobSet operator|(JobSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr JobSet operator&(JobSet o) const { return from_bits(bits_ & o.bits_); }
  /// Set difference.
  constexpr JobSet operator-(JobSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr JobSet& operator|=(JobSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr JobSet& operator&=(JobSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr JobSet& operator-=(JobSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr bool operator==(const JobSet&) const = default;
  constexpr auto operator<=>(const JobSet&) const = default;

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  /// "{0,3,5}"
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Calls fn(sub) for every subset of `set`, starting with the empty set.
template <typename Fn>
void for_each_subset(JobSet set, Fn&& fn) {
  const std::uint64_t full = set.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(JobSet::from_bits(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

/// Calls fn(sub) for every subset of `set` with exactly k members.
template <typename Fn>
void for_each_subset_of_size(JobSet set, int k, Fn&& fn) {
  if (k < 0 || k > set.size()) return;
  for_each_subset(set, [&](JobSet sub) {
    if (sub.size() == k) fn(sub);
  });
}

}  // namespace sched

template <>
struct std::hash<sched::JobSet> {
  std::size_t operator()(sched::JobSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
