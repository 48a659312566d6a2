#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sched {

/// Nonnegative arbitrary-precision integer used for processing times and
/// schedule costs. Addition, multiplication and comparison never round.
class ExactCost {
 public:
  using Value = boost::multiprecision::cpp_int;

  ExactCost() = default;
  ExactCost(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit ExactCost(Value v) : value_(std::move(v)) {}

  /// Parses a decimal string of digits. Throws std::invalid_argument otherwise.
  static ExactCost parse(std::string_view digits);

  /// base^exp
  static ExactCost power(std::uint64_t base, unsigned exp);

  const Value& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  /// True when the value fits in an unsigned 64-bit integer.
  bool fits_u64() const;
  std::uint64_t to_u64() const;

  ExactCost& operator+=(const ExactCost& o) {
    value_ += o.value_;
    return *this;
  }
  ExactCost& operator*=(const ExactCost& o) {
    value_ *= o.value_;
    return *this;
  }
  friend ExactCost operator+(ExactCost a, const ExactCost& b) { return a += b; }
  friend ExactCost operator*(ExactCost a, const ExactCost& b) { return a *= b; }
  friend ExactCost operator*(ExactCost a, std::uint64_t k) {
    a.value_ *= k;
    return a;
  }

  friend bool operator==(const ExactCost& a, const ExactCost& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactCost& a, const ExactCost& b) {
    const int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::string to_string() const { return value_.str(); }

 private:
  Value value_;
};

}  // namespace sched
