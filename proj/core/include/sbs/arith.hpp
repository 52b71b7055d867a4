#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbs {

/// Raised for malformed input or a violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exact integer computation leaves the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Non-negative gcd; gcd(0, 0) = 0.
int64_t gcd(int64_t a, int64_t b);
int64_t lcm(int64_t a, int64_t b);

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

/// Floor division and the matching non-negative remainder for b > 0.
int64_t floor_div(int64_t a, int64_t b);
int64_t floor_mod(int64_t a, int64_t b);

/// Largest s with s*s <= n, for n >= 0.
int64_t isqrt(int64_t n);

struct BezoutResult {
  int64_t gcd;
  int64_t x;
  int64_t y;
};

/// a*x + b*y = gcd(a, b) with gcd >= 0.
BezoutResult extended_gcd(int64_t a, int64_t b);

/// Inverse of a modulo m (m >= 1); throws InputError when gcd(a, m) != 1.
int64_t mod_inverse(int64_t a, int64_t m);

/// Prime factorization by trial division: prime -> exponent.
std::map<int64_t, int> factorize(int64_t n);

bool is_prime(int64_t n);

/// An index in {..., -1, 0, 1, ...} extended by a distinguished infinity.
/// Used for the Barden invariant i(M) and the j index of the X_j summand.
class ExtendedIndex {
 public:
  constexpr ExtendedIndex() = default;
  constexpr explicit ExtendedIndex(int64_t value) : value_(value) {}

  static constexpr ExtendedIndex infinity() {
    ExtendedIndex e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Throws std::logic_error on infinity.
  int64_t value() const;

  constexpr bool operator==(const ExtendedIndex& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  constexpr std::strong_ordering operator<=>(const ExtendedIndex& o) const {
    if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
    return value_ <=> o.value_;
  }

  /// "inf" or the decimal value.
  std::string to_string() const;
  /// Accepts "inf", "infinity", "oo" or a decimal integer.
  static ExtendedIndex parse(const std::string& text);

 private:
  int64_t value_ = 0;
  bool infinite_ = false;
};

}  // namespace sbs
