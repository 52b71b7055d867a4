#include "sbs/arith.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace sbs {

int64_t gcd(int64_t a, int64_t b) {
  if (a == std::numeric_limits<int64_t>::min() || b == std::numeric_limits<int64_t>::min())
    throw OverflowError("gcd: argument out of range");
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int64_t lcm(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  int64_t g = gcd(a, b);
  int64_t r = checked_mul(a / g, b);
  return r < 0 ? -r : r;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t floor_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

int64_t isqrt(int64_t n) {
  if (n < 0) throw InputError("isqrt of a negative number");
  int64_t s = static_cast<int64_t>(__builtin_sqrt(static_cast<double>(n)));
  while (s > 0 && s > n / s) --s;
  while ((s + 1) <= n / (s + 1)) ++s;
  return s;
}

BezoutResult extended_gcd(int64_t a, int64_t b) {
  int64_t old_r = a, r = b;
  int64_t old_s = 1, s = 0;
  int64_t old_t = 0, t = 1;
  while (r != 0) {
    int64_t q = old_r / r;
    int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

int64_t mod_inverse(int64_t a, int64_t m) {
  if (m < 1) throw InputError("mod_inverse: modulus must be positive");
  auto [g, x, y] = extended_gcd(floor_mod(a, m), m);
  (void)y;
  if (g != 1) throw InputError("mod_inverse: argument not invertible");
  return floor_mod(x, m);
}

std::map<int64_t, int> factorize(int64_t n) {
  if (n < 1) throw InputError("factorize: argument must be positive");
  std::map<int64_t, int> out;
  for (int64_t p = 2; p <= n / p; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t p = 2; p <= n / p; ++p)
    if (n % p == 0) return false;
  return true;
}

int64_t ExtendedIndex::value() const {
  if (infinite_) throw std::logic_error("ExtendedIndex::value() called on infinity");
  return value_;
}

std::string ExtendedIndex::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

ExtendedIndex ExtendedIndex::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  if (text.empty()) throw InputError("empty index");
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') pos = 1;
  if (pos == text.size()) throw InputError("malformed index '" + text + "'");
  for (std::size_t i = pos; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InputError("malformed index '" + text + "' at column " + std::to_string(i + 1));
  try {
    return ExtendedIndex(std::stoll(text));
  } catch (const std::out_of_range&) {
    throw InputError("index '" + text + "' out of range");
  }
}

}  // namespace sbs
