#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hac {

// Exact rational number. Values are always canonical: gcd(num, den) == 1 and
// den > 0. Small values live in a pair of int64 fields and all arithmetic on
// them runs through __int128; results that no longer fit are promoted to a
// heap-allocated mpq. Promotion is an internal detail -- comparisons and
// arithmetic are exact in either representation.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(int v) : num_(v), den_(1) {}        // NOLINT

  Rational(const Rational& o);
  Rational(Rational&& o) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&& o) noexcept = default;

  // num/den reduced to lowest terms; throws UsageError if den == 0.
  static Rational fraction(long long num, long long den);

  // Accepts "p/q", plain integers, and decimal literals with an optional
  // exponent ("0.5", "-3.25e2"). Throws std::invalid_argument on junk.
  static Rational parse(std::string_view s);

  // Round-trips through parse() bit-exactly: "p" when den == 1, else "p/q".
  std::string str() const;

  double to_double() const;

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws UsageError on /0
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Three-way comparison: -1, 0, +1.
  int cmp(const Rational& o) const;
  bool operator==(const Rational& o) const { return cmp(o) == 0; }
  bool operator!=(const Rational& o) const { return cmp(o) != 0; }
  bool operator<(const Rational& o) const { return cmp(o) < 0; }
  bool operator<=(const Rational& o) const { return cmp(o) <= 0; }
  bool operator>(const Rational& o) const { return cmp(o) > 0; }
  bool operator>=(const Rational& o) const { return cmp(o) >= 0; }

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  // True while the value still fits the int64 fast path (exposed for tests).
  bool is_small() const { return big_ == nullptr; }

  mpq_class to_mpq() const;

 private:
  explicit Rational(mpq_class q);
  static Rational from_i128(__int128 num, __int128 den);
  static Rational from_mpq(mpq_class q);

  long long num_;
  long long den_;
  std::unique_ptr<mpq_class> big_;  // engaged => num_/den_ are ignored
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace hac
