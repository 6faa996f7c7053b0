#include "hac/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <ostream>

#include "hac/errors.hpp"

namespace hac {
namespace {

// Magnitudes below this bound keep products of two operands (and a two-term
// sum of such products) inside __int128.
constexpr long long kSmallMax = (1LL << 62) - 1;

unsigned __int128 u128_abs(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
}

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from_ll(long long v) {
  static_assert(sizeof(long) == sizeof(long long), "expects LP64");
  return mpz_class(static_cast<long>(v));
}

bool mpz_to_ll(const mpz_class& z, long long* out) {
  if (!z.fits_slong_p()) return false;
  long v = z.get_si();
  if (v > kSmallMax || v < -kSmallMax) return false;
  *out = v;
  return true;
}

}  // namespace

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this == &o) return *this;
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
  return *this;
}

Rational::Rational(mpq_class q) : num_(0), den_(1), big_(std::make_unique<mpq_class>(std::move(q))) {}

Rational Rational::from_i128(__int128 num, __int128 den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational(0);
  unsigned __int128 g = gcd_u128(u128_abs(num), static_cast<unsigned __int128>(den));
  num /= static_cast<__int128>(g);
  den /= static_cast<__int128>(g);
  if (num <= kSmallMax && num >= -kSmallMax && den <= kSmallMax) {
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }
  // Rebuild through GMP; 128-bit halves via 64-bit shifts.
  auto to_mpz = [](__int128 v) {
    bool neg = v < 0;
    unsigned __int128 a = u128_abs(v);
    unsigned long long lo64 = static_cast<unsigned long long>(a);
    mpz_class hi = mpz_from_ll(static_cast<long long>(a >> 64));
    mpz_class lo;
    mpz_import(lo.get_mpz_t(), 1, 1, sizeof(lo64), 0, 0, &lo64);
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_mpq(mpq_class q) {
  q.canonicalize();
  long long n, d;
  if (mpz_to_ll(q.get_num(), &n) && mpz_to_ll(q.get_den(), &d)) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  return Rational(std::move(q));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_from_ll(num_), mpz_from_ll(den_));
  q.canonicalize();
  return q;
}

Rational Rational::fraction(long long num, long long den) {
  return from_i128(static_cast<__int128>(num), static_cast<__int128>(den));
}

Rational Rational::operator+(const Rational& o) const {
  if (!big_ && !o.big_) {
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return from_i128(n, d);
  }
  return from_mpq(to_mpq() + o.to_mpq());
}

Rational Rational::operator-(const Rational& o) const {
  if (!big_ && !o.big_) {
    __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return from_i128(n, d);
  }
  return from_mpq(to_mpq() - o.to_mpq());
}

Rational Rational::operator*(const Rational& o) const {
  if (!big_ && !o.big_) {
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return from_i128(n, d);
  }
  return from_mpq(to_mpq() * o.to_mpq());
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw UsageError("rational division by zero");
  if (!big_ && !o.big_) {
    __int128 n = static_cast<__int128>(num_) * o.den_;
    __int128 d = static_cast<__int128>(den_) * o.num_;
    return from_i128(n, d);
  }
  return from_mpq(to_mpq() / o.to_mpq());
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  return from_mpq(mpq_class(-*big_));
}

int Rational::cmp(const Rational& o) const {
  if (!big_ && !o.big_) {
    __int128 l = static_cast<__int128>(num_) * o.den_;
    __int128 r = static_cast<__int128>(o.num_) * den_;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  mpq_class a = to_mpq(), b = o.to_mpq();
  int c = ::cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int Rational::sign() const {
  if (!big_) return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0);
  return sgn(*big_);
}

double Rational::to_double() const {
  if (!big_) return static_cast<double>(num_) / static_cast<double>(den_);
  return big_->get_d();
}

std::string Rational::str() const {
  if (!big_) {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }
  if (big_->get_den() == 1) return big_->get_num().get_str();
  return big_->get_str();
}

Rational Rational::parse(std::string_view s) {
  auto bad = [&]() { throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  size_t slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (num.empty() || den.empty()) bad();
    for (size_t i = 0; i < num.size(); i++)
      if (!std::isdigit(static_cast<unsigned char>(num[i])) && !(i == 0 && (num[i] == '-' || num[i] == '+'))) bad();
    for (char c : den)
      if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    mpq_class q;
    if (q.set_str(num + "/" + den, 10) != 0) bad();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
    q.canonicalize();
    return from_mpq(std::move(q));
  }
  // Decimal literal: [+-]digits[.digits][(e|E)[+-]digits]
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    i++;
  }
  std::string digits;
  long frac_digits = 0, exponent = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    i++;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      frac_digits++;
      any = true;
    }
  }
  if (!any) bad();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    i++;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = s[i] == '-';
      i++;
    }
    if (i >= s.size()) bad();
    long e = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      e = e * 10 + (s[i] - '0');
      if (e > 100000) bad();
      i++;
    }
    exponent = eneg ? -e : e;
  }
  if (i != s.size()) bad();
  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  long shift = exponent - frac_digits;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
  q.canonicalize();
  return from_mpq(std::move(q));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hac
