#include "hahn/rational.hpp"

#include <ostream>

namespace hahn {

namespace {
void check_range(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw overflow_error(std::string("integer overflow in ") + what);
  }
}
}  // namespace

int64_t checked_add(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) + b;
  check_range(r, "add");
  return static_cast<int64_t>(r);
}

int64_t checked_sub(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) - b;
  check_range(r, "sub");
  return static_cast<int64_t>(r);
}

int64_t checked_mul(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  check_range(r, "mul");
  return static_cast<int64_t>(r);
}

int64_t checked_pow(int64_t base, int exp) {
  if (exp < 0) throw std::invalid_argument("checked_pow: negative exponent");
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

int64_t gcd64(int64_t a, int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = checked_sub(0, num);
    den = checked_sub(0, den);
  }
  int64_t g = gcd64(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::operator+(const Rational& o) const {
  // Reduce via gcd of denominators first to keep intermediates small.
  int64_t g = gcd64(den_, o.den_);
  int64_t lhs = checked_mul(num_, o.den_ / g);
  int64_t rhs = checked_mul(o.num_, den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  int64_t g1 = gcd64(num_, o.den_);
  int64_t g2 = gcd64(o.num_, den_);
  return Rational(checked_mul(num_ / g1, o.num_ / g2),
                  checked_mul(den_ / g2, o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  // den > 0 on both sides; cross-multiplying in 128 bits is exact.
  return static_cast<__int128>(num_) * o.den_ <
         static_cast<__int128>(o.num_) * den_;
}

int64_t Rational::floor() const {
  int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace hahn
