#include "adhm/rational.hpp"

#include <numeric>
#include <sstream>

namespace adhm {

namespace {

using I128 = __int128;

// std::gcd over __int128 depends on compiler extensions; keep it explicit.
I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t checked_narrow(I128 v, const char* what) {
  if (v > static_cast<I128>(INT64_MAX) || v < static_cast<I128>(INT64_MIN)) {
    throw ParameterError(std::string("rational overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw ParameterError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  I128 n = static_cast<I128>(num_) * o.den_ + static_cast<I128>(o.num_) * den_;
  I128 d = static_cast<I128>(den_) * o.den_;
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = checked_narrow(n, "+");
  r.den_ = checked_narrow(d, "+");
  return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  I128 n = static_cast<I128>(num_) * o.num_;
  I128 d = static_cast<I128>(den_) * o.den_;
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = checked_narrow(n, "*");
  r.den_ = checked_narrow(d, "*");
  return r;
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<I128>(num_) * o.den_ < static_cast<I128>(o.num_) * den_;
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

Rational Rational::parse(const std::string& text) {
  std::istringstream is(text);
  std::int64_t n = 0;
  if (!(is >> n)) throw ParameterError("malformed rational: " + text);
  char slash = 0;
  if (is >> slash) {
    if (slash != '/') throw ParameterError("malformed rational: " + text);
    std::int64_t d = 0;
    if (!(is >> d)) throw ParameterError("malformed rational: " + text);
    char extra = 0;
    if (is >> extra) throw ParameterError("malformed rational: " + text);
    return Rational(n, d);
  }
  return Rational(n);
}

}  // namespace adhm
