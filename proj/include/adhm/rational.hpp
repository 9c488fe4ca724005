#pragma once

#include "adhm/types.hpp"

#include <cstdint>
#include <string>

namespace adhm {

/// Exact rational number over 64-bit integers, used for stability parameters
/// and slope comparisons, which must never go through floating point.
/// Always stored normalized: den > 0, gcd(|num|, den) = 1.
/// Comparisons and arithmetic use 128-bit intermediates to avoid overflow in
/// the ranges this project needs (dimension-sized numerators/denominators).
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d);       ///< throws ParameterError if d == 0

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p" when integral, "p/q" otherwise.
  std::string str() const;

  /// Parses "p" or "p/q"; throws ParameterError on malformed input.
  static Rational parse(const std::string& text);

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace adhm
