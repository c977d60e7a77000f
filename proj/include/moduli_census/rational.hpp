#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace census {

using BigInt = mpz_class;

/// Exact rational number. Always kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& n) : v_(n) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }

  /// "num/den", or just "num" when the denominator is 1.
  std::string str() const;
  /// Inverse of str(); also accepts surrounding whitespace-free "a" and "a/b" with b != 0.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_{0};
};

/// base^exp for a possibly negative exponent.
Rational rational_pow(const Rational& base, long exp);
BigInt big_pow(long base, unsigned long exp);
/// Natural log of a positive rational, accurate even when the value over/underflows a double.
double log_rational(const Rational& x);

}  // namespace census
