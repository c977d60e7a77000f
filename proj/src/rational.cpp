#include "moduli_census/rational.hpp"

#include <cmath>

#include "moduli_census/errors.hpp"

namespace census {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) throw DomainError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s, std::size_t offset) {
    std::size_t i = 0;
    if (!s.empty() && s[0] == '-') i = 1;
    if (i == s.size()) throw ParseError("empty integer in rational", offset);
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw ParseError("invalid digit in rational", offset + j);
    }
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
  BigInt num = parse_int(text.substr(0, slash), 0);
  BigInt den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return Rational(num, den);
}

BigInt big_pow(long base, unsigned long exp) {
  BigInt r;
  BigInt b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
  return r;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base.sign() == 0) throw DomainError("zero to a negative power");
    return Rational(1) / rational_pow(base, -exp);
  }
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exp));
  return Rational(n, d);
}

double log_rational(const Rational& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive rational");
  // mpz_get_d_2exp keeps the mantissa in [0.5, 1) so huge numerators do not overflow.
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, x.raw().get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, x.raw().get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace census
