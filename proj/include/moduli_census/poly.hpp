#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "moduli_census/field.hpp"
#include "moduli_census/rational.hpp"

namespace census {

/// Dense polynomial over a finite field, coefficients ascending, no trailing zeros.
/// The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  explicit Poly(FieldHandle f) : f_(std::move(f)) {}
  Poly(FieldHandle f, std::vector<Code> coeffs);

  static Poly constant(const FieldHandle& f, Code c);
  static Poly x(const FieldHandle& f);

  const FieldHandle& field() const { return f_; }
  const std::vector<Code>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Code lead() const { return c_.empty() ? 0 : c_.back(); }
  Code operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Code eval(Code at) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim();
  FieldHandle f_;
  std::vector<Code> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Code c);

struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
Poly make_monic(const Poly& a);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
Poly powmod(const Poly& base, const BigInt& e, const Poly& m);
/// Inverse of the Frobenius on coefficients: returns h with h(x)^p = f(x^p) when f' = 0.
Poly pth_root(const Poly& f);

/// A monic polynomial of degree >= 0. The norm is |f| = q^deg f.
class MonicPoly {
 public:
  /// Throws DomainError unless `p` is nonzero with leading coefficient 1.
  explicit MonicPoly(Poly p);
  MonicPoly(const FieldHandle& f, std::vector<Code> coeffs) : MonicPoly(Poly(f, std::move(coeffs))) {}

  /// Parses the comma-separated ascending coefficient format, e.g. "0,1,0,0,0,1" for x^5 + x.
  static MonicPoly parse(const FieldHandle& f, std::string_view text);
  /// Inverse of parse().
  std::string str() const;

  const Poly& poly() const { return p_; }
  const FieldHandle& field() const { return p_.field(); }
  int degree() const { return p_.degree(); }
  const std::vector<Code>& coeffs() const { return p_.coeffs(); }
  BigInt norm() const;

  friend MonicPoly operator*(const MonicPoly& a, const MonicPoly& b) { return MonicPoly(a.p_ * b.p_); }
  friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.p_ == b.p_; }
  friend bool operator!=(const MonicPoly& a, const MonicPoly& b) { return !(a == b); }

 private:
  Poly p_;
};

bool is_squarefree(const MonicPoly& f);
bool is_squarefree(const Poly& f);
bool is_irreducible(const MonicPoly& f);
/// Rabin's test on a general nonzero polynomial of degree >= 1.
bool is_irreducible(const Poly& f);

/// deg P if f = P^k for a monic irreducible P, else 0.
int von_mangoldt(const MonicPoly& f);

/// Irreducible factors of a square-free monic polynomial (distinct-degree then
/// Cantor-Zassenhaus equal-degree splitting with a fixed seed), sorted by (degree, coefficients).
std::vector<MonicPoly> factor_squarefree(const MonicPoly& f);

/// Jacobi symbol (f/F) for F monic square-free: product over irreducible P | F of the
/// quadratic residue symbol of f modulo P. Uses reciprocity; throws DomainError when F is
/// not square-free.
int jacobi_symbol(const MonicPoly& f, const MonicPoly& big_f);
/// Factorization route: factor F and evaluate f^((|P|-1)/2) mod P per factor.
int jacobi_symbol_by_factoring(const MonicPoly& f, const MonicPoly& big_f);
/// Reciprocity route on a general top argument and any monic modulus (square-free or not),
/// (a/g) = (g/a) (-1)^(((q-1)/2) deg a deg g) for monic coprime a, g; (c/g) = chi(c)^deg g.
int jacobi_reciprocity(const Poly& a, const Poly& g);

/// Number of monic irreducibles of degree n over F_q (Moebius formula, exact).
std::uint64_t prime_count(std::uint64_t q, int n);

/// All monic irreducibles of degree n, in increasing coefficient-code order. Cached per field.
const std::vector<MonicPoly>& monic_irreducibles(const FieldHandle& f, int n);

/// The monic polynomial of degree n whose low coefficients are the base-q digits of index.
MonicPoly monic_from_index(const FieldHandle& f, int n, std::uint64_t index);

}  // namespace census
