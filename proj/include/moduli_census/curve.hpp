#pragma once

#include <cstdint>
#include <vector>

#include "moduli_census/field.hpp"
#include "moduli_census/poly.hpp"
#include "moduli_census/rational.hpp"

namespace census {

/// y^2 = F(x) with F monic square-free of degree gamma >= 3.
class HyperellipticCurve {
 public:
  /// Throws DomainError when F is not square-free or gamma < 3.
  explicit HyperellipticCurve(MonicPoly f);

  const FieldHandle& field() const { return f_.field(); }
  const MonicPoly& f() const { return f_; }
  std::uint64_t q() const { return field().order(); }
  int gamma() const { return f_.degree(); }
  int genus() const { return (gamma() - 1) / 2; }
  /// 1 for even gamma, else 0.
  int delta() const { return gamma() % 2 == 0 ? 1 : 0; }
  /// Rational points at infinity of the smooth model over every extension.
  int points_at_infinity() const { return gamma() % 2 == 0 ? 2 : 1; }

 private:
  MonicPoly f_;
};

/// The curve's quadratic character on monic f: the Jacobi symbol (F/f).
int curve_character(const HyperellipticCurve& c, const Poly& f);

/// N_r = sum over x in F_{q^r} of (1 + chi(F(x))) plus the points at infinity.
/// Throws BudgetError when q^r exceeds `budget`.
std::uint64_t point_count(const HyperellipticCurve& c, int r, std::uint64_t budget = kFieldOrderBudget);

struct ZetaOptions {
  /// Predicted N_m for m > g are recounted directly when q^m is at most this.
  std::uint64_t cross_check_budget = 1'000'000;
  bool check_riemann_hypothesis = true;
  double rh_tolerance = 1e-9;
};

/// Zeta data of a curve: point counts, power sums and the L-polynomial
/// P(t) = sum c_i t^i = prod (1 - alpha_l t).
class CurveZeta {
 public:
  const HyperellipticCurve& curve() const { return curve_; }
  std::uint64_t q() const { return curve_.q(); }
  int genus() const { return curve_.genus(); }
  /// N_1 .. N_{2g}; entries beyond g are predicted from P and recounted where feasible.
  const std::vector<BigInt>& counts() const { return n_; }
  /// c_0 .. c_{2g}.
  const std::vector<BigInt>& l_poly() const { return c_; }
  /// p_m = q^m + 1 - N_m for any m >= 1 (from Newton's identities beyond 2g).
  BigInt power_sum(int m) const;
  /// p_1 .. p_count.
  std::vector<BigInt> power_sums(int count) const;
  /// Number of entries of counts() obtained by direct counting.
  int counted() const { return counted_; }
  /// P evaluated at a rational point.
  Rational eval(const Rational& t) const;
  /// Largest | |alpha| - sqrt(q) | seen by the root check (0 when skipped).
  double rh_deviation() const { return rh_deviation_; }

 private:
  friend CurveZeta zeta_data(const HyperellipticCurve&, const ZetaOptions&);
  explicit CurveZeta(HyperellipticCurve c) : curve_(std::move(c)) {}
  HyperellipticCurve curve_;
  std::vector<BigInt> n_;
  std::vector<BigInt> c_;
  int counted_ = 0;
  double rh_deviation_ = 0.0;
};

/// Builds P(t) from N_1..N_g via Newton's identities and the functional equation, then checks
/// integrality, the functional equation, positivity of P(1) and P(1)P(-1), the root check and
/// the recounted N_m. Any failure throws ConsistencyError naming the check.
CurveZeta zeta_data(const HyperellipticCurve& c, const ZetaOptions& opts = {});

/// Distinct reciprocal roots alpha_l of P as complex numbers.
struct WeilRoot {
  double re;
  double im;
};
std::vector<WeilRoot> weil_roots(const std::vector<BigInt>& l_poly);

/// Raw character sum S(t) = sum over monic f with deg f <= 2g (+1 for even gamma) of chi(f) t^deg f,
/// with chi the curve character.
std::vector<BigInt> character_sum_series(const HyperellipticCurve& c);
/// P(t) from the character sum (dividing by 1 - t for even gamma); throws ConsistencyError
/// when it disagrees with z.l_poly() or when the even-gamma division is not exact.
std::vector<BigInt> l_poly_via_characters(const CurveZeta& z);

/// zeta_X(k) = P(q^-k) / ((1 - q^-k)(1 - q^(1-k))); DomainError for k <= 1.
Rational zeta_value(const CurveZeta& z, int k);

/// N_{q^r}(J) for r in {1, 2}. For r = 2 the value P(1)P(-1) is cross-checked against the
/// L-polynomial of the base change to F_{q^2}.
BigInt jacobian_count(const CurveZeta& z, int r);
/// The L-polynomial of the base change to F_{q^r}, from the power sums p_{rm}.
std::vector<BigInt> base_change_l_poly(const CurveZeta& z, int r);

struct EpsilonTerms {
  int k = 2;
  int cutoff = 1;
  Rational eps1;
  double eps2 = 0.0;
  /// eps2 summed directly from the tail of the power-sum series.
  double eps2_tail = 0.0;
  /// log zeta(k) - (2k-1) log q + log((q^k-1)(q^(k-1)-1)).
  double log_zeta_normalized = 0.0;
  double eps1_bound = 0.0;
  double eps2_bound = 0.0;
  bool eps1_ok = false;
  bool eps2_ok = false;
};
EpsilonTerms epsilon_terms(const CurveZeta& z, int k, int cutoff);

struct LambdaIdentity {
  int m = 1;
  BigInt lhs;  // -p_m
  BigInt rhs;  // sum Lambda(f) chi(f) + delta
  bool holds = false;
};
/// Checks -p_m = sum over monic f of degree m of Lambda(f) chi(f) + delta by enumeration.
LambdaIdentity lambda_character_identity(const CurveZeta& z, int m, std::uint64_t budget = 2'000'000);

struct XzReport {
  double lhs = 0.0;  // |log N_q(J) - g log q|
  double rhs = 0.0;  // log max{1, log(7g)/log q} + 3
  bool pass = false;
  double c_prime = 8.0;
  /// Two-sided zeta envelope at k = 2 and k = 3.
  bool zeta_envelope_pass = false;
  /// Smallest c' for which both zeta envelopes hold (infinity if none does).
  double required_c_prime = 0.0;
};
/// Jacobian bound with N = 2 and the log-zeta envelope with constant c'.
XzReport xz_bound_check(const CurveZeta& z, double c_prime = 8.0);

}  // namespace census
