#pragma once

#include <array>
#include <string>
#include <vector>

#include "moduli_census/curve.hpp"
#include "moduli_census/rational.hpp"

namespace census {

/// Siegel mass q^((r^2-1)(g-1)) zeta(2)...zeta(r) / (q - 1); 2 <= r <= 4, g >= 2.
Rational siegel_mass(const CurveZeta& z, int r);

/// Masses beta(r, d) of semistable bundles for r <= 3 together with the unstable strata
/// C(n_1, ..., n_m; d). All values are computed eagerly, so a table is immutable and can be
/// shared between threads.
class BetaTable {
 public:
  explicit BetaTable(const CurveZeta& z);

  const CurveZeta& zeta() const { return *z_; }
  /// beta(r, d) for r in {1, 2, 3}; depends only on d mod r.
  const Rational& beta(int r, long d) const;
  /// Exact lattice sum over Harder-Narasimhan types with ranks `partition` and total degree d.
  /// Supported partitions: (1,1), (2,1), (1,2), (1,1,1); others throw UnsupportedError.
  Rational unstable_mass(const std::vector<int>& partition, long d) const;
  const Rational& siegel(int r) const { return siegel_[r]; }
  const Rational& jacobian() const { return nj_; }

 private:
  Rational c11(long d) const;
  Rational c21(long d) const;
  Rational c12(long d) const;
  Rational c111(long d) const;

  const CurveZeta* z_;
  Rational q_;
  int g_;
  Rational nj_;
  std::array<Rational, 5> siegel_;
  std::array<Rational, 2> beta2_;
  std::array<Rational, 3> beta3_;
  Rational beta1_;
};

/// Convenience wrappers building a BetaTable.
Rational unstable_mass(const CurveZeta& z, const std::vector<int>& partition, long d);
Rational beta(const CurveZeta& z, int r, long d);

struct CrossCheck {
  std::string name;
  Rational expected;
  Rational got;
  Rational residual() const { return got - expected; }
};

struct ModuliReport {
  std::string target;
  Rational value;
  bool is_integer = false;
  std::vector<std::pair<std::string, bool>> hypotheses;
  std::vector<CrossCheck> cross_checks;
  std::vector<std::pair<std::string, Rational>> components;

  const CrossCheck* find_check(const std::string& name) const;
  const Rational* find_component(const std::string& name) const;
};

/// N_q(M_L(r, d)) = (q - 1) beta(r, d) for gcd(r, d) = 1, r in {2, 3}.
ModuliReport count_stable_fixed_det(const CurveZeta& z, int r, long d);
ModuliReport count_stable_fixed_det(const BetaTable& t, int r, long d);

/// q^3 + q^2 + q + 1 - q p_1, the point count of M_L(2, 1) in genus 2.
BigInt genus2_oracle(const CurveZeta& z);

/// True when F splits into distinct linear factors over F_q.
bool full_2_torsion(const HyperellipticCurve& c);

/// Stable locus of M_O(2, 0) via the four-term closed form, with its component masses and
/// the component assembly recorded as a cross-check.
ModuliReport count_ms20(const CurveZeta& z);

/// Seshadri desingularization N~(4, 0); requires g >= 3.
ModuliReport count_ntilde(const CurveZeta& z);

/// Gaussian binomial [n choose k]_q; 0 when k > n.
BigInt grassmannian_count(std::uint64_t q, int k, int n);
/// (q^(m+1) - 1)/(q - 1).
BigInt projective_count(const BigInt& q, int m);

/// Rank-2 Higgs bundles of odd degree: N = q^(4g-3) A_{g,2}, A = A_1 + A_2 + A_3.
ModuliReport count_higgs(const CurveZeta& z);

struct LogEstimate {
  double estimate = 0.0;
  double envelope = 0.0;
};
/// (r^2-1)(g-1) log q + sum_{k=2}^r log zeta(k) with envelope C (A + q^(-sigma g) e^A),
/// A = 2 (1/sqrt q + log log g / q^2).
LogEstimate log_count_estimate(const CurveZeta& z, int r, double big_c = 10.0, double sigma = 0.5);

/// Upper envelopes for the rank-3 strata: C(1,1,1) and C(2,1) = C(1,2).
Rational envelope_c111(const CurveZeta& z);
Rational envelope_c21(const CurveZeta& z);

enum class ConstantVariant { kBase, kThm15, kThm16, kHiggs };
ConstantVariant parse_constant_variant(const std::string& name);

/// C_q(r) and its variants for the family of degree gamma.
double family_constant(std::uint64_t q, int gamma, ConstantVariant variant, int r = 2);

}  // namespace census
