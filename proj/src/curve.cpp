#include "moduli_census/curve.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <limits>

#include "moduli_census/errors.hpp"

namespace census {

HyperellipticCurve::HyperellipticCurve(MonicPoly f) : f_(std::move(f)) {
  if (f_.degree() < 3) throw DomainError("curve degree gamma must be >= 3");
  if (!is_squarefree(f_)) throw DomainError("F must be square-free");
}

int curve_character(const HyperellipticCurve& c, const Poly& f) { return jacobi_reciprocity(c.f().poly(), f); }

std::uint64_t point_count(const HyperellipticCurve& c, int r, std::uint64_t budget) {
  if (r < 1) throw DomainError("extension degree must be >= 1");
  std::uint64_t order = 1;
  for (int i = 0; i < r; ++i) {
    order *= c.q();
    if (order > budget || order > kFieldOrderBudget) {
      throw BudgetError("point count over an extension of order beyond the budget");
    }
  }
  const auto k = extend_field(c.field(), r);
  const auto& coeffs = c.f().coeffs();
  // codes of base-field elements are unchanged in the extension
  std::int64_t total = 0;
  for (Code x = 0; x < order; ++x) {
    Code acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = k.add(k.mul(acc, x), coeffs[i]);
    total += 1 + k.chi(acc);
  }
  return static_cast<std::uint64_t>(total + c.points_at_infinity());
}

// ---------------------------------------------------------------------------
// Newton's identities

namespace {

/// Coefficients c_1..c_n of prod (1 - alpha t) from power sums p_1..p_n (exact).
std::vector<BigInt> coefficients_from_power_sums(const std::vector<BigInt>& p, int n) {
  std::vector<BigInt> c(n + 1);
  c[0] = 1;
  for (int i = 1; i <= n; ++i) {
    BigInt acc = 0;
    for (int j = 1; j <= i; ++j) acc += p[j - 1] * c[i - j];
    acc = -acc;
    if (acc % i != 0) throw ConsistencyError("Newton identity produced a non-integer coefficient");
    c[i] = acc / i;
  }
  return c;
}

/// Power sums p_1..p_count of the reciprocal roots of sum c_i t^i.
std::vector<BigInt> power_sums_from_coefficients(const std::vector<BigInt>& c, int count) {
  std::vector<BigInt> p(count);
  const int deg = static_cast<int>(c.size()) - 1;
  for (int m = 1; m <= count; ++m) {
    BigInt acc = m <= deg ? BigInt(m * c[m]) : BigInt(0);
    for (int j = 1; j < m; ++j) {
      if (m - j <= deg) acc += p[j - 1] * c[m - j];
    }
    p[m - 1] = -acc;
  }
  return p;
}

std::vector<BigInt> complete_by_functional_equation(std::vector<BigInt> low, int g, const BigInt& q) {
  low.resize(2 * g + 1);
  BigInt qp = 1;
  for (int i = g - 1; i >= 0; --i) {
    qp *= q;
    low[2 * g - i] = qp * low[i];
  }
  return low;
}

Rational eval_poly(const std::vector<BigInt>& c, const Rational& t) {
  Rational acc(0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + Rational(c[i]);
  return acc;
}

// --- rational polynomial helpers for the root check -------------------------

using QPoly = std::vector<mpq_class>;

void q_trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly q_rem(QPoly a, const QPoly& b) {
  q_trim(a);
  while (a.size() >= b.size()) {
    const mpq_class t = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= t * b[i];
    a.pop_back();
    q_trim(a);
  }
  return a;
}

QPoly q_div(QPoly a, const QPoly& b) {
  q_trim(a);
  if (a.size() < b.size()) return {};
  QPoly quo(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const mpq_class t = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    quo[shift] = t;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= t * b[i];
    a.pop_back();
  }
  return quo;
}

QPoly q_gcd(QPoly a, QPoly b) {
  q_trim(a);
  q_trim(b);
  while (!b.empty()) {
    QPoly r = q_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  const mpq_class lead = a.back();
  for (auto& v : a) v /= lead;
  return a;
}

}  // namespace

BigInt CurveZeta::power_sum(int m) const { return power_sums(m).back(); }

std::vector<BigInt> CurveZeta::power_sums(int count) const {
  if (count < 1) throw DomainError("power sum index must be >= 1");
  return power_sums_from_coefficients(c_, count);
}

Rational CurveZeta::eval(const Rational& t) const { return eval_poly(c_, t); }

std::vector<WeilRoot> weil_roots(const std::vector<BigInt>& l_poly) {
  const int n = static_cast<int>(l_poly.size()) - 1;
  if (n < 1) return {};
  // reversed polynomial prod (t - alpha), monic since c_0 = 1
  QPoly rev(n + 1);
  for (int i = 0; i <= n; ++i) rev[i] = mpq_class(l_poly[n - i]);
  QPoly deriv(n);
  for (int i = 1; i <= n; ++i) deriv[i - 1] = rev[i] * i;
  QPoly sqfree = q_div(rev, q_gcd(rev, deriv));
  const mpq_class lead = sqfree.back();
  for (auto& v : sqfree) v /= lead;
  const int d = static_cast<int>(sqfree.size()) - 1;

  using Real = long double;
  using Cx = std::complex<Real>;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> comp =
      Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d);
  std::vector<Real> coef(d + 1);
  for (int i = 0; i <= d; ++i) coef[i] = static_cast<Real>(sqfree[i].get_d());
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -coef[i];
  Eigen::EigenSolver<decltype(comp)> solver(comp, false);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eigenvalue solver did not converge");

  std::vector<WeilRoot> out;
  for (int i = 0; i < d; ++i) {
    Cx z = solver.eigenvalues()[i];
    // Newton polish on the square-free part, whose roots are simple
    for (int it = 0; it < 3; ++it) {
      Cx f = 0, df = 0;
      for (int j = d; j >= 0; --j) {
        df = df * z + f;
        f = f * z + coef[j];
      }
      if (std::abs(df) == 0) break;
      z -= f / df;
    }
    out.push_back({static_cast<double>(z.real()), static_cast<double>(z.imag())});
  }
  return out;
}

CurveZeta zeta_data(const HyperellipticCurve& curve, const ZetaOptions& opts) {
  CurveZeta z(curve);
  const int g = curve.genus();
  if (g < 1) throw DomainError("zeta data needs genus >= 1");
  const BigInt q(static_cast<unsigned long>(curve.q()));

  std::vector<BigInt> p(g);
  z.n_.resize(2 * g);
  BigInt qm = 1;
  for (int m = 1; m <= g; ++m) {
    qm *= q;
    z.n_[m - 1] = BigInt(static_cast<unsigned long>(point_count(curve, m)));
    p[m - 1] = qm + 1 - z.n_[m - 1];
  }
  z.counted_ = g;
  z.c_ = complete_by_functional_equation(coefficients_from_power_sums(p, g), g, q);

  // predicted counts beyond g, recounted where feasible
  const auto all_p = power_sums_from_coefficients(z.c_, 2 * g);
  qm = 1;
  for (int m = 1; m <= 2 * g; ++m) {
    qm *= q;
    if (m <= g) {
      if (all_p[m - 1] != p[m - 1]) throw ConsistencyError("Newton identities do not reproduce p_" + std::to_string(m));
      continue;
    }
    z.n_[m - 1] = qm + 1 - all_p[m - 1];
    if (z.n_[m - 1] < 0) throw ConsistencyError("predicted N_" + std::to_string(m) + " is negative");
    if (qm <= BigInt(static_cast<unsigned long>(std::min<std::uint64_t>(opts.cross_check_budget, kFieldOrderBudget)))) {
      const BigInt direct(static_cast<unsigned long>(point_count(curve, m)));
      if (direct != z.n_[m - 1]) {
        throw ConsistencyError("predicted N_" + std::to_string(m) + " = " + z.n_[m - 1].get_str() +
                               " but direct count is " + direct.get_str());
      }
      if (m == z.counted_ + 1) z.counted_ = m;
    }
  }

  // functional equation c_{2g-i} = q^{g-i} c_i
  BigInt qp = 1;
  for (int i = g; i >= 0; --i) {
    if (z.c_[2 * g - i] != qp * z.c_[i]) throw ConsistencyError("functional equation fails at i = " + std::to_string(i));
    qp *= q;
  }
  const Rational p1 = z.eval(Rational(1));
  const Rational pm1 = z.eval(Rational(-1));
  if (p1.sign() <= 0) throw ConsistencyError("P(1) is not positive");
  if ((p1 * pm1).sign() <= 0) throw ConsistencyError("P(1)P(-1) is not positive");

  if (opts.check_riemann_hypothesis) {
    const double sq = std::sqrt(static_cast<double>(curve.q()));
    double worst = 0.0;
    for (const auto& r : weil_roots(z.c_)) worst = std::max(worst, std::abs(std::hypot(r.re, r.im) - sq));
    z.rh_deviation_ = worst;
    if (worst >= opts.rh_tolerance) throw ConsistencyError("Riemann hypothesis root check failed");
  }
  return z;
}

// ---------------------------------------------------------------------------
// character-sum route

std::vector<BigInt> character_sum_series(const HyperellipticCurve& c) {
  const int top = 2 * c.genus() + c.delta();
  const auto& k = c.field();
  const std::uint64_t q = c.q();
  std::vector<BigInt> s(top + 1);
  std::uint64_t count = 1;
  for (int n = 0; n <= top; ++n) {
    long acc = 0;
    for (std::uint64_t i = 0; i < count; ++i) acc += curve_character(c, monic_from_index(k, n, i).poly());
    s[n] = acc;
    count *= q;
  }
  return s;
}

std::vector<BigInt> l_poly_via_characters(const CurveZeta& z) {
  const auto& c = z.curve();
  auto s = character_sum_series(c);
  std::vector<BigInt> l;
  if (c.delta() == 0) {
    l = std::move(s);
  } else {
    // S(t) = (1 - t) P(t): the coefficients of P are the prefix sums of S
    BigInt run = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      run += s[i];
      l.push_back(run);
    }
    if (l.back() != 0) throw ConsistencyError("even-degree character sum is not divisible by 1 - t");
    l.pop_back();
  }
  if (l != z.l_poly()) throw ConsistencyError("character-sum L-polynomial disagrees with the point-count route");
  return l;
}

// ---------------------------------------------------------------------------

Rational zeta_value(const CurveZeta& z, int k) {
  if (k <= 1) throw DomainError("zeta_X(k) has a pole or is outside the supported range for k <= 1");
  const Rational qq(static_cast<long>(z.q()));
  const Rational u = rational_pow(qq, -k);
  return z.eval(u) / ((Rational(1) - u) * (Rational(1) - qq * u));
}

std::vector<BigInt> base_change_l_poly(const CurveZeta& z, int r) {
  if (r < 1) throw DomainError("base change degree must be >= 1");
  const int g = z.genus();
  const auto p = z.power_sums(r * g);
  std::vector<BigInt> pr(g);
  for (int m = 1; m <= g; ++m) pr[m - 1] = p[r * m - 1];
  return complete_by_functional_equation(coefficients_from_power_sums(pr, g), g,
                                         big_pow(static_cast<long>(z.q()), static_cast<unsigned long>(r)));
}

BigInt jacobian_count(const CurveZeta& z, int r) {
  const Rational p1 = z.eval(Rational(1));
  if (r == 1) return p1.num();
  if (r != 2) throw DomainError("jacobian_count supports r in {1, 2}");
  const Rational value = p1 * z.eval(Rational(-1));
  const Rational base_changed = eval_poly(base_change_l_poly(z, 2), Rational(1));
  if (value != base_changed) throw ConsistencyError("P(1)P(-1) disagrees with the base-changed L-polynomial");
  return value.num();
}

// ---------------------------------------------------------------------------
// validators

EpsilonTerms epsilon_terms(const CurveZeta& z, int k, int cutoff) {
  if (k < 2) throw DomainError("epsilon terms need k >= 2");
  if (cutoff < 1) throw DomainError("cutoff Z must be >= 1");
  EpsilonTerms e;
  e.k = k;
  e.cutoff = cutoff;
  const double qd = static_cast<double>(z.q());
  const Rational qq(static_cast<long>(z.q()));
  const int g = z.genus();

  // enough tail terms for the series to fall below double resolution
  const int tail_terms = cutoff + 8 + static_cast<int>(std::ceil(80.0 / ((k - 0.5) * std::log2(qd))));
  const auto p = z.power_sums(tail_terms);
  Rational eps1(0);
  for (int m = 1; m <= cutoff; ++m) eps1 -= Rational(p[m - 1]) / (Rational(m) * rational_pow(qq, static_cast<long>(k) * m));
  e.eps1 = eps1;

  const Rational pval = z.eval(rational_pow(qq, -k));
  e.log_zeta_normalized = std::log1p((pval - Rational(1)).to_double());
  e.eps2 = e.log_zeta_normalized - eps1.to_double();
  double tail = 0.0;
  for (int m = tail_terms; m > cutoff; --m) tail -= (Rational(p[m - 1]) / (Rational(m) * rational_pow(qq, static_cast<long>(k) * m))).to_double();
  e.eps2_tail = tail;

  const double h = (2.0 * k - 1.0) / 2.0;
  e.eps2_bound = 2.0 * g / (cutoff + 1) * std::pow(qd, -h * (cutoff + 1)) / (1.0 - std::pow(qd, -h));
  if (cutoff >= 2) {
    e.eps1_bound = 1.0 / (qd - 1.0) + (1.5 + std::log(static_cast<double>(cutoff)) - std::log(2.0)) / std::pow(qd, k);
  } else {
    e.eps1_bound = 1.0 / std::pow(qd, k - 1) + 1.0 / std::pow(qd, k);
  }
  e.eps1_ok = std::abs(eps1.to_double()) <= e.eps1_bound;
  e.eps2_ok = std::abs(e.eps2) <= e.eps2_bound;
  return e;
}

LambdaIdentity lambda_character_identity(const CurveZeta& z, int m, std::uint64_t budget) {
  if (m < 1) throw DomainError("m must be >= 1");
  const auto& c = z.curve();
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) {
    count *= c.q();
    if (count > budget) throw BudgetError("too many monic polynomials for the identity check");
  }
  LambdaIdentity r;
  r.m = m;
  r.lhs = -z.power_sum(m);
  long acc = c.delta();
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto f = monic_from_index(c.field(), m, i);
    const int lam = von_mangoldt(f);
    if (lam != 0) acc += lam * curve_character(c, f.poly());
  }
  r.rhs = acc;
  r.holds = r.lhs == r.rhs;
  return r;
}

XzReport xz_bound_check(const CurveZeta& z, double c_prime) {
  XzReport r;
  r.c_prime = c_prime;
  const double qd = static_cast<double>(z.q());
  const double lq = std::log(qd);
  const int g = z.genus();
  r.lhs = std::abs(log_rational(Rational(jacobian_count(z, 1))) - g * lq);
  r.rhs = std::log(std::max(1.0, std::log(7.0 * g) / lq)) + 3.0;
  r.pass = r.lhs <= r.rhs;

  constexpr double kN = 2.0;
  const double loglog_g = std::log(std::log(static_cast<double>(g)));
  r.zeta_envelope_pass = true;
  r.required_c_prime = 0.0;
  for (int k = 2; k <= 3; ++k) {
    const double lz = log_rational(zeta_value(z, k));
    // log of the envelope is +- c' N (log log g / q^k + 1/sqrt q)
    const double unit = kN * (loglog_g / std::pow(qd, k) + 1.0 / std::sqrt(qd));
    if (unit <= 0.0) {
      r.zeta_envelope_pass = false;
      r.required_c_prime = std::numeric_limits<double>::infinity();
      continue;
    }
    if (std::abs(lz) > c_prime * unit) r.zeta_envelope_pass = false;
    r.required_c_prime = std::max(r.required_c_prime, std::abs(lz) / unit);
  }
  return r;
}

}  // namespace census
