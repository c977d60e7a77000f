#include "moduli_census/moduli.hpp"

#include <cmath>
#include <numeric>

#include "moduli_census/errors.hpp"

namespace census {

namespace {

long floor_div(long a, long b) {
  long quo = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --quo;
  return quo;
}

long mod(long a, long b) {
  const long r = a % b;
  return r < 0 ? r + b : r;
}

Rational qpow(const Rational& q, long e) { return rational_pow(q, e); }

void require_genus(const CurveZeta& z, int min_g, const char* what) {
  if (z.genus() < min_g) {
    throw DomainError(std::string(what) + " requires genus >= " + std::to_string(min_g));
  }
}

}  // namespace

Rational siegel_mass(const CurveZeta& z, int r) {
  require_genus(z, 2, "siegel_mass");
  if (r < 2 || r > 4) throw DomainError("siegel_mass supports 2 <= r <= 4");
  const Rational q(static_cast<long>(z.q()));
  Rational v = qpow(q, static_cast<long>(r * r - 1) * (z.genus() - 1)) / (q - Rational(1));
  for (int k = 2; k <= r; ++k) v *= zeta_value(z, k);
  return v;
}

// ---------------------------------------------------------------------------
// BetaTable

BetaTable::BetaTable(const CurveZeta& z) : z_(&z), q_(static_cast<long>(z.q())), g_(z.genus()) {
  require_genus(z, 2, "BetaTable");
  nj_ = Rational(jacobian_count(z, 1));
  for (int r = 2; r <= 4; ++r) siegel_[r] = siegel_mass(z, r);
  beta1_ = Rational(1) / (q_ - Rational(1));
  for (int d = 0; d < 2; ++d) beta2_[d] = siegel_[2] - c11(d);
  for (int d = 0; d < 3; ++d) beta3_[d] = siegel_[3] - c111(d) - c21(d) - c12(d);
}

const Rational& BetaTable::beta(int r, long d) const {
  switch (r) {
    case 1:
      return beta1_;
    case 2:
      return beta2_[mod(d, 2)];
    case 3:
      return beta3_[mod(d, 3)];
    default:
      throw UnsupportedError("beta is available for ranks 1..3");
  }
}

// d1 > d2, chi = 2 d1 - d + (1 - g)
Rational BetaTable::c11(long d) const {
  const long s = floor_div(d, 2) + 1;
  const Rational x = qpow(q_, -2);
  return nj_ * beta1_ * beta1_ * qpow(q_, d + g_ - 1) * qpow(q_, -2 * s) / (Rational(1) - x);
}

// d1/2 > d - d1, chi = 3 d1 - 2d + 2(1 - g)
Rational BetaTable::c21(long d) const {
  const long d1 = floor_div(2 * d, 3) + 1;
  const Rational geo = qpow(q_, -3 * d1) / (Rational(1) - qpow(q_, -6));
  const Rational betas = beta(2, d1) + qpow(q_, -3) * beta(2, d1 + 1);
  return nj_ * beta1_ * qpow(q_, 2L * (g_ - 1) + 2 * d) * geo * betas;
}

// d1 > (d - d1)/2, chi = 3 d1 - d + 2(1 - g)
Rational BetaTable::c12(long d) const {
  const long d1 = floor_div(d, 3) + 1;
  const Rational geo = qpow(q_, -3 * d1) / (Rational(1) - qpow(q_, -6));
  const Rational betas = beta(2, d - d1) + qpow(q_, -3) * beta(2, d - d1 - 1);
  return nj_ * beta1_ * qpow(q_, 2L * (g_ - 1) + d) * geo * betas;
}

// d1 > d2 > d3 with gaps a = d1 - d2, b = d2 - d3; chi = 2(a + b) + 3(1 - g), a + 2b = d mod 3
Rational BetaTable::c111(long d) const {
  const Rational x = qpow(q_, -2);
  const Rational x3 = x * x * x;
  const Rational denom = (Rational(1) - x3) * (Rational(1) - x3);
  Rational sum(0);
  for (long b0 = 1; b0 <= 3; ++b0) {
    long a0 = mod(d - 2 * b0, 3);
    if (a0 == 0) a0 = 3;
    sum += qpow(x, a0 + b0) / denom;
  }
  return nj_ * nj_ * beta1_ * beta1_ * beta1_ * qpow(q_, 3L * (g_ - 1)) * sum;
}

Rational BetaTable::unstable_mass(const std::vector<int>& partition, long d) const {
  if (partition == std::vector<int>{1, 1}) return c11(d);
  if (partition == std::vector<int>{2, 1}) return c21(d);
  if (partition == std::vector<int>{1, 2}) return c12(d);
  if (partition == std::vector<int>{1, 1, 1}) return c111(d);
  throw UnsupportedError("unstable_mass supports the partitions (1,1), (2,1), (1,2), (1,1,1)");
}

Rational unstable_mass(const CurveZeta& z, const std::vector<int>& partition, long d) {
  return BetaTable(z).unstable_mass(partition, d);
}

Rational beta(const CurveZeta& z, int r, long d) {
  if (r == 1) return Rational(1) / Rational(static_cast<long>(z.q()) - 1);
  return BetaTable(z).beta(r, d);
}

// ---------------------------------------------------------------------------
// reports

const CrossCheck* ModuliReport::find_check(const std::string& name) const {
  for (const auto& c : cross_checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Rational* ModuliReport::find_component(const std::string& name) const {
  for (const auto& c : components) {
    if (c.first == name) return &c.second;
  }
  return nullptr;
}

BigInt genus2_oracle(const CurveZeta& z) {
  if (z.genus() != 2) throw DomainError("genus2_oracle requires genus 2");
  const BigInt q(static_cast<unsigned long>(z.q()));
  return q * q * q + q * q + q + 1 - q * z.power_sum(1);
}

ModuliReport count_stable_fixed_det(const BetaTable& t, int r, long d) {
  const auto& z = t.zeta();
  if (r < 2 || r > 3) throw UnsupportedError("count_stable_fixed_det supports r in {2, 3}");
  if (std::gcd(static_cast<long>(r), d) != 1) throw DomainError("count_stable_fixed_det requires gcd(r, d) = 1");
  const Rational q(static_cast<long>(z.q()));
  const int g = z.genus();
  ModuliReport rep;
  rep.target = "m_rd";
  rep.value = (q - Rational(1)) * t.beta(r, d);
  rep.is_integer = rep.value.is_integer();
  rep.components.emplace_back("siegel_mass", t.siegel(r));
  rep.components.emplace_back("beta", t.beta(r, d));
  if (r == 2) {
    const Rational closed = qpow(q, 3L * g - 3) * zeta_value(z, 2) -
                            qpow(q, g) * t.jacobian() / ((q - Rational(1)) * (q - Rational(1)) * (q + Rational(1)));
    rep.cross_checks.push_back({"closed_form", closed, rep.value});
    if (g == 2) rep.cross_checks.push_back({"genus2_oracle", Rational(genus2_oracle(z)), rep.value});
  }
  return rep;
}

ModuliReport count_stable_fixed_det(const CurveZeta& z, int r, long d) {
  return count_stable_fixed_det(BetaTable(z), r, d);
}

bool full_2_torsion(const HyperellipticCurve& c) {
  int roots = 0;
  for (Code x = 0; x < c.q(); ++x) roots += c.f().poly().eval(x) == 0;
  return roots == c.gamma();
}

namespace {

struct Ms20Parts {
  Rational closed;
  Rational beta_prime;
  Rational a;
  Rational b;
  Rational beta1;
  Rational beta2;
  Rational assembly;
  Rational nj;
  Rational nj2;
  Rational two_torsion;
};

Ms20Parts ms20_parts(const CurveZeta& z) {
  const Rational q(static_cast<long>(z.q()));
  const int g = z.genus();
  const Rational one(1);
  Ms20Parts m;
  m.nj = Rational(jacobian_count(z, 1));
  m.nj2 = Rational(jacobian_count(z, 2));
  m.two_torsion = Rational(big_pow(2, 2 * g));
  const Rational main = qpow(q, 3L * g - 3) * zeta_value(z, 2);
  m.closed = main - (qpow(q, g + 1) - q * q + q) / ((q - one) * (q - one) * (q + one)) * m.nj -
             m.nj2 / (Rational(2) * (q + one)) + m.two_torsion / (Rational(2) * (q + one));
  m.beta_prime = m.nj * qpow(q, g - 1) / ((q - one) * (q - one) * (q - one) * (q + one));
  m.a = (m.nj - m.two_torsion) / Rational(2);
  m.b = (m.nj2 - m.nj) / Rational(2);
  const BigInt qi(static_cast<unsigned long>(z.q()));
  const Rational pg2(projective_count(qi, g - 2));
  const Rational pg1(projective_count(qi, g - 1));
  m.beta1 = m.a / ((q - one) * (q - one)) + Rational(2) * m.a * pg2 / (q - one) + m.b / (q * q - one);
  const Rational gl2 = (q * q - one) * (q * q - q);
  m.beta2 = m.two_torsion / gl2 + m.two_torsion * pg1 / (q * (q - one));
  m.assembly = main - (m.beta_prime + m.beta1 + m.beta2) * (q - one);
  return m;
}

}  // namespace

ModuliReport count_ms20(const CurveZeta& z) {
  require_genus(z, 2, "count_ms20");
  const auto m = ms20_parts(z);
  ModuliReport rep;
  rep.target = "ms20";
  rep.value = m.closed;
  rep.is_integer = m.closed.is_integer();
  rep.hypotheses.emplace_back("full_2_torsion", full_2_torsion(z.curve()));
  rep.hypotheses.emplace_back("A_nonnegative", m.a.sign() >= 0);
  rep.components = {{"beta_prime_2_0", m.beta_prime}, {"beta1", m.beta1}, {"beta2", m.beta2},
                    {"A", m.a},                       {"B", m.b},         {"assembly", m.assembly}};
  rep.cross_checks.push_back({"component_assembly", m.closed, m.assembly});
  rep.cross_checks.push_back({"unstable_mass_1_1_d0", m.beta_prime, BetaTable(z).unstable_mass({1, 1}, 0)});
  return rep;
}

BigInt projective_count(const BigInt& q, int m) {
  if (m < 0) return 0;
  BigInt s = 0, pw = 1;
  for (int i = 0; i <= m; ++i) {
    s += pw;
    pw *= q;
  }
  return s;
}

BigInt grassmannian_count(std::uint64_t q, int k, int n) {
  if (k < 0 || n < 0) throw DomainError("grassmannian_count needs nonnegative k and n");
  if (k > n) return 0;
  const BigInt qq(static_cast<unsigned long>(q));
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    BigInt a, b;
    mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(n - i));
    mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(k - i));
    num *= a - 1;
    den *= b - 1;
  }
  if (num % den != 0) throw ConsistencyError("Gaussian binomial is not an integer");
  return num / den;
}

ModuliReport count_ntilde(const CurveZeta& z) {
  require_genus(z, 3, "count_ntilde");
  const auto m = ms20_parts(z);
  const int g = z.genus();
  const Rational q(static_cast<long>(z.q()));
  const Rational one(1);
  const BigInt qi(static_cast<unsigned long>(z.q()));
  const Rational pg2(projective_count(qi, g - 2));
  const Rational pg2_sq(projective_count(qi * qi, g - 2));
  const Rational y_direct = m.a * pg2 * pg2 + m.b * pg2_sq;
  const Rational y_expanded = (qpow(q, 2L * g - 3) - q) / (Rational(2) * (q - one) * (q + one)) * m.nj +
                              (qpow(q, 2L * g - 2) - one) / (Rational(2) * (q - one) * (q + one)) * m.nj2 -
                              (qpow(q, 2L * g - 3) - one) / (Rational(2) * (q - one)) * m.two_torsion;
  const Rational r_count = qpow(q, g - 2) * Rational(grassmannian_count(z.q(), 2, g));
  const Rational s_count(grassmannian_count(z.q(), 3, g));
  ModuliReport rep;
  rep.target = "ntilde";
  rep.value = m.closed + y_direct + m.two_torsion * r_count + m.two_torsion * s_count;
  rep.is_integer = rep.value.is_integer();
  rep.hypotheses.emplace_back("full_2_torsion", full_2_torsion(z.curve()));
  rep.hypotheses.emplace_back("A_nonnegative", m.a.sign() >= 0);
  rep.components = {{"ms20", m.closed}, {"Y", y_direct}, {"R", r_count}, {"S", s_count}, {"A", m.a}, {"B", m.b}};
  rep.cross_checks.push_back({"Y_expanded", y_expanded, y_direct});
  return rep;
}

ModuliReport count_higgs(const CurveZeta& z) {
  require_genus(z, 2, "count_higgs");
  const Rational q(static_cast<long>(z.q()));
  const Rational one(1);
  const int g = z.genus();
  const Rational p1 = z.eval(one);
  if (p1.sign() == 0) throw ConsistencyError("P(1) = 0");
  const Rational pq = z.eval(q);
  const Rational pm1 = z.eval(-one);
  // P'(1)
  Rational dp1(0);
  const auto& c = z.l_poly();
  for (std::size_t i = 1; i < c.size(); ++i) dp1 += Rational(c[i]) * Rational(static_cast<long>(i));
  const Rational inv_sum = Rational(2L * g) - dp1 / p1;  // sum 1/(1 - alpha_l)
  const Rational a1 = p1 * pq / ((q - one) * (q * q - one));
  const Rational a2 = -(p1 * pm1) / (Rational(4) * (q + one));
  const Rational a3 = p1 * p1 / (Rational(2) * (q - one)) * (Rational(1, 2) - one / (q - one) - inv_sum);
  const Rational a = a1 + a2 + a3;
  ModuliReport rep;
  rep.target = "higgs";
  rep.value = qpow(q, 4L * g - 3) * a;
  rep.is_integer = rep.value.is_integer();
  rep.hypotheses.emplace_back("A_is_positive_integer", a.is_integer() && a.sign() > 0);
  rep.components = {{"A1", a1}, {"A2", a2}, {"A3", a3}, {"A", a}};
  rep.cross_checks.push_back(
      {"A2_vs_jacobian", -Rational(jacobian_count(z, 2)) / (Rational(4) * (q + one)), a2});
  return rep;
}

LogEstimate log_count_estimate(const CurveZeta& z, int r, double big_c, double sigma) {
  require_genus(z, 2, "log_count_estimate");
  if (r < 2) throw DomainError("log_count_estimate needs r >= 2");
  const double q = static_cast<double>(z.q());
  const int g = z.genus();
  LogEstimate e;
  e.estimate = static_cast<double>(r * r - 1) * (g - 1) * std::log(q);
  for (int k = 2; k <= r; ++k) e.estimate += log_rational(zeta_value(z, k));
  const double a = 2.0 * (1.0 / std::sqrt(q) + std::log(std::log(static_cast<double>(g))) / (q * q));
  e.envelope = big_c * (a + std::pow(q, -sigma * g) * std::exp(a));
  return e;
}

Rational envelope_c111(const CurveZeta& z) {
  const Rational q(static_cast<long>(z.q()));
  const Rational one(1);
  const Rational nj(jacobian_count(z, 1));
  return qpow(q, 5) * nj * nj * qpow(q, 3L * (z.genus() - 1)) /
         ((q - one) * (q - one) * (q - one) * (q * q - one) * (qpow(q, 3) - one));
}

Rational envelope_c21(const CurveZeta& z) {
  const Rational q(static_cast<long>(z.q()));
  const Rational one(1);
  const int g = z.genus();
  const Rational nj(jacobian_count(z, 1));
  const Rational cube = (q - one) * (q - one) * (q - one) * (q + one);
  const Rational braces = Rational(2) * qpow(q, 3L * (g - 1)) * zeta_value(z, 2) / (q - one) -
                          qpow(q, g - 1) * nj / cube - qpow(q, g) * nj / cube;
  return qpow(q, 6) * nj * qpow(q, 2L * (g - 1)) / ((q - one) * (qpow(q, 6) - one)) * braces;
}

ConstantVariant parse_constant_variant(const std::string& name) {
  if (name == "base") return ConstantVariant::kBase;
  if (name == "thm15") return ConstantVariant::kThm15;
  if (name == "thm16") return ConstantVariant::kThm16;
  if (name == "higgs") return ConstantVariant::kHiggs;
  throw DomainError("unknown constant variant '" + name + "'");
}

double family_constant(std::uint64_t q, int gamma, ConstantVariant variant, int r) {
  const double qd = static_cast<double>(q);
  const double delta = gamma % 2 == 0 ? 1.0 : 0.0;
  if (variant == ConstantVariant::kThm16) return delta * std::log(1.0 - 1.0 / (qd * qd));
  if (variant != ConstantVariant::kBase) r = 2;
  if (r < 2 || r > 4) throw DomainError("family_constant supports 2 <= r <= 4");
  double c = (r * r - 1) * std::log(qd);
  for (int k = 2; k <= r; ++k) {
    c -= std::log((std::pow(qd, k - 1) - 1.0) * (std::pow(qd, k) - 1.0));
    c -= delta * std::log1p(-std::pow(qd, -k));
  }
  if (variant == ConstantVariant::kHiggs) c -= delta * std::log1p(-1.0 / qd);
  return c;
}

}  // namespace census
