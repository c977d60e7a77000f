#include "moduli_census/validate.hpp"

#include <cmath>
#include <functional>

#include "moduli_census/curve.hpp"
#include "moduli_census/errors.hpp"
#include "moduli_census/moduli.hpp"
#include "moduli_census/stats.hpp"

namespace census {

namespace {

using Check = std::function<std::string(const MonicPoly&)>;

// Runs check on every member; an empty string means pass.
SuiteResult per_curve(const std::string& name, const Family& fam, const Check& check) {
  SuiteResult r;
  r.name = name;
  for (std::uint64_t i = 0; i < fam.slots(); ++i) {
    const auto f = fam.at(i);
    if (!f) continue;
    std::string why;
    try {
      why = check(*f);
    } catch (const Error& e) {
      why = e.what();
    }
    ++r.checked;
    if (!why.empty()) {
      if (r.failures++ == 0) r.first_failure = f->str() + ": " + why;
    }
  }
  return r;
}

std::string zeta_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f));
  l_poly_via_characters(z);
  return "";
}

std::string lambda_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  const auto sums = character_sums(f, 2);
  const long delta = f.degree() % 2 == 0 ? 1 : 0;
  for (int m = 1; m <= 2; ++m) {
    if (BigInt(sums[m - 1]) != -z.power_sum(m) - delta) return "character_sum mismatch at m=" + std::to_string(m);
  }
  return "";
}

std::string higgs_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  if (z.genus() < 2) return "";
  const auto rep = count_higgs(z);
  const Rational a = *rep.find_component("A");
  if (!a.is_integer() || a.sign() <= 0) return "A = " + a.str();
  return "";
}

std::string unstable_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  if (z.genus() < 2) return "";
  const BetaTable t(z);
  const auto ms = count_ms20(z);
  if (ms.find_check("unstable_mass_1_1_d0")->residual().sign() != 0) return "C(1,1;0) differs from beta'(2,0)";
  const Rational e111 = envelope_c111(z), e21 = envelope_c21(z);
  for (long d = 0; d < 3; ++d) {
    if (t.unstable_mass({1, 1, 1}, d) > e111) return "C(1,1,1) above envelope at d=" + std::to_string(d);
    if (t.unstable_mass({2, 1}, d) > e21) return "C(2,1) above envelope at d=" + std::to_string(d);
    if (t.unstable_mass({1, 2}, d) > e21) return "C(1,2) above envelope at d=" + std::to_string(d);
  }
  return "";
}

std::string epsilon_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  for (int k = 2; k <= 3; ++k) {
    for (int cut = 1; cut <= 3; ++cut) {
      const auto e = epsilon_terms(z, k, cut);
      if (!e.eps2_ok) return "eps2 bound fails at k=" + std::to_string(k) + " Z=" + std::to_string(cut);
    }
  }
  return "";
}

std::string xz_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  return xz_bound_check(z).pass ? "" : "Jacobian bound fails";
}

std::string estimate_check(const MonicPoly& f) {
  const auto z = zeta_data(HyperellipticCurve(f), {0, false, 1e-9});
  if (z.genus() < 2) return "";
  const BetaTable t(z);
  const double lq = std::log(static_cast<double>(z.q()));
  for (int r = 2; r <= 3; ++r) {
    const auto est = log_count_estimate(z, r);
    double zeta_sum = 0.0;
    for (int k = 2; k <= r; ++k) zeta_sum += log_rational(zeta_value(z, k));
    const double dim = static_cast<double>(r * r - 1) * (z.genus() - 1) * lq;
    if (std::fabs(est.estimate - dim - zeta_sum) > 1e-12 * std::fabs(est.estimate)) return "estimate construction";
    const double log_n = log_rational(count_stable_fixed_det(t, r, 1).value);
    if (std::fabs(log_n - dim) > est.envelope) return "gap outside envelope at r=" + std::to_string(r);
  }
  return "";
}

SuiteResult lemma_suite(const Family& fam, std::uint64_t seed) {
  SuiteResult r;
  r.name = "lemmas";
  for (const auto& c : {character_sum_lemma(fam, 100, seed), trivial_sum_lemma(fam, 20, seed + 1)}) {
    r.checked += c.trials;
    r.failures += c.trials - c.passed;
    if (c.trials != c.passed && r.first_failure.empty()) r.first_failure = c.name + " bound exceeded";
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"zeta", "lambda", "higgs", "unstable", "epsilon", "xz", "estimate", "lemmas"};
  return names;
}

std::vector<SuiteResult> run_suites(const std::string& suite, const Family& fam, std::uint64_t seed) {
  std::vector<std::string> chosen;
  if (suite == "all") {
    chosen = suite_names();
  } else {
    bool known = false;
    for (const auto& n : suite_names()) known |= n == suite;
    if (!known) throw DomainError("unknown suite '" + suite + "'");
    chosen = {suite};
  }
  std::vector<SuiteResult> out;
  for (const auto& name : chosen) {
    if (name == "zeta") out.push_back(per_curve(name, fam, zeta_check));
    if (name == "lambda") out.push_back(per_curve(name, fam, lambda_check));
    if (name == "higgs") out.push_back(per_curve(name, fam, higgs_check));
    if (name == "unstable") out.push_back(per_curve(name, fam, unstable_check));
    if (name == "epsilon") out.push_back(per_curve(name, fam, epsilon_check));
    if (name == "xz") out.push_back(per_curve(name, fam, xz_check));
    if (name == "estimate") out.push_back(per_curve(name, fam, estimate_check));
    if (name == "lemmas") out.push_back(lemma_suite(fam, seed));
  }
  return out;
}

}  // namespace census
