#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moduli_census/curve.hpp"
#include "moduli_census/family.hpp"
#include "moduli_census/moduli.hpp"

namespace census {

/// Which Jacobi symbol weights a prime P in the character sums: (P/F) or (F/P).
enum class SymbolConvention { kfOverF, kFOverf };

SymbolConvention parse_symbol_convention(const std::string& name);
std::string to_string(SymbolConvention c);

/// sum over monic f of degree m of Lambda(f) sym(f), evaluated over prime powers only.
long character_sum(const MonicPoly& big_f, int m, SymbolConvention conv = SymbolConvention::kFOverf);
/// character_sum for m = 1..max_m (entry m - 1).
std::vector<long> character_sums(const MonicPoly& big_f, int max_m, SymbolConvention conv = SymbolConvention::kFOverf);

/// floor(gamma / 3), at least 1.
int default_cutoff(int gamma);

/// R^(k) = sum_{m <= Z} q^(-(k+1)m) / m * character_sum(F, m).
double r_variable(const MonicPoly& big_f, int k, int cutoff, SymbolConvention conv = SymbolConvention::kFOverf);
double r_from_sums(const std::vector<long>& sums, std::uint64_t q, int k, int cutoff);

enum class ResidualVariant { kMrd, kMs20, kNtilde, kHiggs };
ResidualVariant parse_residual_variant(const std::string& name);
std::string to_string(ResidualVariant v);
inline const std::vector<ResidualVariant>& all_residual_variants() {
  static const std::vector<ResidualVariant> v{ResidualVariant::kMrd, ResidualVariant::kMs20, ResidualVariant::kNtilde,
                                              ResidualVariant::kHiggs};
  return v;
}

struct ResidualOptions {
  int rank = 2;
  long degree = 1;
  int cutoff = 0;  // 0 selects default_cutoff(gamma)
  SymbolConvention convention = SymbolConvention::kFOverf;
};

/// Log-count residual after removing the dimension term, the constant and the R^(k) terms.
/// `r_values` holds R^(0), R^(1), ...; it must reach index max(1, rank - 1).
double decomposition_residual(const CurveZeta& z, ResidualVariant v, const std::vector<double>& r_values,
                              const ResidualOptions& opts = {});
double decomposition_residual(const CurveZeta& z, ResidualVariant v, const ResidualOptions& opts = {});

/// C q^(-c g).
double residual_envelope(std::uint64_t q, int genus, double big_c = 10.0, double c = 0.5);

struct SweepOptions {
  int rank = 2;
  long degree = 1;
  int cutoff = 0;
  SymbolConvention convention = SymbolConvention::kFOverf;
  std::vector<ResidualVariant> variants = all_residual_variants();
  /// Skip zeta data, moduli counts and residuals (R^(k) only).
  bool r_only = false;
  ZetaOptions zeta{1000, true, 1e-9};
  int max_moment = 4;
  int truncation = 0;  // 0 selects 2 gamma
  double envelope_c = 10.0;
  double envelope_exponent = 0.5;
  unsigned workers = 1;
};

inline constexpr int kRecordR = 4;

struct FamilyRecord {
  std::uint64_t index = 0;
  std::string f_text;
  std::uint64_t q = 0;
  int gamma = 0;
  int genus = 0;
  int cutoff = 0;
  std::vector<BigInt> counts;
  BigInt jacobian;
  std::vector<double> r_values;  // R^(0..kRecordR-1)
  double delta_z = 0.0;
  std::vector<std::pair<std::string, double>> residuals;  // NaN when not applicable
  std::vector<std::pair<std::string, bool>> flags;
};

FamilyRecord make_record(const MonicPoly& big_f, std::uint64_t index, const SweepOptions& opts);

/// Records for every member in slot order. Work is spread over opts.workers threads; the
/// result does not depend on the worker count.
std::vector<FamilyRecord> sweep_records(const Family& fam, const SweepOptions& opts);

struct Bounded {
  double value = 0.0;
  double tail = 0.0;
};

/// H^(k)(n) truncated at prime degree D, with a bound on the omitted tail; 1 <= n <= 6.
Bounded theoretical_moment(std::uint64_t q, int k, int n, int degree_cutoff);

/// phi(t) with primes up to degree D and products of at most n_max distinct primes; primes
/// over F_{q^2} when over_q2.
std::complex<double> characteristic_function(std::uint64_t q, int k, double t, int degree_cutoff, int n_max = 12,
                                             bool over_q2 = false);

/// Limiting Cov(R^(i), R^(j)) for i != j, truncated at prime degree D.
Bounded limit_covariance(std::uint64_t q, int i, int j, int degree_cutoff);

struct Gaussian {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks = 0.0;
};
Gaussian gaussian_diagnostics(const std::vector<double>& values);

struct ResidualSummary {
  std::size_t applicable = 0;
  double max_abs = 0.0;
  double median_abs = 0.0;
  std::size_t within_envelope = 0;
  /// Smallest C for which every |residual| <= C q^(-c g).
  double required_c = 0.0;
};

struct SweepReport {
  std::uint64_t q = 0;
  int gamma = 0;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  int cutoff = 0;
  int truncation = 0;
  std::map<std::pair<int, int>, double> moments;
  std::map<std::pair<int, int>, double> covariance;
  std::map<std::pair<int, int>, Bounded> theoretical_moments;
  std::map<std::pair<int, int>, Bounded> limit_covariances;
  std::map<int, Gaussian> gaussian;  // of q^((2k+1)/2) R^(k)
  std::map<std::string, ResidualSummary> residuals;
};

/// Moments, covariances and diagnostics of a record set, summed in record order.
SweepReport empirical_stats(const std::vector<FamilyRecord>& records, const SweepOptions& opts);
SweepReport empirical_stats(const std::vector<FamilyRecord>& records, const FamilySpec& spec,
                            const SweepOptions& opts);

struct LemmaCheck {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  /// Largest observed |lhs| / bound.
  double worst_ratio = 0.0;
};

/// |mean over the family of (F/h)| <= (2^deg h - 1) / ((1 - 1/q) q^(gamma/2)) for random
/// non-square h = f g.
LemmaCheck character_sum_lemma(const Family& fam, std::size_t pairs, std::uint64_t seed, int max_factor_degree = 2);
/// Family mean of [gcd(F, h) = 1] against prod_{P | h} (1 + |P|^-1)^-1, within q^(-gamma/2) tau(h).
LemmaCheck trivial_sum_lemma(const Family& fam, std::size_t count, std::uint64_t seed, int max_degree = 3);

}  // namespace census
