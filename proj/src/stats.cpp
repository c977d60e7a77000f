#include "moduli_census/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "moduli_census/errors.hpp"

namespace census {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double mean_of(const std::vector<double>& v) {
  Accumulator a;
  for (double x : v) a.add(x);
  return a.value() / static_cast<double>(v.size());
}

int symbol(const MonicPoly& p, const MonicPoly& big_f, SymbolConvention conv) {
  return conv == SymbolConvention::kfOverF ? jacobi_reciprocity(p.poly(), big_f.poly())
                                           : jacobi_reciprocity(big_f.poly(), p.poly());
}

}  // namespace

SymbolConvention parse_symbol_convention(const std::string& name) {
  if (name == "f/F") return SymbolConvention::kfOverF;
  if (name == "F/f") return SymbolConvention::kFOverf;
  throw DomainError("unknown symbol convention '" + name + "' (expected f/F or F/f)");
}

std::string to_string(SymbolConvention c) { return c == SymbolConvention::kfOverF ? "f/F" : "F/f"; }

std::vector<long> character_sums(const MonicPoly& big_f, int max_m, SymbolConvention conv) {
  if (max_m < 1) throw DomainError("character sums need m >= 1");
  if (!is_squarefree(big_f)) throw DomainError("F must be square-free");
  std::vector<long> sums(max_m, 0);
  for (int d = 1; d <= max_m; ++d) {
    for (const auto& p : monic_irreducibles(big_f.field(), d)) {
      const int s = symbol(p, big_f, conv);
      if (s == 0) continue;
      for (int m = d; m <= max_m; m += d) {
        const int power = (m / d) % 2 == 0 ? 1 : s;
        sums[m - 1] += static_cast<long>(d) * power;
      }
    }
  }
  return sums;
}

long character_sum(const MonicPoly& big_f, int m, SymbolConvention conv) { return character_sums(big_f, m, conv).back(); }

int default_cutoff(int gamma) { return std::max(1, gamma / 3); }

double r_from_sums(const std::vector<long>& sums, std::uint64_t q, int k, int cutoff) {
  if (k < 0 || cutoff < 1) throw DomainError("R^(k) needs k >= 0 and Z >= 1");
  if (static_cast<std::size_t>(cutoff) > sums.size()) throw DomainError("not enough character sums for cutoff");
  const double lq = std::log(static_cast<double>(q));
  Accumulator acc;
  for (int m = 1; m <= cutoff; ++m) {
    acc.add(std::exp(-(k + 1) * m * lq) / m * static_cast<double>(sums[m - 1]));
  }
  return acc.value();
}

double r_variable(const MonicPoly& big_f, int k, int cutoff, SymbolConvention conv) {
  return r_from_sums(character_sums(big_f, cutoff, conv), big_f.field().order(), k, cutoff);
}

ResidualVariant parse_residual_variant(const std::string& name) {
  if (name == "m_rd") return ResidualVariant::kMrd;
  if (name == "ms20") return ResidualVariant::kMs20;
  if (name == "ntilde") return ResidualVariant::kNtilde;
  if (name == "higgs") return ResidualVariant::kHiggs;
  throw DomainError("unknown residual variant '" + name + "'");
}

std::string to_string(ResidualVariant v) {
  switch (v) {
    case ResidualVariant::kMrd:
      return "m_rd";
    case ResidualVariant::kMs20:
      return "ms20";
    case ResidualVariant::kNtilde:
      return "ntilde";
    case ResidualVariant::kHiggs:
      return "higgs";
  }
  return "";
}

double decomposition_residual(const CurveZeta& z, ResidualVariant v, const std::vector<double>& r,
                              const ResidualOptions& opts) {
  const std::uint64_t q = z.q();
  const double lq = std::log(static_cast<double>(q));
  const int g = z.genus();
  const int gamma = z.curve().gamma();
  auto need = [&](std::size_t k) {
    if (r.size() <= k) throw DomainError("missing R^(" + std::to_string(k) + ")");
    return r[k];
  };
  auto log_count = [](const Rational& n) { return n.sign() > 0 ? log_rational(n) : kNaN; };
  switch (v) {
    case ResidualVariant::kMrd: {
      const auto rep = count_stable_fixed_det(z, opts.rank, opts.degree);
      double res = log_count(rep.value) - static_cast<double>(opts.rank * opts.rank - 1) * (g - 1) * lq -
                   family_constant(q, gamma, ConstantVariant::kBase, opts.rank);
      for (int k = 1; k < opts.rank; ++k) res -= need(k);
      return res;
    }
    case ResidualVariant::kMs20:
      return log_count(count_ms20(z).value) - 3.0 * (g - 1) * lq -
             family_constant(q, gamma, ConstantVariant::kThm15) - need(1);
    case ResidualVariant::kNtilde:
      return log_count(count_ntilde(z).value) - (4.0 * g - 4.0) * lq +
             family_constant(q, gamma, ConstantVariant::kThm16);
    case ResidualVariant::kHiggs:
      return log_count(count_higgs(z).value) - (8.0 * g - 6.0) * lq -
             family_constant(q, gamma, ConstantVariant::kHiggs) - need(0) - need(1);
  }
  return kNaN;
}

double decomposition_residual(const CurveZeta& z, ResidualVariant v, const ResidualOptions& opts) {
  const auto& f = z.curve().f();
  const int cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(f.degree());
  const auto sums = character_sums(f, cutoff, opts.convention);
  std::vector<double> r;
  for (int k = 0; k < std::max(2, opts.rank); ++k) r.push_back(r_from_sums(sums, z.q(), k, cutoff));
  return decomposition_residual(z, v, r, opts);
}

double residual_envelope(std::uint64_t q, int genus, double big_c, double c) {
  return big_c * std::pow(static_cast<double>(q), -c * genus);
}

// ---------------------------------------------------------------------------
// records and sweeps

FamilyRecord make_record(const MonicPoly& big_f, std::uint64_t index, const SweepOptions& opts) {
  FamilyRecord rec;
  rec.index = index;
  rec.f_text = big_f.str();
  rec.q = big_f.field().order();
  rec.gamma = big_f.degree();
  rec.genus = (rec.gamma - 1) / 2;
  rec.cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(rec.gamma);
  const auto sums = character_sums(big_f, rec.cutoff, opts.convention);
  for (int k = 0; k < kRecordR; ++k) rec.r_values.push_back(r_from_sums(sums, rec.q, k, rec.cutoff));
  Accumulator dz;
  for (int k = 1; k < std::max(2, opts.rank); ++k) dz.add(rec.r_values[k]);
  rec.delta_z = dz.value();
  if (opts.r_only) return rec;

  const HyperellipticCurve c(big_f);
  const CurveZeta z = zeta_data(c, opts.zeta);
  rec.counts = z.counts();
  rec.jacobian = jacobian_count(z, 1);
  ResidualOptions ro{opts.rank, opts.degree, rec.cutoff, opts.convention};
  const double env = residual_envelope(rec.q, rec.genus, opts.envelope_c, opts.envelope_exponent);
  for (auto v : opts.variants) {
    const bool applicable = rec.genus >= 2 && !(v == ResidualVariant::kNtilde && rec.genus < 3);
    const double res = applicable ? decomposition_residual(z, v, rec.r_values, ro) : kNaN;
    rec.residuals.emplace_back(to_string(v), res);
    // genus is constant over a family, so every row carries the same flag columns
    if (applicable) rec.flags.emplace_back(to_string(v) + "_within_envelope", std::fabs(res) <= env);
  }
  rec.flags.emplace_back("full_2_torsion", full_2_torsion(c));
  rec.flags.emplace_back("xz_bound", xz_bound_check(z).pass);
  return rec;
}

std::vector<FamilyRecord> sweep_records(const Family& fam, const SweepOptions& opts) {
  const std::uint64_t slots = fam.slots();
  const unsigned workers = std::max(1u, opts.workers);
  const int cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(fam.spec().gamma);
  for (int d = 1; d <= cutoff; ++d) monic_irreducibles(fam.spec().field, d);

  std::vector<std::optional<FamilyRecord>> out(slots);
  std::atomic<std::uint64_t> next{0};
  std::mutex err_mu;
  std::uint64_t err_index = std::numeric_limits<std::uint64_t>::max();
  std::exception_ptr err;
  constexpr std::uint64_t kChunk = 64;

  auto work = [&] {
    for (;;) {
      const std::uint64_t lo = next.fetch_add(kChunk);
      if (lo >= slots) return;
      const std::uint64_t hi = std::min(slots, lo + kChunk);
      for (std::uint64_t i = lo; i < hi; ++i) {
        try {
          if (auto f = fam.at(i)) out[i] = make_record(*f, i, opts);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (i < err_index) {
            err_index = i;
            err = std::current_exception();
          }
        }
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);

  std::vector<FamilyRecord> records;
  records.reserve(slots);
  for (auto& r : out) {
    if (r) records.push_back(std::move(*r));
  }
  return records;
}

// ---------------------------------------------------------------------------
// theoretical sums over primes, aggregated by degree

namespace {

struct Shell {
  double count;  // number of primes of this degree
  double norm;   // |P|
};

std::vector<Shell> shells(std::uint64_t field_order, int degree_cutoff) {
  if (degree_cutoff < 1) throw DomainError("degree cutoff must be >= 1");
  std::vector<Shell> s;
  for (int d = 1; d <= degree_cutoff; ++d) {
    const double norm = std::pow(static_cast<double>(field_order), d);
    double count;
    if (d * std::log2(static_cast<double>(field_order)) < 62) {
      count = static_cast<double>(prime_count(field_order, d));
    } else {
      count = norm / d;
    }
    s.push_back({count, norm});
  }
  return s;
}

// Sums f(|P|) over primes of degree > D using the bound pi_q(d) <= q^d / d; f must be
// nonnegative and decreasing fast enough for the series to converge.
template <class F>
double tail_sum(double q, int degree_cutoff, F&& f) {
  double total = 0.0;
  for (int d = degree_cutoff + 1; d <= degree_cutoff + 4000; ++d) {
    const double lognorm = d * std::log(q);
    const double term = std::exp(lognorm - std::log(static_cast<double>(d))) * f(lognorm);
    total += term;
    if (term <= 1e-18 * total || (term == 0.0 && d > degree_cutoff + 50)) break;
  }
  return total;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int first = 1; first <= n; ++first) {
    cur.push_back(first);
    compositions(n - first, cur, out);
    cur.pop_back();
  }
}

// Set partitions of {0..s-1} as restricted growth strings.
void set_partitions(int s, std::vector<int>& cur, int max_block, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == s) {
    out.push_back(cur);
    return;
  }
  for (int b = 0; b <= max_block + 1; ++b) {
    cur.push_back(b);
    set_partitions(s, cur, std::max(max_block, b), out);
    cur.pop_back();
  }
}

}  // namespace

Bounded theoretical_moment(std::uint64_t q, int k, int n, int degree_cutoff) {
  if (n < 1 || n > 6) throw DomainError("theoretical_moment supports 1 <= n <= 6");
  if (k < 0) throw DomainError("theoretical_moment needs k >= 0");
  const auto sh = shells(q, degree_cutoff);
  const double qd = static_cast<double>(q);
  // f_lambda(P) = (u^lambda + (-1)^lambda v^lambda) / (lambda! (1 + 1/|P|))
  auto weight = [&](double norm, int lambda) {
    const double x = std::pow(norm, -(k + 1));
    const double u = -std::log1p(-x), v = std::log1p(x);
    const double num = lambda % 2 == 0 ? std::pow(u, lambda) + std::pow(v, lambda) : std::pow(u, lambda) - std::pow(v, lambda);
    return num / (factorial(lambda) * (1.0 + 1.0 / norm));
  };
  // |f_lambda| <= majorant, with u, v <= 2x and u - v <= 2x^2.
  auto majorant = [&](double lognorm, int lambda) {
    const double lx = -(k + 1) * lognorm;
    const double lm = lambda % 2 == 0 ? std::log(2.0) + lambda * (std::log(2.0) + lx)
                                      : std::log(static_cast<double>(lambda)) + lambda * std::log(2.0) + (lambda + 1) * lx;
    return std::exp(lm - std::log(factorial(lambda)));
  };

  std::vector<double> g_head(n + 1, 0.0), g_tail(n + 1, 0.0);
  for (int lambda = 1; lambda <= n; ++lambda) {
    for (const auto& s : sh) g_head[lambda] += s.count * majorant(std::log(s.norm), lambda);
    g_tail[lambda] = tail_sum(qd, degree_cutoff, [&](double ln) { return majorant(ln, lambda); });
  }

  Accumulator value, tail;
  for (int s = 1; s <= n; ++s) {
    std::vector<std::vector<int>> comps, parts;
    std::vector<int> cur;
    compositions(n, cur, comps);
    cur.clear();
    set_partitions(s, cur, -1, parts);
    const double coeff = factorial(n) / (std::pow(2.0, s) * factorial(s));
    for (const auto& lam : comps) {
      if (static_cast<int>(lam.size()) != s) continue;
      // sum over distinct ordered prime tuples by Moebius inversion on set partitions
      Accumulator distinct;
      for (const auto& rgs : parts) {
        const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        double term = 1.0;
        for (int b = 0; b < blocks; ++b) {
          int size = 0;
          Accumulator block;
          for (const auto& shell : sh) {
            double prod = 1.0;
            for (int i = 0; i < s; ++i) {
              if (rgs[i] == b) prod *= weight(shell.norm, lam[i]);
            }
            block.add(shell.count * prod);
          }
          for (int i = 0; i < s; ++i) size += rgs[i] == b;
          term *= block.value() * ((size - 1) % 2 == 0 ? 1.0 : -1.0) * factorial(size - 1);
        }
        distinct.add(term);
      }
      value.add(coeff * distinct.value());
      // prod(head + tail) - prod(head), expanded to avoid cancellation
      double head = 1.0, excess = 0.0;
      for (int part : lam) {
        excess = excess * (g_head[part] + g_tail[part]) + head * g_tail[part];
        head *= g_head[part];
      }
      tail.add(coeff * excess);
    }
  }
  return {value.value(), tail.value()};
}

std::complex<double> characteristic_function(std::uint64_t q, int k, double t, int degree_cutoff, int n_max,
                                             bool over_q2) {
  if (std::fabs(t) > 50.0) throw DomainError("characteristic_function supports |t| <= 50");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  const std::uint64_t order = over_q2 ? q * q : q;
  const auto sh = shells(order, degree_cutoff);
  const std::complex<double> i(0.0, 1.0);
  std::vector<std::complex<double>> a;
  for (const auto& s : sh) {
    const double x = std::pow(s.norm, -(k + 1));
    const auto term = std::exp(-i * t * std::log1p(-x)) + std::exp(-i * t * std::log1p(x)) - 2.0;
    a.push_back(term / (1.0 + 1.0 / s.norm));
  }
  // e_n of the multiset {a_P} from power sums; sum over distinct ordered n-tuples is n! e_n.
  std::vector<std::complex<double>> p(n_max + 1), e(n_max + 1);
  for (int j = 1; j <= n_max; ++j) {
    for (std::size_t d = 0; d < sh.size(); ++d) p[j] += sh[d].count * std::pow(a[d], j);
  }
  e[0] = 1.0;
  std::complex<double> phi = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    std::complex<double> s = 0.0;
    for (int j = 1; j <= n; ++j) s += (j % 2 == 1 ? 1.0 : -1.0) * e[n - j] * p[j];
    e[n] = s / static_cast<double>(n);
    phi += e[n] / std::pow(2.0, n);
  }
  return phi;
}

Bounded limit_covariance(std::uint64_t q, int i, int j, int degree_cutoff) {
  if (i == j || i < 1 || j < 1) throw DomainError("limit_covariance needs distinct indices >= 1");
  const auto sh = shells(q, degree_cutoff);
  auto tau = [](double norm, int k) {
    const double x = std::pow(norm, -(k + 1));
    return -std::log1p(-x) + 0.5 * std::log1p(-x * x);
  };
  auto eta = [](double norm, int k) {
    const double x = std::pow(norm, -(k + 1));
    return -0.5 * std::log1p(-x * x);
  };
  Accumulator acc;
  for (const auto& s : sh) {
    const double w = 1.0 + 1.0 / s.norm;
    acc.add(s.count * (tau(s.norm, i) * tau(s.norm, j) / w + eta(s.norm, i) * eta(s.norm, j) / (s.norm * w * w)));
  }
  // tau_k <= 1.2 x_k and eta_k <= x_k^2 for x <= 1/3
  const double tail = tail_sum(static_cast<double>(q), degree_cutoff, [&](double ln) {
    const double xi = std::exp(-(i + 1) * ln), xj = std::exp(-(j + 1) * ln);
    return 1.44 * xi * xj + xi * xi * xj * xj * std::exp(-ln);
  });
  return {acc.value(), tail};
}

// ---------------------------------------------------------------------------
// empirical statistics

Gaussian gaussian_diagnostics(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("gaussian_diagnostics needs at least one value");
  Gaussian g;
  g.mean = mean_of(values);
  Accumulator m2, m3, m4;
  for (double x : values) {
    const double d = x - g.mean;
    m2.add(d * d);
    m3.add(d * d * d);
    m4.add(d * d * d * d);
  }
  const double n = static_cast<double>(values.size());
  g.variance = m2.value() / n;
  if (g.variance <= 0.0) return g;
  g.skewness = (m3.value() / n) / std::pow(g.variance, 1.5);
  g.excess_kurtosis = (m4.value() / n) / (g.variance * g.variance) - 3.0;
  std::vector<double> z(values);
  std::sort(z.begin(), z.end());
  const double sd = std::sqrt(g.variance);
  for (std::size_t idx = 0; idx < z.size(); ++idx) {
    const double cdf = 0.5 * std::erfc(-(z[idx] - g.mean) / (sd * std::sqrt(2.0)));
    g.ks = std::max({g.ks, (idx + 1) / n - cdf, cdf - idx / n});
  }
  return g;
}

SweepReport empirical_stats(const std::vector<FamilyRecord>& records, const FamilySpec& spec,
                            const SweepOptions& opts) {
  SweepReport rep = empirical_stats(records, opts);
  rep.mode = spec.mode == FamilyMode::kEnumerate ? "enumerate" : "sample";
  rep.seed = spec.seed;
  return rep;
}

SweepReport empirical_stats(const std::vector<FamilyRecord>& records, const SweepOptions& opts) {
  if (records.empty()) throw DomainError("empirical_stats needs a nonempty record set");
  SweepReport rep;
  rep.q = records.front().q;
  rep.gamma = records.front().gamma;
  rep.mode = "enumerate";
  rep.count = records.size();
  rep.cutoff = records.front().cutoff;
  rep.truncation = opts.truncation > 0 ? opts.truncation : 2 * rep.gamma;
  const int nk = static_cast<int>(records.front().r_values.size());
  const double n = static_cast<double>(records.size());

  std::vector<std::vector<double>> cols(nk);
  for (const auto& r : records) {
    for (int k = 0; k < nk; ++k) cols[k].push_back(r.r_values[k]);
  }
  std::vector<double> means(nk);
  for (int k = 0; k < nk; ++k) {
    means[k] = mean_of(cols[k]);
    for (int p = 1; p <= opts.max_moment; ++p) {
      Accumulator a;
      for (double x : cols[k]) a.add(std::pow(x, p));
      rep.moments[{k, p}] = p == 1 ? means[k] : a.value() / n;
      if (p <= 6) rep.theoretical_moments[{k, p}] = theoretical_moment(rep.q, k, p, rep.truncation);
    }
  }
  for (int a = 0; a < nk; ++a) {
    for (int b = a; b < nk; ++b) {
      Accumulator c;
      for (std::size_t idx = 0; idx < records.size(); ++idx) c.add((cols[a][idx] - means[a]) * (cols[b][idx] - means[b]));
      rep.covariance[{a, b}] = c.value() / n;
      if (a >= 1 && b > a) rep.limit_covariances[{a, b}] = limit_covariance(rep.q, a, b, rep.truncation);
    }
  }
  const double qd = static_cast<double>(rep.q);
  for (int k = 0; k < nk; ++k) {
    std::vector<double> scaled(cols[k]);
    const double s = std::pow(qd, (2.0 * k + 1.0) / 2.0);
    for (double& x : scaled) x *= s;
    rep.gaussian[k] = gaussian_diagnostics(scaled);
  }

  std::map<std::string, std::vector<double>> res;
  std::map<std::string, ResidualSummary> sums;
  for (const auto& r : records) {
    const double env = residual_envelope(r.q, r.genus, 1.0, opts.envelope_exponent);
    for (const auto& [name, v] : r.residuals) {
      auto& summary = sums[name];
      if (std::isnan(v)) continue;
      const double a = std::fabs(v);
      res[name].push_back(a);
      ++summary.applicable;
      summary.max_abs = std::max(summary.max_abs, a);
      summary.within_envelope += a <= opts.envelope_c * env;
      summary.required_c = std::max(summary.required_c, a / env);
    }
  }
  for (auto& [name, summary] : sums) {
    auto& v = res[name];
    if (!v.empty()) {
      std::sort(v.begin(), v.end());
      const std::size_t m = v.size();
      summary.median_abs = m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    }
    rep.residuals[name] = summary;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// lemma checks

namespace {

MonicPoly random_monic(const FieldHandle& f, int degree, std::mt19937_64& rng) {
  std::vector<Code> c(degree + 1);
  std::uniform_int_distribution<std::uint64_t> coef(0, f.order() - 1);
  for (int i = 0; i < degree; ++i) c[i] = static_cast<Code>(coef(rng));
  c[degree] = 1;
  return MonicPoly(f, std::move(c));
}

// Exponents of the irreducible factors of h, by trial division.
std::vector<std::pair<MonicPoly, int>> factor_with_multiplicity(const MonicPoly& h) {
  std::vector<std::pair<MonicPoly, int>> out;
  Poly w = h.poly();
  for (int d = 1; w.degree() >= d; ++d) {
    for (const auto& p : monic_irreducibles(h.field(), d)) {
      int e = 0;
      while (w.degree() >= d && (w % p.poly()).is_zero()) {
        w = w / p.poly();
        ++e;
      }
      if (e > 0) out.emplace_back(p, e);
    }
  }
  return out;
}

bool is_square(const MonicPoly& h) {
  for (const auto& [p, e] : factor_with_multiplicity(h)) {
    if (e % 2 == 1) return false;
  }
  return true;
}

std::vector<MonicPoly> prime_divisors(const MonicPoly& h) {
  std::vector<MonicPoly> out;
  for (auto& [p, e] : factor_with_multiplicity(h)) out.push_back(p);
  return out;
}

}  // namespace

LemmaCheck character_sum_lemma(const Family& fam, std::size_t pairs, std::uint64_t seed, int max_factor_degree) {
  const auto members = fam.members();
  if (members.empty()) throw DomainError("empty family");
  const auto& field = fam.spec().field;
  const double q = static_cast<double>(field.order());
  const int gamma = fam.spec().gamma;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(1, max_factor_degree);
  LemmaCheck out{"character_sum", 0, 0, 0.0};
  while (out.trials < pairs) {
    const MonicPoly h = random_monic(field, deg(rng), rng) * random_monic(field, deg(rng), rng);
    if (is_square(h)) continue;
    Accumulator acc;
    for (const auto& f : members) acc.add(jacobi_reciprocity(f.poly(), h.poly()));
    const double lhs = std::fabs(acc.value() / static_cast<double>(members.size()));
    const double bound = (std::pow(2.0, h.degree()) - 1.0) / ((1.0 - 1.0 / q) * std::pow(q, gamma / 2.0));
    ++out.trials;
    out.passed += lhs <= bound;
    out.worst_ratio = std::max(out.worst_ratio, lhs / bound);
  }
  return out;
}

LemmaCheck trivial_sum_lemma(const Family& fam, std::size_t count, std::uint64_t seed, int max_degree) {
  const auto members = fam.members();
  if (members.empty()) throw DomainError("empty family");
  const auto& field = fam.spec().field;
  const double q = static_cast<double>(field.order());
  const int gamma = fam.spec().gamma;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> deg(1, max_degree);
  LemmaCheck out{"trivial_sum", 0, 0, 0.0};
  while (out.trials < count) {
    const MonicPoly h = random_monic(field, deg(rng), rng);
    if (!is_squarefree(h)) continue;
    std::size_t coprime = 0;
    for (const auto& f : members) coprime += gcd(f.poly(), h.poly()).degree() == 0;
    const double mean = static_cast<double>(coprime) / static_cast<double>(members.size());
    const auto primes = prime_divisors(h);
    double expected = 1.0;
    for (const auto& p : primes) expected /= 1.0 + std::pow(q, -p.degree());
    const double bound = std::pow(q, -gamma / 2.0) * std::pow(2.0, static_cast<double>(primes.size()));
    const double lhs = std::fabs(mean - expected);
    ++out.trials;
    out.passed += lhs <= bound;
    out.worst_ratio = std::max(out.worst_ratio, lhs / bound);
  }
  return out;
}

}  // namespace census
