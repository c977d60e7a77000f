// moduli-census: point counts of moduli spaces over hyperelliptic curves, family sweeps and
// validation suites.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moduli_census/emit.hpp"
#include "moduli_census/errors.hpp"
#include "moduli_census/family.hpp"
#include "moduli_census/stats.hpp"
#include "moduli_census/validate.hpp"

using namespace census;

namespace {

enum Exit { kOk = 0, kValidationFailed = 1, kUsage = 2, kBudget = 3 };

bool is_odd_prime(std::uint32_t q) {
  if (q < 3 || q % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

FieldHandle cli_field(std::uint32_t q) {
  if (!is_odd_prime(q)) throw DomainError("--q must be an odd prime");
  return make_field(q);
}

unsigned worker_count(unsigned flag) {
  if (const char* env = std::getenv("MODULI_CENSUS_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw DomainError("MODULI_CENSUS_WORKERS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  if (flag < 1) throw DomainError("--workers must be >= 1");
  return flag;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point counts of moduli spaces of bundles over hyperelliptic curves y^2 = F(x)"};
  app.require_subcommand(1);

  std::uint32_t q = 3;
  std::string f_text;
  std::string out_path;

  auto* info = app.add_subcommand("curve-info", "Zeta data of one curve");
  info->add_option("--q", q, "Odd prime field order")->required();
  info->add_option("--f", f_text, "Ascending coefficients of F, leading 1 included")->required();
  info->add_option("--out", out_path, "Output path (default stdout)");

  std::string target = "m_rd";
  int rank = 2;
  long degree = 1;
  double big_c = 10.0, sigma = 0.5;
  auto* moduli = app.add_subcommand("moduli", "Exact moduli point count for one curve");
  moduli->add_option("--q", q, "Odd prime field order")->required();
  moduli->add_option("--f", f_text, "Ascending coefficients of F")->required();
  moduli->add_option("--target", target, "m_rd | ms20 | ntilde | higgs | estimate | siegel_mass")
      ->check(CLI::IsMember({"m_rd", "ms20", "ntilde", "higgs", "estimate", "siegel_mass"}));
  moduli->add_option("--rank", rank, "Rank r");
  moduli->add_option("--degree", degree, "Degree d");
  moduli->add_option("--C", big_c, "Envelope constant C for estimate");
  moduli->add_option("--sigma", sigma, "Envelope exponent sigma for estimate");
  moduli->add_option("--out", out_path, "Output path (default stdout)");

  int gamma = 5;
  std::string mode = "enumerate";
  std::uint64_t samples = 0, seed = 0, budget = kEnumerateBudget;
  unsigned workers = 1;
  std::string report_path, symbol = "F/f";
  int cutoff = 0, truncation = 0, max_moment = 4;
  double env_c = 10.0, env_exp = 0.5;
  bool r_only = false;
  auto* sweep = app.add_subcommand("sweep", "Per-curve records (CSV) and family statistics (JSON)");
  sweep->add_option("--q", q, "Odd prime field order")->required();
  sweep->add_option("--gamma", gamma, "Degree of F")->required();
  sweep->add_option("--mode", mode, "enumerate | sample")->check(CLI::IsMember({"enumerate", "sample"}));
  sweep->add_option("--samples", samples, "Sample count for sample mode");
  sweep->add_option("--seed", seed, "Seed for sample mode");
  sweep->add_option("--budget", budget, "Largest q^gamma allowed in enumerate mode");
  sweep->add_option("--workers", workers, "Worker threads (MODULI_CENSUS_WORKERS overrides)");
  sweep->add_option("--cutoff", cutoff, "Z override (default floor(gamma/3))");
  sweep->add_option("--truncation", truncation, "Prime degree cutoff D for theoretical values (default 2 gamma)");
  sweep->add_option("--max-moment", max_moment, "Largest moment order")->check(CLI::Range(1, 6));
  sweep->add_option("--rank", rank, "Rank for the m_rd residual and delta_Z");
  sweep->add_option("--degree", degree, "Degree for the m_rd residual");
  sweep->add_option("--symbol", symbol, "Character convention F/f or f/F")->check(CLI::IsMember({"F/f", "f/F"}));
  sweep->add_option("--envelope-C", env_c, "Residual envelope constant C");
  sweep->add_option("--envelope-c", env_exp, "Residual envelope exponent c");
  sweep->add_flag("--r-only", r_only, "Skip zeta data and moduli residuals");
  sweep->add_option("--out", out_path, "CSV path (default stdout)");
  sweep->add_option("--report", report_path, "SweepReport JSON path");

  int k_max = 3, n_max = 4, big_d = 6;
  std::vector<double> ts{0.5, 1.0, 2.0};
  bool over_q2 = false;
  auto* moments = app.add_subcommand("moments", "Theoretical moments, limit covariances and characteristic function");
  moments->add_option("--q", q, "Field order")->required();
  moments->add_option("--k-max", k_max, "Largest k");
  moments->add_option("--n-max", n_max, "Largest moment order")->check(CLI::Range(1, 6));
  moments->add_option("--D", big_d, "Prime degree cutoff")->check(CLI::PositiveNumber);
  moments->add_option("--t", ts, "Arguments of the characteristic function");
  moments->add_flag("--over-q2", over_q2, "Characteristic function over primes of F_{q^2}[x]");
  moments->add_option("--out", out_path, "Output path (default stdout)");

  std::string suite = "all";
  auto* validate = app.add_subcommand("validate", "Run an invariant suite over a family");
  validate->add_option("--suite", suite, "Suite name or all");
  validate->add_option("--q", q, "Odd prime field order")->required();
  validate->add_option("--gamma", gamma, "Degree of F")->required();
  validate->add_option("--seed", seed, "Seed for the lemma suites");
  validate->add_option("--budget", budget, "Largest q^gamma allowed");
  validate->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*info) {
      const auto z = zeta_data(HyperellipticCurve(MonicPoly::parse(cli_field(q), f_text)));
      write_output(dump(to_json(z)), out_path);
    } else if (*moduli) {
      const auto z = zeta_data(HyperellipticCurve(MonicPoly::parse(cli_field(q), f_text)));
      Json j;
      if (target == "m_rd") {
        j = to_json(count_stable_fixed_det(z, rank, degree));
      } else if (target == "ms20") {
        j = to_json(count_ms20(z));
      } else if (target == "ntilde") {
        j = to_json(count_ntilde(z));
      } else if (target == "higgs") {
        j = to_json(count_higgs(z));
      } else if (target == "siegel_mass") {
        const Rational v = siegel_mass(z, rank);
        j = {{"target", target}, {"value", v.str()}, {"is_integer", v.is_integer()}};
      } else {
        const auto e = log_count_estimate(z, rank, big_c, sigma);
        j = {{"target", target}, {"rank", rank}, {"estimate", json_double(e.estimate)}, {"envelope", json_double(e.envelope)}};
      }
      write_output(dump(j), out_path);
    } else if (*sweep) {
      FamilySpec spec{cli_field(q), gamma};
      spec.mode = mode == "enumerate" ? FamilyMode::kEnumerate : FamilyMode::kSample;
      spec.sample_count = samples;
      spec.seed = seed;
      spec.budget = budget;
      const Family fam(spec);
      SweepOptions opts;
      opts.rank = rank;
      opts.degree = degree;
      opts.cutoff = cutoff;
      opts.truncation = truncation;
      opts.max_moment = max_moment;
      opts.convention = parse_symbol_convention(symbol);
      opts.envelope_c = env_c;
      opts.envelope_exponent = env_exp;
      opts.r_only = r_only;
      opts.workers = worker_count(workers);
      const auto records = sweep_records(fam, opts);
      write_output(to_csv(records), out_path);
      if (!report_path.empty()) write_output(dump(to_json(empirical_stats(records, spec, opts))), report_path);
    } else if (*moments) {
      Json j;
      j["q"] = q;
      j["D"] = big_d;
      Json hm = Json::array(), cov = Json::array(), phi = Json::array();
      for (int k = 0; k <= k_max; ++k) {
        for (int n = 1; n <= n_max; ++n) {
          const auto h = theoretical_moment(q, k, n, big_d);
          hm.push_back({{"k", k}, {"n", n}, {"value", json_double(h.value)}, {"tail_bound", json_double(h.tail)}});
        }
        for (double t : ts) {
          const auto v = characteristic_function(q, k, t, big_d, 12, over_q2);
          phi.push_back({{"k", k}, {"t", t}, {"re", json_double(v.real())}, {"im", json_double(v.imag())}});
        }
      }
      for (int i = 1; i <= k_max; ++i) {
        for (int jj = i + 1; jj <= k_max; ++jj) {
          const auto c = limit_covariance(q, i, jj, big_d);
          cov.push_back({{"i", i}, {"j", jj}, {"value", json_double(c.value)}, {"tail_bound", json_double(c.tail)}});
        }
      }
      j["theoretical_moments"] = hm;
      j["limit_covariance"] = cov;
      j["characteristic_function"] = phi;
      write_output(dump(j), out_path);
    } else if (*validate) {
      FamilySpec spec{cli_field(q), gamma};
      spec.budget = budget;
      const auto results = run_suites(suite, Family(spec), seed);
      Json j = Json::array();
      bool ok = true;
      for (const auto& r : results) {
        ok &= r.ok();
        j.push_back({{"suite", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"ok", r.ok()},
                     {"first_failure", r.first_failure}});
      }
      write_output(dump(j), out_path);
      return ok ? kOk : kValidationFailed;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kValidationFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationFailed;
  }
  return kOk;
}
