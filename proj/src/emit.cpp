#include "moduli_census/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "moduli_census/errors.hpp"

namespace census {

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

namespace {

Json big_list(const std::vector<BigInt>& v, std::size_t count) {
  Json out = Json::array();
  for (std::size_t i = 0; i < std::min(count, v.size()); ++i) out.push_back(Json::parse(v[i].get_str()));
  return out;
}

std::string key(const std::pair<int, int>& p) { return std::to_string(p.first) + "," + std::to_string(p.second); }

}  // namespace

Json to_json(const CurveZeta& z, int max_zeta_k) {
  Json j;
  j["q"] = z.q();
  j["gamma"] = z.curve().gamma();
  j["genus"] = z.genus();
  j["F"] = z.curve().f().str();
  j["N"] = big_list(z.counts(), static_cast<std::size_t>(z.genus()));
  j["L_poly"] = big_list(z.l_poly(), z.l_poly().size());
  j["jacobian_q"] = Json::parse(jacobian_count(z, 1).get_str());
  j["jacobian_q2"] = Json::parse(jacobian_count(z, 2).get_str());
  Json zeta = Json::object();
  for (int k = 2; k <= max_zeta_k; ++k) zeta[std::to_string(k)] = zeta_value(z, k).str();
  j["zeta"] = zeta;
  j["rh_deviation"] = json_double(z.rh_deviation());
  return j;
}

Json to_json(const ModuliReport& r) {
  Json j;
  j["target"] = r.target;
  j["value"] = r.value.str();
  j["is_integer"] = r.is_integer;
  Json h = Json::object();
  for (const auto& [name, flag] : r.hypotheses) h[name] = flag;
  j["hypotheses"] = h;
  Json c = Json::object();
  for (const auto& x : r.cross_checks) {
    c[x.name] = {{"expected", x.expected.str()}, {"got", x.got.str()}, {"residual", x.residual().str()}};
  }
  j["cross_checks"] = c;
  Json comp = Json::object();
  for (const auto& [name, v] : r.components) comp[name] = v.str();
  j["components"] = comp;
  return j;
}

Json to_json(const SweepReport& r) {
  Json j;
  j["q"] = r.q;
  j["gamma"] = r.gamma;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["count"] = r.count;
  j["cutoff"] = r.cutoff;
  j["truncation"] = r.truncation;
  Json m = Json::object();
  for (const auto& [kn, v] : r.moments) {
    Json e{{"empirical", json_double(v)}};
    if (auto it = r.theoretical_moments.find(kn); it != r.theoretical_moments.end()) {
      e["theoretical"] = json_double(it->second.value);
      e["tail_bound"] = json_double(it->second.tail);
    }
    m[key(kn)] = e;
  }
  j["moments"] = m;
  Json c = Json::object();
  for (const auto& [ij, v] : r.covariance) {
    Json e{{"empirical", json_double(v)}};
    if (auto it = r.limit_covariances.find(ij); it != r.limit_covariances.end()) {
      e["limit"] = json_double(it->second.value);
      e["tail_bound"] = json_double(it->second.tail);
    }
    c[key(ij)] = e;
  }
  j["covariance"] = c;
  Json g = Json::object();
  for (const auto& [k, d] : r.gaussian) {
    g[std::to_string(k)] = {{"mean", json_double(d.mean)},
                            {"variance", json_double(d.variance)},
                            {"skewness", json_double(d.skewness)},
                            {"excess_kurtosis", json_double(d.excess_kurtosis)},
                            {"ks", json_double(d.ks)}};
  }
  j["gaussian"] = g;
  Json res = Json::object();
  for (const auto& [name, s] : r.residuals) {
    res[name] = {{"applicable", s.applicable},
                 {"max_abs", json_double(s.max_abs)},
                 {"median_abs", json_double(s.median_abs)},
                 {"within_envelope", s.within_envelope},
                 {"required_c", json_double(s.required_c)}};
  }
  j["residuals"] = res;
  return j;
}

Json to_json(const LemmaCheck& c) {
  return {{"name", c.name}, {"trials", c.trials}, {"passed", c.passed}, {"worst_ratio", json_double(c.worst_ratio)}};
}

std::string csv_header(const FamilyRecord& first) {
  std::string h = "q,gamma,F,genus";
  for (std::size_t i = 1; i <= first.counts.size(); ++i) h += ",N" + std::to_string(i);
  if (!first.counts.empty()) h += ",jacobian";
  for (std::size_t k = 0; k < first.r_values.size(); ++k) h += ",R" + std::to_string(k);
  h += ",delta_Z";
  for (const auto& [name, v] : first.residuals) h += ",residual_" + name;
  for (const auto& [name, v] : first.flags) h += "," + name;
  return h + "\n";
}

std::string csv_row(const FamilyRecord& r) {
  // F uses ';' between coefficients so the row needs no quoting
  std::string f = r.f_text;
  for (char& ch : f) {
    if (ch == ',') ch = ';';
  }
  std::string row = std::to_string(r.q) + "," + std::to_string(r.gamma) + "," + f + "," + std::to_string(r.genus);
  for (const auto& n : r.counts) row += "," + n.get_str();
  if (!r.counts.empty()) row += "," + r.jacobian.get_str();
  for (double v : r.r_values) row += "," + format_double(v);
  row += "," + format_double(r.delta_z);
  for (const auto& [name, v] : r.residuals) row += "," + format_double(v);
  for (const auto& [name, v] : r.flags) row += v ? ",1" : ",0";
  return row + "\n";
}

std::string to_csv(const std::vector<FamilyRecord>& records) {
  if (records.empty()) return "";
  std::string out = csv_header(records.front());
  for (const auto& r : records) out += csv_row(r);
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write", "<stdout>");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out << text;
  if (!out) throw IoError("write failed", path);
}

}  // namespace census
