#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "moduli_census/curve.hpp"
#include "moduli_census/moduli.hpp"
#include "moduli_census/stats.hpp"

namespace census {

using Json = nlohmann::ordered_json;

/// "%.17g"; empty for NaN.
std::string format_double(double x);
/// JSON number, or null for NaN and infinities.
Json json_double(double x);

/// Keys q, gamma, genus, F, N (N_1..N_g), L_poly, jacobian_q, jacobian_q2, zeta (k -> "num/den").
Json to_json(const CurveZeta& z, int max_zeta_k = 4);
/// Keys target, value, is_integer, hypotheses, cross_checks (name -> {expected, got, residual}), components.
Json to_json(const ModuliReport& r);
Json to_json(const SweepReport& r);
Json to_json(const LemmaCheck& c);

/// CSV header and rows of a sweep; every row has the header's column count.
std::string csv_header(const FamilyRecord& first);
std::string csv_row(const FamilyRecord& r);
std::string to_csv(const std::vector<FamilyRecord>& records);

/// Writes text to path, or to stdout for "" and "-". Throws IoError naming the path.
void write_output(const std::string& text, const std::string& path);

}  // namespace census
