#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cantor/construction.hpp"
#include "cantor/orthopoly.hpp"
#include "cantor/report.hpp"

namespace cantor {

using Json = nlohmann::json;

/// {spec, s, precision_bits, digits, intervals: [{j, a, a_err, b, b_err}], r_s, r_s_err, delta_s, delta_s_err}.
/// Values are printed with enough digits to reload bit-exactly at precision_bits;
/// error radii are rounded up.
Json level_to_json(const LevelSet& level, const GammaSpec& spec);
LevelSet level_from_json(const Json& doc);

/// {check, parameters, samples, worst_ratio, pass, failures, summary}.
Json report_to_json(const CheckReport& report);
std::string report_to_tsv(const CheckReport& report);

/// Rows {n, alpha, beta, a_n, root} plus the diagnostic statistics.
Json regularity_to_json(const RecurrenceCoefficients& rc, const RegularityDiagnostic& diag);
std::string regularity_to_tsv(const RecurrenceCoefficients& rc, const RegularityDiagnostic& diag);

std::string level_to_tsv(const LevelSet& level);

/// Cover as a list of [lo, hi] decimal-string pairs.
std::vector<std::pair<Ball, Ball>> cover_from_json(const Json& doc, Bits bits);

/// Pretty-printed with sorted keys and a trailing newline.
std::string serialize(const Json& doc);

/// Writes to a temporary sibling file, then renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace cantor
