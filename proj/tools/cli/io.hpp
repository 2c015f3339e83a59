#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mvapprox/experiments.hpp"
#include "mvapprox/solver.hpp"
#include "mvapprox/subdivision.hpp"

namespace mvapprox::cli {

/// Shortest-safe text for a double: 17 significant digits, '.' decimal
/// point, independent of the process locale.
std::string format_double(double value);

/// Parses a real written by format_double (or any plain decimal/exponent
/// form). Errors: InvalidArgument.
double parse_double(std::string_view text);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// N lines of N comma-separated reals. Errors: InvalidArgument on malformed
/// text, DimensionMismatch on ragged/non-square input.
Matrix parse_matrix_csv(std::string_view text);

/// Rows "index,value[,value2]" with an optional header line. Indices must
/// cover 0..M-1 exactly once (any order).
PeriodicSequence parse_sequence_csv(std::string_view text);

nlohmann::ordered_json solve_report_json(const SolveReport& report, int dprime);

std::string rho_csv(const std::vector<RhoRecord>& records);

std::string star_csv(const StarRun& run);
nlohmann::ordered_json star_summary_json(const StarRun& run, StarVariant variant);

/// "level,index,value[,value2]" for every level in order.
std::string levels_csv(const std::vector<PeriodicSequence>& levels);

}  // namespace mvapprox::cli
