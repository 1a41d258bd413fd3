#pragma once

// File formats: shear and lambda JSON documents, CSV tables for reports,
// and the fixed number formatting shared by every output.

#include <string>
#include <string_view>
#include <vector>

#include "farey/classify.hpp"
#include "farey/farey.hpp"
#include "farey/lambda.hpp"
#include "farey/shear.hpp"

namespace farey {

/// 17 significant digits of the nearest double; ∞ as "inf".
std::string format_real(Real x);

/// Parses {"default": x, "depth": D, "edges": [{"key": "p/q|r/s", "s": x}]}.
/// Throws std::invalid_argument on malformed text (with byte position),
/// unknown or duplicate keys, non-Farey edges and edges beyond depth.
ShearMap read_shear_json(std::string_view text);
std::string write_shear_json(const ShearMap& s);

/// Same layout with "lambda" in place of "s"; values must be positive.
LambdaMap read_lambda_json(std::string_view text);
std::string write_lambda_json(const LambdaMap& lambda);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);
/// Writes to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content);

/// Comma-separated edge keys.
std::vector<FareyEdge> parse_edge_list(std::string_view text);
/// Comma-separated extended rationals.
std::vector<ExtendedRational> parse_vertex_list(std::string_view text);

std::string tessellation_csv(std::size_t depth);
std::string char_map_csv(const std::vector<ExtendedRational>& vertices, const std::vector<Real>& values);
std::string fan_report_csv(const QsReport& report);
std::string symmetric_csv(const std::vector<SymmetricBucket>& buckets);
std::string chain_series_csv(const ChainSeriesReport& report);
std::string lambda_series_csv(const LambdaSeriesReport& report);
std::string realization_csv(const DecoratedRealization& r);

using Summary = std::vector<std::pair<std::string, std::string>>;

/// Appends the summary as a trailing "# key=value ..." comment line.
std::string with_summary_csv(const std::string& csv, const Summary& summary);

/// {"rows": [{column: cell, ...}, ...], "summary": {...}} from a headed CSV
/// table; numeric cells are written as numbers, everything else as strings.
std::string csv_to_json(const std::string& csv, const Summary& summary);

}  // namespace farey
