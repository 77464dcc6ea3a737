#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfhxa/estimator.hpp"
#include "mfhxa/time_series.hpp"

namespace mfhxa {

/// Parsed numeric CSV. A leading non-numeric column is kept as dates and a
/// first row with non-numeric fields is taken as the header. Lines starting
/// with '#' are collected as comments. Fields are split on ',' or, when a
/// line has no comma, on tabs.
struct CsvData {
  std::vector<std::string> dates;  // empty when there is no date column
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> comments;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Column by 1-based index ("2") or by header name.
  std::size_t column_index(const std::string& key) const;
  TimeSeries series(std::size_t column) const;
};

CsvData read_csv(std::istream& in, const std::string& source_name = "<stream>");
CsvData read_csv_file(const std::filesystem::path& path);

/// Numbers in every output use 12 significant digits.
std::string format_number(double value);

/// Writes the header row and data rows (comment lines are the caller's job).
void write_csv_body(std::ostream& out, const CsvData& data);

// Tab-separated tables. Metadata is emitted by the caller as '#' lines.
void write_grid_table(std::ostream& out, const HeightCovarianceGrid& grid);

/// Curve table: q, H, ci_low, ci_high, n, then the univariate comparison
/// columns and a diagnostic column ("ok" or the failure message).
void write_curve_table(std::ostream& out, const GeneralizedHurstCurve& xy,
                       const GeneralizedHurstCurve& xx,
                       const GeneralizedHurstCurve& yy);

void write_config_comments(std::ostream& out, const EstimationConfig& config);

/// SHA-256 of a file's bytes, lowercase hex.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace mfhxa
