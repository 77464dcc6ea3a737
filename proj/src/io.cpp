#include "mfhxa/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string_view>

#include "mfhxa/error.hpp"

namespace mfhxa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '"')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_fields(std::string_view line) {
  const char sep = line.find(',') != std::string_view::npos ? ',' : '\t';
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

bool all_numeric(const std::vector<std::string>& fields, std::size_t from) {
  for (std::size_t i = from; i < fields.size(); ++i) {
    if (!parse_double(fields[i])) return false;
  }
  return true;
}

}  // namespace

std::size_t CsvData::column_index(const std::string& key) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == key) return i;
  }
  if (const auto v = parse_double(key); v && *v >= 1 && *v == std::floor(*v) &&
                                        static_cast<std::size_t>(*v) <= columns.size()) {
    return static_cast<std::size_t>(*v) - 1;
  }
  throw ParameterError("no column '" + key + "' in input");
}

TimeSeries CsvData::series(std::size_t column) const {
  if (column >= columns.size()) throw ParameterError("column index out of range");
  if (columns[column].empty()) {
    throw InsufficientDataError("column '" + names[column] + "' holds no data");
  }
  return TimeSeries(columns[column], names[column]);
}

CsvData read_csv(std::istream& in, const std::string& source_name) {
  CsvData data;
  struct Row {
    std::size_t line;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      data.comments.emplace_back(trim(t.substr(1)));
      continue;
    }
    rows.push_back({line_no, split_fields(t)});
  }
  if (rows.empty()) return data;

  // Date column: the first field of the first data-looking row is not numeric.
  const Row& probe = rows.size() > 1 ? rows[1] : rows[0];
  const bool has_dates = probe.fields.size() >= 2 && !parse_double(probe.fields[0]);
  const std::size_t first_value = has_dates ? 1 : 0;
  const bool has_header = !all_numeric(rows[0].fields, first_value);
  const std::size_t width = rows[0].fields.size();
  if (width <= first_value) {
    throw ParseError(source_name + ":" + std::to_string(rows[0].line) +
                     ": no numeric columns");
  }
  const std::size_t n_cols = width - first_value;
  data.columns.assign(n_cols, {});
  if (has_header) {
    for (std::size_t j = first_value; j < width; ++j) data.names.push_back(rows[0].fields[j]);
  } else {
    for (std::size_t j = 0; j < n_cols; ++j) data.names.push_back("col" + std::to_string(j + 1));
  }
  for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (row.fields.size() != width) {
      throw ParseError(source_name + ":" + std::to_string(row.line) + ": expected " +
                       std::to_string(width) + " fields, found " +
                       std::to_string(row.fields.size()));
    }
    if (has_dates) data.dates.push_back(row.fields[0]);
    for (std::size_t j = first_value; j < width; ++j) {
      const auto v = parse_double(row.fields[j]);
      if (!v) {
        throw ParseError(source_name + ":" + std::to_string(row.line) +
                         ": field " + std::to_string(j + 1) + " ('" + row.fields[j] +
                         "') is not a finite number");
      }
      data.columns[j - first_value].push_back(*v);
    }
  }
  return data;
}

CsvData read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path.string());
  return read_csv(in, path.string());
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

void write_csv_body(std::ostream& out, const CsvData& data) {
  const bool dates = !data.dates.empty();
  if (dates) out << "date";
  for (std::size_t j = 0; j < data.names.size(); ++j) {
    out << (j > 0 || dates ? "," : "") << data.names[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (dates) out << data.dates[i];
    for (std::size_t j = 0; j < data.columns.size(); ++j) {
      out << (j > 0 || dates ? "," : "") << format_number(data.columns[j][i]);
    }
    out << '\n';
  }
}

void write_grid_table(std::ostream& out, const HeightCovarianceGrid& grid) {
  out << "q\ttau\tK\n";
  const auto qs = grid.q_values();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (std::size_t tau = grid.tau_min(); tau <= grid.tau_max(); ++tau) {
      out << format_number(qs[i]) << '\t' << tau << '\t'
          << format_number(grid.at(i, tau)) << '\n';
    }
  }
}

void write_curve_table(std::ostream& out, const GeneralizedHurstCurve& xy,
                       const GeneralizedHurstCurve& xx,
                       const GeneralizedHurstCurve& yy) {
  out << "q\tH\tci_low\tci_high\tn\tH_x\tH_y\th_avg\tdeviates\tdirection\tdiagnostic\n";
  for (std::size_t i = 0; i < xy.points.size(); ++i) {
    const CurvePoint& p = xy.points[i];
    const CurvePoint& px = xx.points.at(i);
    const CurvePoint& py = yy.points.at(i);
    out << format_number(p.q);
    if (p.estimate) {
      const auto& e = *p.estimate;
      out << '\t' << format_number(e.h) << '\t' << format_number(e.ci_low) << '\t'
          << format_number(e.ci_high) << '\t' << e.n_resamples;
    } else {
      out << "\tnan\tnan\tnan\t0";
    }
    const bool both = px.estimate && py.estimate;
    out << '\t' << (px.estimate ? format_number(px.estimate->h) : "nan") << '\t'
        << (py.estimate ? format_number(py.estimate->h) : "nan");
    if (p.estimate && both) {
      const auto v = make_verdict(*p.estimate, *px.estimate, *py.estimate);
      out << '\t' << format_number(v.h_avg) << '\t' << (v.deviates ? "true" : "false")
          << '\t' << to_string(v.direction);
    } else {
      out << "\tnan\tnan\tnone";
    }
    std::string diag = "ok";
    if (!p.diagnostic.empty()) {
      diag = "xy: " + p.diagnostic;
    } else if (!px.diagnostic.empty()) {
      diag = "x: " + px.diagnostic;
    } else if (!py.diagnostic.empty()) {
      diag = "y: " + py.diagnostic;
    }
    for (char& c : diag) {
      if (c == '\t' || c == '\n') c = ' ';
    }
    out << '\t' << diag << '\n';
  }
}

void write_config_comments(std::ostream& out, const EstimationConfig& config) {
  out << "# config.q_grid=";
  for (std::size_t i = 0; i < config.q_grid.size(); ++i) {
    out << (i ? "," : "") << format_number(config.q_grid[i]);
  }
  out << "\n# config.tau_min=" << config.tau_min << "\n# config.tau_max="
      << config.tau_max_range.first << ":" << config.tau_max_range.last
      << "\n# config.filter=" << to_string(config.filter)
      << "\n# config.min_fit_points=" << config.min_fit_points
      << "\n# config.confidence=" << format_number(config.confidence) << '\n';
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

}  // namespace mfhxa
