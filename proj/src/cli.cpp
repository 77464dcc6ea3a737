#include "mfhxa/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "mfhxa/error.hpp"
#include "mfhxa/estimator.hpp"
#include "mfhxa/generators.hpp"
#include "mfhxa/io.hpp"
#include "mfhxa/manifest.hpp"

namespace mfhxa::cli {

namespace {

namespace fs = std::filesystem;

// key=value arguments. Every read is recorded with the value actually used,
// which becomes the replayable argument list in the run manifest.
class Params {
 public:
  explicit Params(const std::vector<std::string>& tokens) {
    for (const auto& tok : tokens) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ParameterError("expected key=value, got '" + tok + "'");
      }
      const std::string key = tok.substr(0, eq);
      if (values_.contains(key)) throw ParameterError("parameter '" + key + "' given twice");
      values_[key] = tok.substr(eq + 1);
      order_.push_back(key);
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto it = values_.find(key);
    return record(key, it == values_.end() ? fallback : it->second);
  }

  double real(const std::string& key, double fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return record_number(key, fallback);
    return record_number(key, parse_real(key, it->second));
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) return record_count(key, fallback);
    return record_count(key, parse_count(key, it->second));
  }

  std::uint64_t seed() {
    if (const auto it = values_.find("seed"); it != values_.end()) {
      return record_count("seed", parse_count("seed", it->second));
    }
    if (const char* env = std::getenv("MFHXA_SEED"); env && *env) {
      return record_count("seed", parse_count("MFHXA_SEED", env));
    }
    return record_count("seed", 1);
  }

  void check_all_used() const {
    for (const auto& key : order_) {
      if (!used_.contains(key)) throw ParameterError("unknown parameter '" + key + "'");
    }
  }

  const std::vector<std::string>& resolved() const { return resolved_; }

  static double parse_real(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || text.empty() || !std::isfinite(v)) {
      throw ParameterError("parameter '" + key + "' expects a number, got '" + text + "'");
    }
    return v;
  }

  static std::size_t parse_count(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      if (!text.empty() && text.front() != '-') v = std::stoull(text, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != text.size() || text.empty()) {
      throw ParameterError("parameter '" + key + "' expects a non-negative integer, got '" +
                           text + "'");
    }
    return static_cast<std::size_t>(v);
  }

 private:
  std::string record(const std::string& key, std::string value) {
    used_[key] = true;
    resolved_.push_back(key + "=" + value);
    return value;
  }
  double record_number(const std::string& key, double v) {
    record(key, format_number(v));
    return v;
  }
  std::size_t record_count(const std::string& key, std::size_t v) {
    record(key, std::to_string(v));
    return v;
  }

  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
  std::map<std::string, bool> used_;
  std::vector<std::string> resolved_;
};

struct Invocation {
  std::vector<std::string> positional;
  std::vector<std::string> inputs;
  std::string out_path;
};

TauRange parse_tau_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const auto v = Params::parse_count("tau_max", text);
    return {v, v};
  }
  return {Params::parse_count("tau_max", text.substr(0, colon)),
          Params::parse_count("tau_max", text.substr(colon + 1))};
}

// "0.1:3:0.1" (first:last:step) or "0.5,1,2".
std::vector<double> parse_q_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(Params::parse_real("q", item));
    if (parts.size() != 3) throw ParameterError("parameter 'q' range must be first:last:step");
    return q_range(parts[0], parts[1], parts[2]);
  }
  std::vector<double> q;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) q.push_back(Params::parse_real("q", item));
  return q;
}

EstimationConfig read_config(Params& p) {
  const std::string preset = p.text("preset", "synthetic");
  EstimationConfig c;
  if (preset == "synthetic") {
    c = EstimationConfig::synthetic();
  } else if (preset == "real") {
    c = EstimationConfig::real_data();
  } else {
    throw ParameterError("parameter 'preset' must be synthetic or real, got '" + preset + "'");
  }
  if (p.has("q")) c.q_grid = parse_q_grid(p.text("q", ""));
  if (p.has("tau_max")) c.tau_max_range = parse_tau_range(p.text("tau_max", ""));
  c.tau_min = p.count("tau_min", c.tau_min);
  c.filter = parse_trend_filter(p.text("filter", std::string(to_string(c.filter))));
  c.min_fit_points = p.count("min_fit_points", c.min_fit_points);
  c.confidence = p.real("confidence", c.confidence);
  c.validate();
  return c;
}

EstimationConfig read_decomposition_config(Params& p) {
  const std::string preset = p.text("preset", "synthetic");
  EstimationConfig c = preset == "real" ? EstimationConfig::real_data()
                                        : EstimationConfig::synthetic();
  if (preset != "synthetic" && preset != "real") {
    throw ParameterError("parameter 'preset' must be synthetic or real, got '" + preset + "'");
  }
  c.tau_min = p.count("tau_min", 1);
  c.decomposition_tau_max = p.count("tau_max", 20);
  c.tau_max_range = {c.decomposition_tau_max, c.decomposition_tau_max};
  c.filter = parse_trend_filter(p.text("filter", std::string(to_string(c.filter))));
  c.min_fit_points = p.count("min_fit_points", c.min_fit_points);
  c.covariance_z_threshold = p.real("z_threshold", c.covariance_z_threshold);
  c.validate();
  return c;
}

struct LoadedPair {
  TimeSeries x;
  TimeSeries y;
  bool self = false;
};

// Inner join on dates, keeping x's order.
void align_on_dates(std::vector<std::string>& dx, std::vector<double>& vx,
                    std::vector<std::string>& dy, std::vector<double>& vy) {
  std::map<std::string, std::size_t> y_at;
  for (std::size_t i = 0; i < dy.size(); ++i) y_at.emplace(dy[i], i);
  std::vector<std::string> dates;
  std::vector<double> ax, ay;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (const auto it = y_at.find(dx[i]); it != y_at.end()) {
      dates.push_back(dx[i]);
      ax.push_back(vx[i]);
      ay.push_back(vy[it->second]);
    }
  }
  dx = dates;
  dy = std::move(dates);
  vx = std::move(ax);
  vy = std::move(ay);
}

std::vector<double> column_values(const CsvData& data, std::size_t column,
                                  const std::string& path) {
  const auto& v = data.columns.at(column);
  if (v.size() < 2) {
    throw InsufficientDataError("insufficient data: " + path + " has " +
                                std::to_string(v.size()) +
                                " observations, at least 2 are required");
  }
  return v;
}

LoadedPair load_pair(const Invocation& inv, Params& p, RunManifest& manifest) {
  if (inv.inputs.empty() || inv.inputs.size() > 2) {
    throw ParameterError("expected one or two --in files");
  }
  for (const auto& path : inv.inputs) manifest.inputs.emplace_back(path, file_sha256(path));
  const std::string input_kind = p.text("input", "increments");
  if (input_kind != "increments" && input_kind != "levels") {
    throw ParameterError("parameter 'input' must be increments or levels, got '" +
                         input_kind + "'");
  }
  const CsvData first = read_csv_file(inv.inputs[0]);
  if (first.columns.empty()) {
    throw InsufficientDataError("insufficient data: " + inv.inputs[0] + " has no numeric data");
  }
  const std::size_t xcol = first.column_index(p.text("xcol", "1"));
  std::vector<double> vx = column_values(first, xcol, inv.inputs[0]);
  std::vector<double> vy;
  std::vector<std::string> dx = first.dates, dy;
  std::string y_label;
  bool self = false;
  if (inv.inputs.size() == 1) {
    const bool want_self = p.has("y") && p.text("y", "self") == "self";
    if (p.has("y") && !want_self) throw ParameterError("parameter 'y' only accepts 'self'");
    if (want_self || (first.columns.size() == 1 && !p.has("ycol"))) {
      self = true;
    } else {
      const std::size_t ycol = first.column_index(p.text("ycol", "2"));
      vy = column_values(first, ycol, inv.inputs[0]);
      y_label = first.names[ycol];
      dy = first.dates;
    }
  } else {
    if (p.has("y")) throw ParameterError("parameter 'y' conflicts with a second --in file");
    const CsvData second = read_csv_file(inv.inputs[1]);
    if (second.columns.empty()) {
      throw InsufficientDataError("insufficient data: " + inv.inputs[1] + " has no numeric data");
    }
    const std::size_t ycol = second.column_index(p.text("ycol", "1"));
    vy = column_values(second, ycol, inv.inputs[1]);
    y_label = second.names[ycol];
    dy = second.dates;
    if (!dx.empty() && !dy.empty() && (dx != dy)) align_on_dates(dx, vx, dy, vy);
  }
  if (!self && vx.size() != vy.size()) {
    throw LengthMismatchError("input lengths differ: " + std::to_string(vx.size()) + " vs " +
                              std::to_string(vy.size()));
  }
  auto to_levels = [&](TimeSeries s) {
    return input_kind == "increments" ? cumulative_levels(s) : s;
  };
  TimeSeries x = to_levels(TimeSeries(std::move(vx), first.names[xcol]));
  if (self) return {x, x, true};
  TimeSeries y = to_levels(TimeSeries(std::move(vy), y_label));
  return {std::move(x), std::move(y), false};
}

void require_length(const TimeSeries& levels, std::size_t largest_tau) {
  if (levels.size() < largest_tau + 2) {
    throw InsufficientDataError("insufficient data: series of " +
                                std::to_string(levels.size()) +
                                " levels cannot support lags up to " +
                                std::to_string(largest_tau));
  }
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open output file " + path.string());
  return out;
}

// Writes <prefix>.curve.tsv and <prefix>.grid.tsv; returns the curve.
GeneralizedHurstCurve write_estimate(const fs::path& prefix, const TimeSeries& x,
                                     const TimeSeries& y, bool self,
                                     const EstimationConfig& config,
                                     const RunManifest& manifest) {
  require_length(x, config.largest_tau());
  const HeightCovarianceGrid grid_xy = covariance_grid(x, self ? x : y, config);
  const GeneralizedHurstCurve xy = hurst_curve_from_grid(grid_xy, config);
  GeneralizedHurstCurve xx = xy, yy = xy;
  if (!self) {
    xx = hurst_curve_from_grid(covariance_grid(x, x, config), config);
    yy = hurst_curve_from_grid(covariance_grid(y, y, config), config);
  }
  auto header = [&](std::ostream& out, const char* table) {
    manifest.write(out);
    out << "# table=" << table << "\n# x=" << x.label() << "\n# y="
        << (self ? x.label() : y.label()) << (self ? " (self)" : "") << '\n';
    write_config_comments(out, config);
  };
  {
    auto out = open_output(prefix.string() + ".curve.tsv");
    header(out, "generalized-hurst-curve");
    write_curve_table(out, xy, xx, yy);
  }
  {
    auto out = open_output(prefix.string() + ".grid.tsv");
    header(out, "height-covariance-grid");
    write_grid_table(out, grid_xy);
  }
  return xy;
}

std::string slope_or_nan(const TimeSeries& s, double q, const EstimationConfig& c,
                         std::string& diagnostic) {
  try {
    const double qs[] = {q};
    const auto grid =
        covariance_grid(s, s, qs, c.tau_min, c.decomposition_tau_max, c.filter);
    return format_number(fit_hurst_single(grid, q, c.decomposition_tau_max, c.min_fit_points));
  } catch (const Error& e) {
    diagnostic = e.what();
    return "nan";
  }
}

ScalingDecomposition write_decomposition(std::ostream& out, const TimeSeries& x,
                                         const TimeSeries& y, double q,
                                         const EstimationConfig& config,
                                         const RunManifest& manifest) {
  require_length(x, config.decomposition_tau_max);
  const ScalingDecomposition dec = scaling_decomposition(x, y, q, config);
  const double qs[] = {q};
  const auto kx = covariance_grid(x, x, qs, config.tau_min, config.decomposition_tau_max,
                                  config.filter);
  const auto ky = covariance_grid(y, y, qs, config.tau_min, config.decomposition_tau_max,
                                  config.filter);
  std::string dx, dy;
  const std::string hx = slope_or_nan(x, q, config, dx);
  const std::string hy = slope_or_nan(y, q, config, dy);
  manifest.write(out);
  out << "# table=scaling-decomposition\n# x=" << x.label() << "\n# y=" << y.label() << '\n'
      << "# q=" << format_number(q) << "\n# fit_tau=" << config.tau_min << ":"
      << config.decomposition_tau_max << "\n# filter=" << to_string(config.filter)
      << "\n# z_threshold=" << format_number(config.covariance_z_threshold) << '\n'
      << "# H_x=" << hx << (dx.empty() ? "" : " (" + dx + ")") << '\n'
      << "# H_y=" << hy << (dy.empty() ? "" : " (" + dy + ")") << '\n';
  if (dec.alpha) {
    out << "# alpha=" << format_number(dec.alpha->alpha) << '\n'
        << "# alpha_record\tq=" << format_number(q)
        << "\talpha=" << format_number(dec.alpha->alpha)
        << "\tn_points=" << dec.alpha->n_points << "\texcluded=" << dec.alpha->excluded
        << '\n';
  } else {
    out << "# alpha=no-scaling (" << dec.no_alpha_reason << ")\n"
        << "# alpha_record\tq=" << format_number(q) << "\talpha=no-scaling\tn_points="
        << dec.alpha_fit_taus.size() << '\n';
  }
  out << "tau\tK_x\tK_y\tK_xy\tproduct_term\tcovariance_term\tcorrelation_z\n";
  for (std::size_t i = 0; i < dec.terms.size(); ++i) {
    const auto& t = dec.terms[i];
    out << t.tau << '\t' << format_number(kx.at(0, t.tau)) << '\t'
        << format_number(ky.at(0, t.tau)) << '\t' << format_number(t.k_xy) << '\t'
        << format_number(t.product_term) << '\t' << format_number(t.covariance_term)
        << '\t' << format_number(t.correlation_z) << '\n';
  }
  return dec;
}

RunManifest make_manifest(const std::string& command, const std::vector<std::string>& lead,
                          const Params& p) {
  RunManifest m;
  m.command = command;
  m.arguments = lead;
  m.arguments.insert(m.arguments.end(), p.resolved().begin(), p.resolved().end());
  for (const auto& a : p.resolved()) {
    if (a.starts_with("seed=")) m.seed = a.substr(5);
  }
  m.timestamp = utc_timestamp();
  return m;
}

// ---- generate -------------------------------------------------------------

int cmd_generate(const Invocation& inv, std::ostream& stdout_stream) {
  if (inv.positional.empty()) {
    throw ParameterError("generate needs a generator: mbm, arfima, arfima-pair, two-component");
  }
  const std::string name = inv.positional[0];
  Params p({inv.positional.begin() + 1, inv.positional.end()});
  CsvData data;
  if (name == "mbm") {
    MbmConfig c;
    c.m0 = p.real("m0", 0.3);
    c.k = static_cast<int>(p.count("k", 16));
    data.names = {"mu"};
    const auto mu = generate_mbm(c);
    data.columns = {{mu.values().begin(), mu.values().end()}};
  } else if (name == "arfima") {
    ArfimaConfig c;
    c.d = p.real("d", 0.3);
    c.length = p.count("length", 10000);
    c.burn_in = p.count("burn_in", 2000);
    c.truncation = p.count("truncation", 10000);
    c.seed = p.seed();
    const auto x = generate_arfima(c, standard_normal_noise(c.length + c.burn_in, c.seed));
    data.names = {"x"};
    data.columns = {{x.values().begin(), x.values().end()}};
  } else if (name == "arfima-pair") {
    const double d1 = p.real("d1", 0.3);
    const double d2 = p.real("d2", 0.1);
    const double rho = p.real("rho", 0.0);
    const std::size_t length = p.count("length", 10000);
    const std::size_t burn_in = p.count("burn_in", 2000);
    const std::size_t truncation = p.count("truncation", 10000);
    const auto [x, y] =
        generate_arfima_pair(d1, d2, rho, length, burn_in, truncation, p.seed());
    data.names = {"x", "y"};
    data.columns = {{x.values().begin(), x.values().end()},
                    {y.values().begin(), y.values().end()}};
  } else if (name == "two-component") {
    TwoComponentConfig c;
    c.d1 = p.real("d1", 0.3);
    c.d2 = p.real("d2", 0.3);
    c.w = p.real("w", 0.75);
    c.length = p.count("length", 10000);
    c.burn_in = p.count("burn_in", 2000);
    c.truncation = p.count("truncation", 10000);
    c.seed = p.seed();
    const auto [x, y] = generate_two_component(c);
    data.names = {"x", "y"};
    data.columns = {{x.values().begin(), x.values().end()},
                    {y.values().begin(), y.values().end()}};
  } else {
    throw ParameterError("unknown generator '" + name +
                         "' (expected mbm, arfima, arfima-pair, two-component)");
  }
  p.check_all_used();
  const RunManifest manifest = make_manifest("generate", {name}, p);
  auto emit = [&](std::ostream& out) {
    out << "# generator=" << name;
    for (const auto& a : p.resolved()) out << ' ' << a;
    out << '\n';
    manifest.write(out);
    write_csv_body(out, data);
  };
  if (inv.out_path.empty()) {
    emit(stdout_stream);
  } else {
    auto out = open_output(inv.out_path);
    emit(out);
  }
  return 0;
}

// ---- transform ------------------------------------------------------------

int cmd_transform(const Invocation& inv, std::ostream& stdout_stream) {
  if (inv.positional.empty()) {
    throw ParameterError("transform needs one of log-returns, abs-returns, volume-deviation");
  }
  if (inv.inputs.size() != 1) throw ParameterError("transform expects exactly one --in file");
  const std::string name = inv.positional[0];
  Params p({inv.positional.begin() + 1, inv.positional.end()});
  const CsvData in = read_csv_file(inv.inputs[0]);
  std::vector<std::size_t> selected;
  if (p.has("column")) {
    selected.push_back(in.column_index(p.text("column", "")));
  } else {
    for (std::size_t j = 0; j < in.columns.size(); ++j) selected.push_back(j);
  }
  if (selected.empty() || in.rows() == 0) {
    throw InsufficientDataError("insufficient data: " + inv.inputs[0] + " has no numeric rows");
  }
  std::size_t dropped = 0;
  std::function<TimeSeries(const TimeSeries&)> op;
  if (name == "log-returns") {
    op = [](const TimeSeries& s) { return log_returns(s); };
    dropped = 1;
  } else if (name == "abs-returns") {
    op = [](const TimeSeries& s) { return absolute_returns(s); };
    dropped = 1;
  } else if (name == "volume-deviation") {
    const std::size_t window = p.count("window", 500);
    op = [window](const TimeSeries& s) { return volume_relative_deviation(s, window); };
    dropped = window;
  } else {
    throw ParameterError("unknown transform '" + name +
                         "' (expected log-returns, abs-returns, volume-deviation)");
  }
  p.check_all_used();
  CsvData out_data;
  for (std::size_t j : selected) {
    const TimeSeries r = op(in.series(j));
    out_data.names.push_back(in.names[j]);
    out_data.columns.emplace_back(r.values().begin(), r.values().end());
  }
  if (!in.dates.empty()) {
    out_data.dates.assign(in.dates.begin() + static_cast<std::ptrdiff_t>(dropped),
                          in.dates.end());
  }
  RunManifest manifest = make_manifest("transform", {name}, p);
  manifest.inputs.emplace_back(inv.inputs[0], file_sha256(inv.inputs[0]));
  auto emit = [&](std::ostream& out) {
    out << "# transform=" << name;
    for (const auto& a : p.resolved()) out << ' ' << a;
    out << '\n';
    manifest.write(out);
    write_csv_body(out, out_data);
  };
  if (inv.out_path.empty()) {
    emit(stdout_stream);
  } else {
    auto out = open_output(inv.out_path);
    emit(out);
  }
  return 0;
}

// ---- estimate / decompose -------------------------------------------------

int cmd_estimate(const Invocation& inv, std::ostream& err) {
  if (inv.out_path.empty()) {
    throw ParameterError("estimate needs --out PREFIX (writes PREFIX.curve.tsv and PREFIX.grid.tsv)");
  }
  Params p(inv.positional);
  EstimationConfig config = read_config(p);
  RunManifest manifest;
  LoadedPair pair = load_pair(inv, p, manifest);
  p.check_all_used();
  auto inputs = std::move(manifest.inputs);
  manifest = make_manifest("estimate", {}, p);
  manifest.inputs = std::move(inputs);
  const auto curve = write_estimate(inv.out_path, pair.x, pair.y, pair.self, config, manifest);
  if (curve.succeeded() == 0) {
    err << "mfhxa: estimation failed at every q";
    if (!curve.points.empty()) err << " (first: " << curve.points.front().diagnostic << ")";
    err << '\n';
    return 1;
  }
  return 0;
}

int cmd_decompose(const Invocation& inv, std::ostream& stdout_stream) {
  Params p(inv.positional);
  const double q = p.real("q", 2.0);
  EstimationConfig config = read_decomposition_config(p);
  RunManifest manifest;
  LoadedPair pair = load_pair(inv, p, manifest);
  p.check_all_used();
  auto inputs = std::move(manifest.inputs);
  manifest = make_manifest("decompose", {}, p);
  manifest.inputs = std::move(inputs);
  if (inv.out_path.empty()) {
    write_decomposition(stdout_stream, pair.x, pair.y, q, config, manifest);
  } else {
    auto out = open_output(inv.out_path);
    write_decomposition(out, pair.x, pair.y, q, config, manifest);
  }
  return 0;
}

// ---- replicate ------------------------------------------------------------

struct ArfimaCase {
  const char* id;
  double rho;
};

constexpr ArfimaCase kCorrelatedCases[] = {
    {"fig1b", 1.0}, {"fig1c", 0.5}, {"fig1d", 0.0}, {"fig1e", -0.5}, {"fig1f", -1.0}};

constexpr double kArfimaD1 = 0.3;  // H = 0.8
constexpr double kArfimaD2 = 0.1;  // H = 0.6
constexpr std::size_t kSimLength = 10000;
constexpr std::size_t kBurnIn = 2000;
constexpr std::size_t kTruncation = 10000;
constexpr int kMbmStages = 16;

std::pair<TimeSeries, TimeSeries> mbm_levels() {
  return {cumulative_levels(generate_mbm({0.3, kMbmStages})).relabeled("mbm(m0=0.3)"),
          cumulative_levels(generate_mbm({0.4, kMbmStages})).relabeled("mbm(m0=0.4)")};
}

std::pair<TimeSeries, TimeSeries> arfima_levels(double rho, std::uint64_t seed) {
  const auto [x, y] =
      generate_arfima_pair(kArfimaD1, kArfimaD2, rho, kSimLength, kBurnIn, kTruncation, seed);
  return {cumulative_levels(x).relabeled("arfima(d=0.3)"),
          cumulative_levels(y).relabeled("arfima(d=0.1)")};
}

std::pair<TimeSeries, TimeSeries> two_component_levels(double w, std::uint64_t seed) {
  TwoComponentConfig c;
  c.d1 = 0.3;
  c.d2 = 0.3;
  c.w = w;
  c.length = kSimLength;
  c.burn_in = kBurnIn;
  c.truncation = kTruncation;
  c.seed = seed;
  const auto [x, y] = generate_two_component(c);
  return {cumulative_levels(x).relabeled("two-component-x"),
          cumulative_levels(y).relabeled("two-component-y")};
}

std::string rho_tag(double rho) { return "rho=" + format_number(rho); }

int cmd_replicate(const Invocation& inv) {
  if (inv.positional.empty()) throw ParameterError("replicate needs a figure id");
  const std::string id = inv.positional[0];
  const auto& valid = replicate_figures();
  if (std::find(valid.begin(), valid.end(), id) == valid.end()) {
    std::string list;
    for (const auto& v : valid) list += (list.empty() ? "" : ", ") + v;
    throw ParameterError("unknown figure id '" + id + "'; valid ids: " + list);
  }
  if (inv.out_path.empty()) throw ParameterError("replicate needs --out DIR");
  Params p({inv.positional.begin() + 1, inv.positional.end()});
  const std::uint64_t seed = p.seed();
  p.check_all_used();
  const RunManifest manifest = make_manifest("replicate", {id}, p);
  const fs::path dir = inv.out_path;
  fs::create_directories(dir);

  const EstimationConfig curve_config = EstimationConfig::synthetic();
  EstimationConfig dec_config = EstimationConfig::synthetic();
  dec_config.decomposition_tau_max = 20;

  auto estimate = [&](const std::pair<TimeSeries, TimeSeries>& xy) {
    write_estimate(dir / id, xy.first, xy.second, false, curve_config, manifest);
  };
  auto decompose = [&](const std::pair<TimeSeries, TimeSeries>& xy, const std::string& name) {
    auto out = open_output(dir / (name + ".decomposition.tsv"));
    write_decomposition(out, xy.first, xy.second, 2.0, dec_config, manifest);
  };

  if (id == "fig1a") {
    estimate(mbm_levels());
  } else if (id == "fig1g") {
    estimate(two_component_levels(0.75, seed));
  } else if (id == "fig1h") {
    estimate(two_component_levels(0.5, seed));
  } else if (id == "fig2a") {
    decompose(mbm_levels(), id);
  } else if (id == "fig2b") {
    for (double rho : {1.0, 0.5, -0.5, -1.0}) {
      decompose(arfima_levels(rho, seed), id + "." + rho_tag(rho));
    }
  } else if (id == "fig2c") {
    decompose(two_component_levels(0.75, seed), id);
  } else if (id == "fig2d") {
    decompose(two_component_levels(0.5, seed), id);
  } else {
    for (const auto& c : kCorrelatedCases) {
      if (id == c.id) estimate(arfima_levels(c.rho, seed));
    }
  }
  return 0;
}

}  // namespace

const std::vector<std::string>& replicate_figures() {
  static const std::vector<std::string> ids = {"fig1a", "fig1b", "fig1c", "fig1d",
                                               "fig1e", "fig1f", "fig1g", "fig1h",
                                               "fig2a", "fig2b", "fig2c", "fig2d"};
  return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multifractal height cross-correlation analysis", "mfhxa"};
  app.require_subcommand(1);
  Invocation inv;
  const std::pair<const char*, const char*> commands[] = {
      {"generate", "Simulate mbm, arfima, arfima-pair or two-component series"},
      {"transform", "Apply log-returns, abs-returns or volume-deviation to a CSV"},
      {"estimate", "Generalized (bivariate) Hurst exponents with confidence intervals"},
      {"decompose", "Split K_xy into product and covariance terms and fit alpha"},
      {"replicate", "Regenerate the tables behind a validation figure"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--in", inv.inputs, "Input CSV (repeat for a second series)")
        ->allow_extra_args(false);
    sub->add_option("--out", inv.out_path, "Output file, prefix or directory");
    sub->add_option("args", inv.positional, "Names and key=value parameters");
    subs[name] = sub;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (subs["generate"]->parsed()) return cmd_generate(inv, out);
    if (subs["transform"]->parsed()) return cmd_transform(inv, out);
    if (subs["estimate"]->parsed()) return cmd_estimate(inv, err);
    if (subs["decompose"]->parsed()) return cmd_decompose(inv, out);
    if (subs["replicate"]->parsed()) return cmd_replicate(inv);
  } catch (const Error& e) {
    err << "mfhxa: error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "mfhxa: error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace mfhxa::cli
