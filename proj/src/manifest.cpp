#include "mfhxa/manifest.hpp"

#include <chrono>
#include <ctime>
#include <optional>
#include <ostream>
#include <sstream>

#include "mfhxa/error.hpp"

namespace mfhxa {

void RunManifest::write(std::ostream& out) const {
  out << "# mfhxa.command=" << command << '\n';
  out << "# mfhxa.args=";
  for (std::size_t i = 0; i < arguments.size(); ++i) out << (i ? " " : "") << arguments[i];
  out << '\n';
  for (const auto& [path, digest] : inputs) {
    out << "# mfhxa.input=" << path << '\t' << "sha256:" << digest << '\n';
  }
  if (!seed.empty()) out << "# mfhxa.seed=" << seed << '\n';
  out << "# mfhxa.version=" << tool_version << '\n';
  out << "# " << kTimestampKey << timestamp << '\n';
}

RunManifest RunManifest::parse(const std::vector<std::string>& comment_lines) {
  RunManifest m;
  m.tool_version.clear();
  auto value_of = [](const std::string& line, std::string_view key) -> std::optional<std::string> {
    if (line.starts_with(key)) return line.substr(key.size());
    return std::nullopt;
  };
  bool saw_command = false;
  for (const auto& raw : comment_lines) {
    std::string line = raw;
    if (line.starts_with("#")) line.erase(0, 1);
    while (!line.empty() && line.front() == ' ') line.erase(0, 1);
    if (auto v = value_of(line, "mfhxa.command=")) {
      m.command = *v;
      saw_command = true;
    } else if (auto v = value_of(line, "mfhxa.args=")) {
      std::istringstream is(*v);
      std::string tok;
      while (is >> tok) m.arguments.push_back(tok);
    } else if (auto v = value_of(line, "mfhxa.input=")) {
      const auto tab = v->find('\t');
      const std::string path = v->substr(0, tab);
      std::string digest = tab == std::string::npos ? "" : v->substr(tab + 1);
      if (digest.starts_with("sha256:")) digest.erase(0, 7);
      m.inputs.emplace_back(path, digest);
    } else if (auto v = value_of(line, "mfhxa.seed=")) {
      m.seed = *v;
    } else if (auto v = value_of(line, "mfhxa.version=")) {
      m.tool_version = *v;
    } else if (auto v = value_of(line, kTimestampKey)) {
      m.timestamp = *v;
    }
  }
  if (!saw_command) throw ParseError("no run manifest found in comment lines");
  return m;
}

std::vector<std::string> replay_arguments(const RunManifest& manifest,
                                          const std::string& out_path) {
  std::vector<std::string> args{manifest.command};
  args.insert(args.end(), manifest.arguments.begin(), manifest.arguments.end());
  for (const auto& input : manifest.inputs) {
    args.push_back("--in");
    args.push_back(input.first);
  }
  args.push_back("--out");
  args.push_back(out_path);
  return args;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace mfhxa
