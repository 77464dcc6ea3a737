#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mfhxa {

inline constexpr const char* kToolVersion = "1.0.0";

/// Provenance block embedded as '#' lines at the top of every output file.
///
/// `arguments` is the resolved argument list of the run without --in/--out,
/// so a manifest can be replayed with `replay_arguments`. The timestamp line
/// is the only line that changes between identical runs.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::string seed;  // empty when the command draws no random numbers
  std::string tool_version = kToolVersion;
  std::string timestamp;

  void write(std::ostream& out) const;

  /// Rebuilds a manifest from the comment lines of an output file.
  static RunManifest parse(const std::vector<std::string>& comment_lines);
};

inline constexpr const char* kTimestampKey = "mfhxa.timestamp=";

/// Argument vector that reruns the manifest's command into `out_path`.
std::vector<std::string> replay_arguments(const RunManifest& manifest,
                                          const std::string& out_path);

std::string utc_timestamp();

}  // namespace mfhxa
