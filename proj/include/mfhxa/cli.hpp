#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfhxa::cli {

/// Runs one `mfhxa` invocation. `args` excludes the program name.
/// Returns the process exit code; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Figure ids accepted by `replicate`.
const std::vector<std::string>& replicate_figures();

}  // namespace mfhxa::cli
