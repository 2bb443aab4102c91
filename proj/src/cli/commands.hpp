#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rictk::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitNumeric = 3,
};

/// Runs one command. args excludes the program name. Writes
/// <out>/<command>.csv and <out>/report.json; a failing check yields
/// kExitNumeric after the files are written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Turns a JSON config object into flag tokens: "command" becomes the
/// subcommand, arrays are comma-joined, true booleans become bare flags.
std::vector<std::string> config_tokens(const std::string& json_text);

}  // namespace rictk::cli
