#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace rgperc::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidConfig = 2,
  kDivergent = 3,
  kIoError = 4,
  kNoBracket = 5,
};

/// Built-in defaults for every config field.
nlohmann::json default_config();

/// Hash of the fields that determine a command's output (everything except
/// "out" and "threads"), prefixed by the command name.
std::string config_hash(const std::string& command, const nlohmann::json& config);

/// Entry point shared by the rgperc binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgperc::cli
