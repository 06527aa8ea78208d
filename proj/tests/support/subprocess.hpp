#pragma once

#include <string>

namespace testsupport {

struct CommandResult {
  int exitCode = -1;
  std::string output;
};

// Runs the installed CLI binary (path injected at compile time) with the
// given argument string, capturing stdout. stderr is captured too when
// `mergeStderr` is set, otherwise discarded.
CommandResult run_cli(const std::string& args, bool mergeStderr = false);

// Runs an arbitrary shell command.
CommandResult run_command(const std::string& command);

}  // namespace testsupport
