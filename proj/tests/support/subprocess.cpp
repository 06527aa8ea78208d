#include "subprocess.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include <sys/wait.h>

#ifndef MATCHQ_CLI_PATH
#error "MATCHQ_CLI_PATH must be defined to the CLI binary path"
#endif

namespace testsupport {

CommandResult run_command(const std::string& command) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) {
    throw std::runtime_error("popen failed for: " + command);
  }
  CommandResult result;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), got);
  }
  const int status = ::pclose(pipe);
  if (status == -1) {
    throw std::runtime_error("pclose failed for: " + command);
  }
  result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return result;
}

CommandResult run_cli(const std::string& args, bool mergeStderr) {
  const std::string redirect = mergeStderr ? " 2>&1" : " 2>/dev/null";
  return run_command(std::string(MATCHQ_CLI_PATH) + " " + args + redirect);
}

}  // namespace testsupport
