#pragma once

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include "actfort/ecosystem.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(ACTFORT_FIXTURE_DIR) + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return std::string(ACTFORT_GOLDEN_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline actfort::Ecosystem load_fixture(const std::string& name) {
  return actfort::Ecosystem::load_file(fixture_path(name));
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the installed CLI binary with output capture. Arguments are shell-quoted
// by the caller where needed; fixture paths contain no metacharacters.
inline CliResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string base = "/tmp/actfort_cli_" + std::to_string(++counter);
  std::string out_path = base + ".out";
  std::string err_path = base + ".err";
  std::string command = std::string(ACTFORT_CLI_PATH) + " " + args + " > " +
                        out_path + " 2> " + err_path;
  int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

}  // namespace testutil
