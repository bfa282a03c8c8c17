#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace testutil {

// Runs the CLI binary with `args` (shell syntax) and returns its exit code.
inline int run_cli(const std::string& args) {
  const std::string cmd = std::string(HYPOLOG_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// File contents with the timestamp line dropped.
inline std::string without_timestamp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("generated_at") != std::string::npos) {
      continue;
    }
    out += line + "\n";
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("hypolog_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

} // namespace testutil
