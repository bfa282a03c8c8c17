#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace hypolog::cli {

struct CsvOutput {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
};

struct CommandOutput {
  Json result = Json::object();
  std::vector<std::string> failures; // failed invariant checks
  std::optional<CsvOutput> csv;
  std::optional<Json> trace;
};

CommandOutput run_command(const ResolvedConfig& rc, int threads);

// Full process entry point; returns the exit code.
int run(int argc, char** argv);

} // namespace hypolog::cli
