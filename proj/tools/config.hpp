#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hypolog::cli {

using Json = nlohmann::json;

// Raised for anything that should end the process with exit code 1.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& command_names();
bool is_command(const std::string& name);

struct TimeGrid {
  std::string kind = "log"; // log ({0} + log-spaced), linear, list
  int count = 40;
  double t_min = 0.01;
  double t_max = 3.0;
  std::vector<double> values; // kind == list

  std::vector<double> expand() const;
  bool operator==(const TimeGrid&) const = default;
};

// "log:COUNT:TMIN:TMAX", "linear:COUNT:TMIN:TMAX" or a comma list "0.2,1".
TimeGrid parse_time_grid(const std::string& spec);

struct ExperimentConfig {
  std::string command;
  int m = 2;
  int n = 1;
  int m_max = 4;
  int ensemble = 64;
  int multistarts = 16;
  int budget = 2000;
  std::uint64_t seed = 1;
  std::vector<int> m_list{2, 3};
  // Unset fields take a per-command default when the command runs.
  std::optional<int> points;
  std::optional<std::vector<int>> n_list;
  std::optional<TimeGrid> t_grid;
  std::map<std::string, double> tolerances; // overrides only
  std::string output_dir = ".";
  bool trace = false;
  int threads = 0; // 0: take HYPOLOG_THREADS, else 1

  bool operator==(const ExperimentConfig&) const = default;
};

Json to_json(const ExperimentConfig& cfg);
// Rejects unknown keys and wrongly typed fields, naming them.
ExperimentConfig config_from_json(const Json& j);

// Checks value ranges; throws UsageError listing every offending field.
void validate(const ExperimentConfig& cfg);

// Defaults filled in for cfg.command, as echoed in artifacts and hashed.
// Execution-only fields (output_dir, threads, trace) are left out.
struct ResolvedConfig {
  ExperimentConfig cfg;
  int points = 0;
  std::vector<int> n_list;
  std::vector<double> times;
  TimeGrid grid;
  Json tolerances; // defaults merged with overrides
  Json echo;
  std::string hash;
};

ResolvedConfig resolve(const ExperimentConfig& cfg);

} // namespace hypolog::cli
