#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hypolog/io.hpp"

namespace hypolog::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "repr-validate",       "qms-spectrum",     "mlsi-estimate",
      "cmlsi-table",         "gradient-curve",   "kappa-lambda",
      "transference-check",  "decay-trajectory", "prop-gradient-check"};
  return names;
}

bool is_command(const std::string& name) {
  const auto& c = command_names();
  return std::find(c.begin(), c.end(), name) != c.end();
}

std::vector<double> TimeGrid::expand() const {
  if (kind == "list") {
    return values;
  }
  std::vector<double> out;
  if (kind == "log") {
    out.push_back(0.0);
    for (int i = 0; i < count; ++i) {
      const double u = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      out.push_back(t_min * std::pow(t_max / t_min, u));
    }
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(t_min + (t_max - t_min) * i / (count - 1));
  }
  return out;
}

TimeGrid parse_time_grid(const std::string& spec) {
  TimeGrid g;
  const auto colon = spec.find(':');
  try {
    if (colon == std::string::npos) {
      g.kind = "list";
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        g.values.push_back(std::stod(item, &used));
        if (used != item.size()) {
          throw std::invalid_argument(item);
        }
      }
      return g;
    }
    g.kind = spec.substr(0, colon);
    std::stringstream ss(spec.substr(colon + 1));
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
      throw std::invalid_argument(spec);
    }
    g.count = std::stoi(a);
    g.t_min = std::stod(b);
    g.t_max = std::stod(c);
  } catch (const std::logic_error&) {
    throw UsageError("t_grid: cannot parse '" + spec + "'");
  }
  if (g.kind != "log" && g.kind != "linear") {
    throw UsageError("t_grid: unknown kind '" + g.kind + "' (log, linear or a comma list)");
  }
  return g;
}

namespace {

Json grid_to_json(const TimeGrid& g) {
  if (g.kind == "list") {
    return {{"kind", "list"}, {"values", g.values}};
  }
  return {{"kind", g.kind}, {"count", g.count}, {"t_min", g.t_min}, {"t_max", g.t_max}};
}

template <class T>
T field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

void reject_unknown(const Json& j, const std::vector<std::string>& known, const std::string& where) {
  std::string bad;
  for (const auto& [k, v] : j.items()) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      bad += (bad.empty() ? "" : ", ") + k;
    }
  }
  if (!bad.empty()) {
    throw UsageError("unknown " + where + " field(s): " + bad);
  }
}

TimeGrid grid_from_json(const Json& j) {
  if (!j.is_object()) {
    throw UsageError("config field 't_grid' must be an object");
  }
  TimeGrid g;
  g.kind = j.contains("kind") ? field<std::string>(j, "kind") : "";
  if (g.kind == "list") {
    reject_unknown(j, {"kind", "values"}, "t_grid");
    if (!j.contains("values")) {
      throw UsageError("missing field: t_grid.values");
    }
    g.values = field<std::vector<double>>(j, "values");
    return g;
  }
  if (g.kind != "log" && g.kind != "linear") {
    throw UsageError("t_grid.kind must be log, linear or list");
  }
  reject_unknown(j, {"kind", "count", "t_min", "t_max"}, "t_grid");
  std::string missing;
  for (const char* k : {"count", "t_min", "t_max"}) {
    if (!j.contains(k)) {
      missing += (missing.empty() ? "" : ", ") + std::string("t_grid.") + k;
    }
  }
  if (!missing.empty()) {
    throw UsageError("missing field(s): " + missing);
  }
  g.count = field<int>(j, "count");
  g.t_min = field<double>(j, "t_min");
  g.t_max = field<double>(j, "t_max");
  return g;
}

} // namespace

Json to_json(const ExperimentConfig& c) {
  Json j{{"command", c.command},         {"m", c.m},
         {"n", c.n},                     {"m_max", c.m_max},
         {"ensemble", c.ensemble},       {"multistarts", c.multistarts},
         {"budget", c.budget},           {"seed", c.seed},
         {"m_list", c.m_list},           {"tolerances", c.tolerances},
         {"output_dir", c.output_dir},   {"trace", c.trace},
         {"threads", c.threads}};
  if (c.points) {
    j["points"] = *c.points;
  }
  if (c.n_list) {
    j["n_list"] = *c.n_list;
  }
  if (c.t_grid) {
    j["t_grid"] = grid_to_json(*c.t_grid);
  }
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) {
    throw UsageError("config must be a JSON object");
  }
  reject_unknown(j,
                 {"command", "m", "n", "m_max", "ensemble", "multistarts", "budget", "seed",
                  "m_list", "points", "n_list", "t_grid", "tolerances", "output_dir", "trace",
                  "threads"},
                 "config");
  ExperimentConfig c;
  if (j.contains("command")) c.command = field<std::string>(j, "command");
  if (j.contains("m")) c.m = field<int>(j, "m");
  if (j.contains("n")) c.n = field<int>(j, "n");
  if (j.contains("m_max")) c.m_max = field<int>(j, "m_max");
  if (j.contains("ensemble")) c.ensemble = field<int>(j, "ensemble");
  if (j.contains("multistarts")) c.multistarts = field<int>(j, "multistarts");
  if (j.contains("budget")) c.budget = field<int>(j, "budget");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0) {
      throw UsageError("config field 'seed' must be a positive integer");
    }
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("m_list")) c.m_list = field<std::vector<int>>(j, "m_list");
  if (j.contains("points")) c.points = field<int>(j, "points");
  if (j.contains("n_list")) c.n_list = field<std::vector<int>>(j, "n_list");
  if (j.contains("t_grid")) c.t_grid = grid_from_json(j.at("t_grid"));
  if (j.contains("tolerances")) c.tolerances = field<std::map<std::string, double>>(j, "tolerances");
  if (j.contains("output_dir")) c.output_dir = field<std::string>(j, "output_dir");
  if (j.contains("trace")) c.trace = field<bool>(j, "trace");
  if (j.contains("threads")) c.threads = field<int>(j, "threads");
  return c;
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> bad;
  if (c.command.empty()) {
    throw UsageError("missing field: command");
  }
  if (!is_command(c.command)) {
    throw UsageError("unknown command '" + c.command + "'");
  }
  const auto positive = [&](const char* name, long long v) {
    if (v <= 0) bad.push_back(name);
  };
  positive("m", c.m);
  positive("n", c.n);
  positive("m_max", c.m_max);
  positive("ensemble", c.ensemble);
  positive("multistarts", c.multistarts);
  positive("budget", c.budget);
  positive("seed", static_cast<long long>(c.seed));
  if (c.threads < 0) bad.push_back("threads");
  if (c.points) positive("points", *c.points);
  if (c.m_list.empty() ||
      std::any_of(c.m_list.begin(), c.m_list.end(), [](int v) { return v <= 0; })) {
    bad.push_back("m_list");
  }
  if (c.n_list && (c.n_list->empty() || std::any_of(c.n_list->begin(), c.n_list->end(),
                                                     [](int v) { return v <= 0; }))) {
    bad.push_back("n_list");
  }
  if (c.t_grid) {
    const TimeGrid& g = *c.t_grid;
    bool ok = true;
    if (g.kind == "log") {
      ok = g.count >= 1 && g.t_min > 0.0 && (g.count == 1 || g.t_max > g.t_min);
    } else if (g.kind == "linear") {
      ok = g.count >= 2 && g.t_min >= 0.0 && g.t_max > g.t_min;
    }
    const std::vector<double> t = ok ? g.expand() : std::vector<double>{};
    ok = ok && !t.empty() && t.front() >= 0.0;
    for (std::size_t i = 1; ok && i < t.size(); ++i) {
      ok = t[i] > t[i - 1];
    }
    for (double v : t) {
      ok = ok && std::isfinite(v);
    }
    if (!ok) bad.push_back("t_grid (times must be finite, nonnegative and strictly increasing)");
  }
  if (!bad.empty()) {
    std::string msg = "invalid field(s): ";
    for (std::size_t i = 0; i < bad.size(); ++i) {
      msg += (i ? ", " : "") + bad[i];
    }
    throw UsageError(msg);
  }
}

namespace {

Json default_tolerances(const std::string& cmd) {
  if (cmd == "repr-validate") return {{"bracket", 1e-10}, {"casimir", 1e-10}, {"symbol", 1e-10}};
  if (cmd == "qms-spectrum")
    return {{"symmetry", 1e-10}, {"trace_defect", 1e-10}, {"choi_floor", 1e-9}, {"kernel", 1e-9}};
  if (cmd == "mlsi-estimate") return {{"gap_slack", 1e-6}};
  if (cmd == "cmlsi-table") return {{"gap_slack", 1e-6}, {"monotone_band", 0.1}};
  if (cmd == "gradient-curve") return {{"c0", 1e-9}};
  if (cmd == "kappa-lambda")
    return {{"lambda_identity", 1e-12}, {"tail_rate_target", -4.0}, {"tail_rate_band", 0.2}};
  if (cmd == "transference-check")
    return {{"exact", 1e-10}, {"fd", 1e-6}, {"entropy", 1e-9}, {"semigroup", 1e-6},
            {"fisher_sigmas", 3.0}};
  if (cmd == "decay-trajectory") return {{"derivative_rtol", 1e-3}, {"bound_slack", 1e-6}};
  return {{"matrix_margin", 1e-6}, {"lieb_sigmas", 3.0}};
}

int default_points(const std::string& cmd) {
  if (cmd == "gradient-curve" || cmd == "kappa-lambda") return 2000;
  if (cmd == "transference-check") return 50;
  if (cmd == "prop-gradient-check") return 300;
  return 0;
}

std::vector<int> default_n_list(const std::string& cmd) {
  if (cmd == "prop-gradient-check") return {2, 3};
  return {1, 2, 3};
}

TimeGrid default_grid(const std::string& cmd) {
  TimeGrid g;
  if (cmd == "decay-trajectory") {
    g.kind = "linear";
    g.count = 41;
    g.t_min = 0.0;
    g.t_max = 2.0;
  } else if (cmd == "prop-gradient-check") {
    g.kind = "list";
    g.values = {0.2, 1.0};
  } else if (cmd == "transference-check") {
    g.kind = "list";
    g.values = {0.0, 0.1, 1.0};
  }
  return g;
}

// Which fields each command reads; only these are echoed and hashed.
std::vector<std::string> used_fields(const std::string& cmd) {
  if (cmd == "repr-validate") return {"m"};
  if (cmd == "qms-spectrum") return {"m", "n"};
  if (cmd == "mlsi-estimate") return {"m", "n", "multistarts", "budget", "seed"};
  if (cmd == "cmlsi-table") return {"m_list", "n_list", "multistarts", "budget", "seed"};
  if (cmd == "gradient-curve" || cmd == "kappa-lambda")
    return {"m_max", "ensemble", "points", "seed", "t_grid"};
  if (cmd == "transference-check") return {"m", "n", "points", "seed", "t_grid"};
  if (cmd == "decay-trajectory") return {"m", "n", "multistarts", "budget", "seed", "t_grid"};
  return {"m_max", "n_list", "points", "seed", "t_grid"};
}

} // namespace

ResolvedConfig resolve(const ExperimentConfig& cfg) {
  validate(cfg);
  ResolvedConfig r;
  r.cfg = cfg;
  r.points = cfg.points.value_or(default_points(cfg.command));
  r.n_list = cfg.n_list.value_or(default_n_list(cfg.command));
  r.grid = cfg.t_grid.value_or(default_grid(cfg.command));
  r.times = r.grid.expand();
  r.tolerances = default_tolerances(cfg.command);
  for (const auto& [k, v] : cfg.tolerances) {
    if (!r.tolerances.contains(k)) {
      std::string known;
      for (const auto& [name, x] : r.tolerances.items()) {
        known += (known.empty() ? "" : ", ") + name;
      }
      throw UsageError("unknown tolerance '" + k + "' for " + cfg.command + " (known: " + known + ")");
    }
    r.tolerances[k] = v;
  }
  Json full = to_json(cfg);
  full["points"] = r.points;
  full["n_list"] = r.n_list;
  full["t_grid"] = grid_to_json(r.grid);
  r.echo = Json::object();
  r.echo["command"] = cfg.command;
  for (const std::string& f : used_fields(cfg.command)) {
    r.echo[f] = full[f];
  }
  r.echo["tolerances"] = r.tolerances;
  r.hash = fnv1a_hex(r.echo.dump());
  return r;
}

} // namespace hypolog::cli
