#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypolog/peter_weyl.hpp"
#include "hypolog/qms.hpp"

namespace hypolog {

using Json = nlohmann::json;

// Matrices are stored row-major as [re, im] pairs under "entries".
Json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const Json& j);

// {"type": "density_matrix", "dim", "entries"}
Json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

// {"type": "superoperator", "dim", "rep_dim", "amplification",
//  "basis": "column_stacking", "entries"}; e_{jk} sits at index k*dim + j.
Json to_json(const Superoperator& s);
Superoperator superoperator_from_json(const Json& j);

// {"type": "band_limited_function", "m_max", "value_dim",
//  "blocks": [{"m", "entries"}, ...]}
Json to_json(const BandLimitedFunction& f);
BandLimitedFunction band_limited_from_json(const Json& j);

// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& s);

// Provenance block carried by every artifact.
struct ArtifactHeader {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
  Json tolerances = Json::object();
  std::string generated_at; // the only non-reproducible field
};

// Comment lines: "# schema=1", "# generated_at=...", then command, config
// hash, seed, version, tolerances and any extra key=value pairs.
void write_csv_header(std::ostream& os, const ArtifactHeader& h,
                      const std::vector<std::pair<std::string, std::string>>& extra = {});

struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta; // from "# key=value" lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a column or -1.
  int column(const std::string& name) const;
  std::string meta_value(const std::string& key) const;
};

CsvTable read_csv(std::istream& is);

// SampledField CSV: c,x,y,z then re/im columns v{p}_{q}_re, v{p}_{q}_im.
void write_sampled_field(std::ostream& os, const SampledField& field);
SampledField read_sampled_field(std::istream& is);

// Top-level artifact object: provenance keys plus "result".
Json artifact_json(const ArtifactHeader& h, const Json& config, const Json& result);

} // namespace hypolog
