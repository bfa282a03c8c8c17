#include "hypolog/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace hypolog {

Json matrix_to_json(const CMatrix& a) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      entries.push_back({a(i, j).real(), a(i, j).imag()});
    }
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

CMatrix matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const Json& e = j.at("entries");
  if (rows < 0 || cols < 0 || e.size() != static_cast<std::size_t>(rows * cols)) {
    throw InvalidInput("matrix_from_json: entry count does not match rows x cols");
  }
  CMatrix a(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      a(i, c) = cplx(e[k].at(0).get<double>(), e[k].at(1).get<double>());
    }
  }
  return a;
}

Json to_json(const DensityMatrix& rho) {
  Json j = matrix_to_json(rho.matrix());
  j["type"] = "density_matrix";
  j["dim"] = rho.dim();
  return j;
}

DensityMatrix density_from_json(const Json& j) {
  if (j.value("type", "") != "density_matrix") {
    throw InvalidInput("density_from_json: type must be density_matrix");
  }
  return DensityMatrix(matrix_from_json(j));
}

Json to_json(const Superoperator& s) {
  Json j = matrix_to_json(s.matrix);
  j["type"] = "superoperator";
  j["dim"] = s.dim;
  j["rep_dim"] = s.rep_dim;
  j["amplification"] = s.amplification;
  j["basis"] = "column_stacking";
  return j;
}

Superoperator superoperator_from_json(const Json& j) {
  if (j.value("type", "") != "superoperator" || j.value("basis", "") != "column_stacking") {
    throw InvalidInput("superoperator_from_json: expected a column_stacking superoperator");
  }
  Superoperator s;
  s.dim = j.at("dim").get<Eigen::Index>();
  s.rep_dim = j.at("rep_dim").get<int>();
  s.amplification = j.at("amplification").get<int>();
  s.matrix = matrix_from_json(j);
  if (s.matrix.rows() != s.dim * s.dim || s.matrix.cols() != s.dim * s.dim) {
    throw InvalidInput("superoperator_from_json: matrix is not dim^2 x dim^2");
  }
  return s;
}

Json to_json(const BandLimitedFunction& f) {
  Json blocks = Json::array();
  for (int m = 1; m <= f.m_max(); ++m) {
    Json b = matrix_to_json(f.block(m));
    b["m"] = m;
    blocks.push_back(b);
  }
  return {{"type", "band_limited_function"},
          {"m_max", f.m_max()},
          {"value_dim", f.value_dim()},
          {"blocks", blocks}};
}

BandLimitedFunction band_limited_from_json(const Json& j) {
  if (j.value("type", "") != "band_limited_function") {
    throw InvalidInput("band_limited_from_json: type must be band_limited_function");
  }
  BandLimitedFunction f(j.at("m_max").get<int>(), j.at("value_dim").get<int>());
  const Json& blocks = j.at("blocks");
  if (blocks.size() != static_cast<std::size_t>(f.m_max())) {
    throw InvalidInput("band_limited_from_json: one block per band expected");
  }
  for (const Json& b : blocks) {
    const int m = b.at("m").get<int>();
    const CMatrix a = matrix_from_json(b);
    if (m < 1 || m > f.m_max() || a.rows() != f.block(m).rows() || a.cols() != f.block(m).cols()) {
      throw InvalidInput("band_limited_from_json: block shape mismatch");
    }
    f.block(m) = a;
  }
  return f;
}

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_csv_header(std::ostream& os, const ArtifactHeader& h,
                      const std::vector<std::pair<std::string, std::string>>& extra) {
  os << "# schema=1\n";
  os << "# generated_at=" << h.generated_at << "\n";
  os << "# command=" << h.command << "\n";
  os << "# config_hash=" << h.config_hash << "\n";
  os << "# seed=" << h.seed << "\n";
  os << "# version=" << h.version << "\n";
  os << "# tolerances=" << h.tolerances.dump() << "\n";
  for (const auto& [k, v] : extra) {
    os << "# " << k << "=" << v << "\n";
  }
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::string CsvTable::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) {
      return v;
    }
  }
  return "";
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") {
    return std::nan("");
  }
  if (s == "inf") {
    return INFINITY;
  }
  if (s == "-inf") {
    return -INFINITY;
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidInput("read_csv: not a number: '" + s + "'");
  }
  return v;
}

} // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        t.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    if (!have_header) {
      t.columns = split(line, ',');
      have_header = true;
      continue;
    }
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != t.columns.size()) {
      throw InvalidInput("read_csv: row has " + std::to_string(cells.size()) + " cells, expected " +
                         std::to_string(t.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) {
      row.push_back(parse_double(c));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_sampled_field(std::ostream& os, const SampledField& field) {
  if (field.points.size() != field.values.size()) {
    throw InvalidInput("write_sampled_field: points and values differ in length");
  }
  const Eigen::Index n = field.values.empty() ? 1 : field.values.front().rows();
  os << "c,x,y,z";
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      os << ",v" << p << "_" << q << "_re,v" << p << "_" << q << "_im";
    }
  }
  os << "\n";
  for (std::size_t k = 0; k < field.points.size(); ++k) {
    const GroupElement& g = field.points[k];
    os << format_double(g.c) << ',' << format_double(g.x) << ',' << format_double(g.y) << ','
       << format_double(g.z);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        os << ',' << format_double(field.values[k](p, q).real()) << ','
           << format_double(field.values[k](p, q).imag());
      }
    }
    os << "\n";
  }
}

SampledField read_sampled_field(std::istream& is) {
  const CsvTable t = read_csv(is);
  for (const char* c : {"c", "x", "y", "z"}) {
    if (t.column(c) < 0) {
      throw InvalidInput(std::string("read_sampled_field: missing column ") + c);
    }
  }
  const std::size_t value_cols = t.columns.size() - 4;
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(value_cols / 2.0)));
  if (static_cast<std::size_t>(2 * n * n) != value_cols) {
    throw InvalidInput("read_sampled_field: value columns do not form a square matrix");
  }
  SampledField f;
  for (const std::vector<double>& r : t.rows) {
    f.points.push_back({r[0], r[1], r[2], r[3]});
    CMatrix v(n, n);
    std::size_t k = 4;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q, k += 2) {
        v(p, q) = cplx(r[k], r[k + 1]);
      }
    }
    f.values.push_back(v);
  }
  return f;
}

Json artifact_json(const ArtifactHeader& h, const Json& config, const Json& result) {
  return {{"schema", 1},
          {"generated_at", h.generated_at},
          {"command", h.command},
          {"config_hash", h.config_hash},
          {"seed", h.seed},
          {"version", h.version},
          {"tolerances", h.tolerances},
          {"config", config},
          {"result", result}};
}

} // namespace hypolog
