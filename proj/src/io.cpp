#include "wlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wlab {

using nlohmann::json;

static std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

Config Config::parse_string(const std::string& text,
                            const std::string& origin) {
  Config cfg;
  cfg.raw_ = text;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      cfg.sections_[section];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.sections_[section].count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    cfg.sections_[section][key] = value;
    cfg.lines_[section + "." + key] = lineno;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  return parse_string(read_file(path), path);
}

std::optional<std::string> Config::get(const std::string& section,
                                       const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return get(section, key).value_or(fallback);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    double d = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ":" +
                      std::to_string(lines_.at(section + "." + key)) +
                      ": '" + key + "' is not a number");
  }
}

std::optional<double> Config::get_optional_double(
    const std::string& section, const std::string& key) const {
  if (!get(section, key)) return std::nullopt;
  return get_double(section, key, 0.0);
}

long Config::get_int(const std::string& section, const std::string& key,
                     long fallback) const {
  auto v = get(section, key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    long n = std::stol(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("trailing characters");
    return n;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ":" +
                      std::to_string(lines_.at(section + "." + key)) +
                      ": '" + key + "' is not an integer");
  }
}

void Config::enforce_schema(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
  for (const auto& [section, keys] : sections_) {
    auto it = allowed.find(section);
    if (it == allowed.end())
      throw ConfigError(origin_ + ": unknown section [" + section + "]");
    for (const auto& [key, value] : keys) {
      if (std::find(it->second.begin(), it->second.end(), key) ==
          it->second.end())
        throw ConfigError(origin_ + ":" +
                          std::to_string(lines_.at(section + "." + key)) +
                          ": unknown key '" + key + "' in [" + section + "]");
    }
  }
}

std::string Config::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : raw_) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  for (char* p = buf; *p; ++p)
    if (*p == ',') *p = '.';
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::string& meta)
    : path_(path), ncols_(columns.size()) {
  if (!meta.empty()) body_ += "# " + meta + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) body_ += ',';
    body_ += columns[i];
  }
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != ncols_)
    throw NumericalError("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_number(values[i]);
  }
  body_ += '\n';
}

void CsvWriter::row_tagged(const std::string& tag,
                           const std::vector<double>& values) {
  if (values.size() + 1 != ncols_)
    throw NumericalError("CsvWriter: column count mismatch");
  body_ += tag;
  for (double v : values) {
    body_ += ',';
    body_ += format_number(v);
  }
  body_ += '\n';
}

void CsvWriter::close() {
  if (!open_) return;
  open_ = false;
  write_file(path_, body_);
}

std::string density_matrix_json(const ComplexMatrix& rho) {
  json j;
  j["dim"] = rho.rows();
  json entries = json::array();
  for (Eigen::Index n = 0; n < rho.rows(); ++n)
    for (Eigen::Index m = 0; m < rho.cols(); ++m)
      entries.push_back({rho(n, m).real(), rho(n, m).imag()});
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

ComplexMatrix density_matrix_from_json(const std::string& text) {
  json j = json::parse(text);
  Eigen::Index d = j.at("dim").get<Eigen::Index>();
  const auto& entries = j.at("entries");
  if (static_cast<Eigen::Index>(entries.size()) != d * d)
    throw NumericalError("density matrix json: entry count mismatch");
  ComplexMatrix rho(d, d);
  Eigen::Index i = 0;
  for (Eigen::Index n = 0; n < d; ++n)
    for (Eigen::Index m = 0; m < d; ++m, ++i)
      rho(n, m) = Complex(entries[i][0].get<double>(),
                          entries[i][1].get<double>());
  return rho;
}

std::string wigner_grid_json(const WignerGrid& grid) {
  json j;
  j["spec"] = {{"x_min", grid.spec.x_min}, {"x_max", grid.spec.x_max},
               {"y_min", grid.spec.y_min}, {"y_max", grid.spec.y_max},
               {"nx", grid.spec.nx},       {"ny", grid.spec.ny}};
  json values = json::array();
  for (int ix = 0; ix < grid.spec.nx; ++ix)
    for (int iy = 0; iy < grid.spec.ny; ++iy)
      values.push_back(grid.values(ix, iy));
  j["values"] = values;
  return j.dump() + "\n";
}

WignerGrid wigner_grid_from_json(const std::string& text) {
  json j = json::parse(text);
  GridSpec spec;
  const auto& s = j.at("spec");
  spec.x_min = s.at("x_min");
  spec.x_max = s.at("x_max");
  spec.y_min = s.at("y_min");
  spec.y_max = s.at("y_max");
  spec.nx = s.at("nx");
  spec.ny = s.at("ny");
  WignerGrid grid(spec);
  const auto& values = j.at("values");
  if (static_cast<int>(values.size()) != spec.nx * spec.ny)
    throw NumericalError("wigner grid json: value count mismatch");
  std::size_t i = 0;
  for (int ix = 0; ix < spec.nx; ++ix)
    for (int iy = 0; iy < spec.ny; ++iy, ++i)
      grid.values(ix, iy) = values[i].get<double>();
  return grid;
}

void write_wigner_grid_csv(const std::string& path, const WignerGrid& grid,
                           const std::string& meta) {
  CsvWriter csv(path, {"x", "y", "W"}, meta);
  for (int ix = 0; ix < grid.spec.nx; ++ix)
    for (int iy = 0; iy < grid.spec.ny; ++iy) {
      Complex a = grid.spec.node(ix, iy);
      csv.row({a.real(), a.imag(), grid.values(ix, iy)});
    }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wlab
