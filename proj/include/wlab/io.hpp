#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlab/grid.hpp"
#include "wlab/types.hpp"

namespace wlab {

/// Parsed `key = value` config with [sections]. Lookups record which keys
/// were consumed so unknown keys can be rejected afterwards.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::optional<double> get_optional_double(const std::string& section,
                                            const std::string& key) const;
  long get_int(const std::string& section, const std::string& key,
               long fallback) const;

  /// Throws ConfigError naming the first key outside the allowed set.
  /// `allowed` maps section -> keys; a section absent from the map is
  /// rejected entirely.
  void enforce_schema(
      const std::map<std::string, std::vector<std::string>>& allowed) const;

  /// FNV-1a of the raw config text, stamped into output headers.
  std::string hash() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::map<std::string, int> lines_;  // "section.key" -> line number
  std::string raw_;
  std::string origin_;
};

/// %.9g with '.' decimal regardless of locale.
std::string format_number(double v);

/// CSV emission; every file starts with "# config_hash=..., seed=..." when
/// provided, then a header row. 9 significant digits, '\n' endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::string& meta = "");
  ~CsvWriter() { close(); }
  void row(const std::vector<double>& values);
  void row_tagged(const std::string& tag, const std::vector<double>& values);
  void close();

 private:
  std::string path_;
  std::string body_;
  std::size_t ncols_;
  bool open_ = true;
};

std::string density_matrix_json(const ComplexMatrix& rho);
ComplexMatrix density_matrix_from_json(const std::string& text);

std::string wigner_grid_json(const WignerGrid& grid);
WignerGrid wigner_grid_from_json(const std::string& text);

void write_wigner_grid_csv(const std::string& path, const WignerGrid& grid,
                           const std::string& meta = "");

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace wlab
