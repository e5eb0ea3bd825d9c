#pragma once

// CSV and JSON writers shared by the subcommands. Floats are printed with 17
// significant digits so that they read back to the same double.

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace cbl::cli {

std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& os) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Pretty JSON with a trailing newline; NaN and infinities become null.
void write_json(std::ostream& os, const nlohmann::json& j);

/// One key,value line per leaf, keys joined with '.'.
void write_flat_csv(std::ostream& os, const nlohmann::json& j);

/// Writes `content` to dir/name and a sidecar dir/name.meta.json holding the
/// command, its configuration and the library version.
void emit_file(const std::filesystem::path& dir, const std::string& name, const std::string& content,
               const std::string& command, const nlohmann::json& config);

}  // namespace cbl::cli
