#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace rictk::cli {

using Json = nlohmann::ordered_json;

/// %.17g.
std::string format_number(double v);

/// Rectangular table of preformatted cells.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Throws std::invalid_argument when the width differs from the header.
  void add_row(std::vector<std::string> cells);
  void add_row(const std::vector<double>& values);
  /// One column per entry, all of the same length.
  static Table from_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Header row, comma separated, LF line endings.
void write_csv(const std::filesystem::path& path, const Table& table);

struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

class Report {
 public:
  explicit Report(std::string command);

  Json& results() { return results_; }
  /// Adds a check that passes when value ≤ tol (NaN fails).
  void check_max(std::string name, double value, double tol);
  void add_check(Check c) { checks_.push_back(std::move(c)); }
  const std::vector<Check>& checks() const { return checks_; }
  bool all_pass() const;
  Json to_json() const;

 private:
  std::string command_;
  Json results_ = Json::object();
  std::vector<Check> checks_;
};

void write_json(const std::filesystem::path& path, const Json& value);

}  // namespace rictk::cli
