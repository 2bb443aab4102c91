#include "cli/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rictk::cli {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("row width does not match the header");
  rows_.push_back(std::move(cells));
}

void Table::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(std::move(cells));
}

Table Table::from_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("one name per column");
  Table t(names);
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw std::invalid_argument("columns must have uniform length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    for (const auto& c : columns) row.push_back(c[i]);
    t.add_row(row);
  }
  return t;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_line(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

void write_csv(const std::filesystem::path& path, const Table& table) {
  auto out = open_output(path);
  write_line(out, table.header());
  for (const auto& row : table.rows()) write_line(out, row);
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::check_max(std::string name, double value, double tol) {
  checks_.push_back({std::move(name), value, tol, value <= tol});
}

bool Report::all_pass() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["command"] = command_;
  j["results"] = results_;
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json entry = Json::object();
    entry["name"] = c.name;
    // JSON has no NaN or infinity.
    entry["value"] = std::isfinite(c.value) ? Json(c.value) : Json(format_number(c.value));
    entry["tol"] = c.tol;
    entry["pass"] = c.pass;
    checks.push_back(entry);
  }
  j["checks"] = checks;
  j["pass"] = all_pass();
  return j;
}

void write_json(const std::filesystem::path& path, const Json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
  if (!out) throw std::runtime_error("I/O failure writing " + path.string());
}

}  // namespace rictk::cli
