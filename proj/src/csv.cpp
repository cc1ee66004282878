#include "bicdyn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bicdyn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::pair<std::string, std::string>>& params,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "#";
  for (const auto& [k, v] : params) out << " " << k << "=" << v;
  out << "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ",";
    out << columns[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << format_double(row[i]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  CsvData data;
  std::string line;
  // parameter echo
  if (!std::getline(in, line) || line.empty() || line[0] != '#')
    throw std::runtime_error("read_csv: missing parameter header in " + path);
  {
    std::istringstream ss(line.substr(1));
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos)
        data.params[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  // column names
  if (!std::getline(in, line))
    throw std::runtime_error("read_csv: missing column header in " + path);
  {
    std::istringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) data.columns.push_back(col);
  }
  // numeric body
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != data.columns.size())
      throw std::runtime_error("read_csv: ragged row in " + path);
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace bicdyn
