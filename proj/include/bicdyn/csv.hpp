#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bicdyn {

// Dataset files are plain CSV with two header lines:
//   line 1:  "# key=value key=value ..."   full parameter echo
//   line 2:  comma-separated column names
// followed by rows of doubles printed with 17 significant digits, so a
// write/read round trip is lossless.

std::string format_double(double v);

void write_csv(const std::string& path,
               const std::vector<std::pair<std::string, std::string>>& params,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

struct CsvData {
  std::map<std::string, std::string> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

CsvData read_csv(const std::string& path);

}  // namespace bicdyn
