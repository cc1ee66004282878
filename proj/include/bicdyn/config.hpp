#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicdyn {

// Configuration errors (bad file, unknown key, malformed value) exit the CLI
// with status 1; numeric failures inside the engine exit with 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value file: one pair per line, '#' starts a comment, blank
// lines ignored. Keys keep their source line for diagnostics.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;  // comma separated

  // Keys that were never read; used to reject typos.
  std::vector<std::string> unused_keys() const;

 private:
  struct Entry {
    std::string value;
    int line;
    mutable bool used = false;
  };
  std::string origin_;
  std::map<std::string, Entry> entries_;

  const Entry& require(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
};

}  // namespace bicdyn
