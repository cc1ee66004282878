#include "bicdyn/config.hpp"

#include <fstream>
#include <sstream>

namespace bicdyn {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.entries_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

const Config::Entry& Config::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  it->second.used = true;
  return it->second;
}

void Config::fail(const std::string& key, const std::string& what) const {
  const auto it = entries_.find(key);
  const int line = it == entries_.end() ? 0 : it->second.line;
  throw ConfigError(origin_ + ":" + std::to_string(line) + ": key '" + key + "': " + what);
}

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? require(key).value : fallback;
}

double Config::get_double(const std::string& key) const {
  const std::string& v = require(key).value;
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) fail(key, "trailing characters in number '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, "not a number: '" + v + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const std::string& v = require(key).value;
  try {
    size_t pos = 0;
    const int d = std::stoi(v, &pos);
    if (pos != v.size()) fail(key, "trailing characters in integer '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(key, "not an integer: '" + v + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const std::string v = require(key).value;
  std::vector<double> out;
  std::istringstream ss(v);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      out.push_back(std::stod(trim(cell)));
    } catch (const std::exception&) {
      fail(key, "not a number in list: '" + cell + "'");
    }
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_)
    if (!e.used) out.push_back(k);
  return out;
}

}  // namespace bicdyn
