#pragma once

#include <string>
#include <vector>

#include "bicdyn/config.hpp"

namespace bicdyn {

// Commands understood by the runner; each consumes a key = value config and
// writes one or more CSV datasets into out_dir. Throws ConfigError for bad
// input (CLI exit 1) and other exceptions for numeric failures (exit 2).
inline const std::vector<std::string>& scenario_commands() {
  static const std::vector<std::string> cmds{
      "spectrum", "bound-states", "propagate", "thermal",
      "density-matrix", "lattice", "sweep", "compare-bm"};
  return cmds;
}

// Runs the command; returns the list of dataset paths written.
std::vector<std::string> run_scenario(const std::string& command, const Config& cfg,
                                      const std::string& out_dir);

// Writes a gnuplot script rendering each dataset (first column as abscissa,
// remaining columns as curves) to a PNG alongside the script.
void emit_plot_script(const std::vector<std::string>& datasets,
                      const std::string& script_path);

extern const char* kVersion;

}  // namespace bicdyn
