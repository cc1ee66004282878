#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bicdyn/config.hpp"
#include "bicdyn/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bicdyn: dissipative dynamics of a cavity coupled to a 2D cavity array"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool plot_script = false;

  std::vector<CLI::App*> subs;
  for (const auto& name : bicdyn::scenario_commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' scenario");
    sub->add_option("--config", config_path, "key = value scenario file")->required();
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_flag("--plot-script", plot_script, "also write a gnuplot script");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const bicdyn::Config cfg = bicdyn::Config::parse_file(config_path);
    const std::vector<std::string> written = bicdyn::run_scenario(command, cfg, out_dir);
    for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
    if (plot_script) {
      const std::string script = out_dir + "/plot.gp";
      bicdyn::emit_plot_script(written, script);
      std::printf("wrote %s\n", script.c_str());
    }
    return 0;
  } catch (const bicdyn::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
