#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavityhom/commands.hpp"
#include "cavityhom/version.hpp"

namespace {

struct CommonArgs {
  std::vector<std::string> overrides;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--set", args.overrides,
                  "Override a scalar config key, e.g. --set system.g=2.5");
  cmd->add_option("--threads", args.threads,
                  "Worker cap (default: CAVITY_HOM_THREADS, then hardware)");
}

void report(const std::vector<std::string>& files) {
  for (const std::string& f : files) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-QED single-photon source simulator and HOM toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string config_path_b;
  CommonArgs args;

  CLI::App* simulate = app.add_subcommand("simulate", "Emit a photon wavefunction");
  simulate->add_option("config", config_path, "Config file (JSON)")->required();
  add_common(simulate, args);

  CLI::App* hom = app.add_subcommand("hom", "Two-source HOM correlation and visibility");
  hom->add_option("config_a", config_path, "Config file for source A")->required();
  hom->add_option("config_b", config_path_b, "Config file for source B")->required();
  add_common(hom, args);

  CLI::App* sweep = app.add_subcommand("sweep", "Visibility map over system parameters");
  sweep->add_option("config", config_path, "Config file (JSON)")->required();
  add_common(sweep, args);

  CLI::App* optimize = app.add_subcommand("optimize", "Find the drive matching a reference");
  optimize->add_option("config", config_path, "Config file (JSON)")->required();
  add_common(optimize, args);

  app.add_subcommand("version", "Print the version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("version")) {
      std::cout << "cavityhom " << cavityhom::kVersion << "\n";
      return 0;
    }
    if (app.got_subcommand(simulate)) {
      report(cavityhom::cmd_simulate(cavityhom::load_config(config_path, args.overrides),
                                     args.threads));
    } else if (app.got_subcommand(hom)) {
      report(cavityhom::cmd_hom(cavityhom::load_config(config_path, args.overrides),
                                cavityhom::load_config(config_path_b, args.overrides),
                                args.threads));
    } else if (app.got_subcommand(sweep)) {
      report(cavityhom::cmd_sweep(cavityhom::load_config(config_path, args.overrides),
                                  args.threads));
    } else if (app.got_subcommand(optimize)) {
      report(cavityhom::cmd_optimize(cavityhom::load_config(config_path, args.overrides),
                                     args.threads));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
