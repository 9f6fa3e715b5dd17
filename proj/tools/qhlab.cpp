#include "runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"qhlab: quasihyperbolic and quasisymmetry experiment runner"};
  app.require_subcommand(1);

  qhlab::cli::Overrides flags;
  std::string config;
  auto* run = app.add_subcommand("run", "Run the scenarios named in a config file");
  run->add_option("config", config, "Config file (key = value dialect or JSON)")->required();
  run->add_option("--seed", flags.seed, "Override the config seed");
  run->add_option("--out", flags.out, "Output directory for reports");
  run->add_option("--budget", flags.budget, "Tuple budget for sampled scans");
  run->add_option("--mesh", flags.mesh, "Mesh size h for every net");
  run->add_option("--jobs", flags.jobs, "Scenarios run concurrently");

  auto* list = app.add_subcommand("list", "List registered scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (list->parsed()) {
    qhlab::cli::list_scenarios(std::cout);
    return 0;
  }
  return qhlab::cli::run_config_file(config, flags, std::cerr);
}
