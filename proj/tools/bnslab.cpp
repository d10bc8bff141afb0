#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "bnslab/parallel.hpp"
#include "scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral laboratory for critical Navier-Stokes function spaces"};
  app.require_subcommand(1);
  bnslab::cli::Scenario sc;
  int threads = 0;
  std::uint64_t seed = 0;
  for (const auto& name : bnslab::cli::commands()) {
    auto* cmd = app.add_subcommand(name, "run the " + name + " pipeline");
    cmd->add_option("--config", sc.config, "INI scenario file")->required();
    cmd->add_option("--seed", seed, "seed for generated fields (overrides [run] seed)");
    cmd->add_option("--threads", threads, "worker cap (default: BNSLAB_THREADS or all cores)");
    cmd->add_option("--out", sc.out, "output directory (overrides [output] dir)");
    cmd->add_option("--set", sc.overrides, "override a config key: section.key=value");
  }
  app.add_flag_callback("--schema", [] {
    std::cout << bnslab::cli::schema_text();
    std::exit(0);
  }, "print the config schema and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : bnslab::cli::exit_config;
  }
  sc.command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--seed") > 0) sc.seed = seed;
  if (threads <= 0)
    if (const char* env = std::getenv("BNSLAB_THREADS")) threads = std::atoi(env);
  if (threads > 0) bnslab::set_thread_count(threads);
  return bnslab::cli::run_scenario(sc);
}
