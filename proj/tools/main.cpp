#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"

int main(int argc, char** argv) {
  using namespace radbcs::app;

  CLI::App cli{"Radial BCS solver: critical temperatures, gaps and checks"};
  cli.require_subcommand(1);
  std::string config_path;
  std::string out;
  unsigned threads = 1;
  unsigned long seed = 1;
  std::vector<std::string> overrides;

  for (const auto& name : command_names()) {
    auto* sub = cli.add_subcommand(name);
    sub->add_option("config", config_path, "YAML run configuration")->required();
    sub->add_option("--out", out, "output directory (overrides config 'output')");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", seed, "seed for randomized probes");
    sub->add_option("--set", overrides, "override a config key, e.g. --set grid.n_points=512");
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kExitConfig;
  }

  const std::string command = cli.get_subcommands().front()->get_name();
  try {
    const RunConfig cfg = load_config(config_path, overrides);
    if (!cfg.command.empty() && cfg.command != command)
      std::cerr << "note: config names command '" << cfg.command << "', running '" << command
                << "'\n";
    RunOptions opts;
    if (!out.empty()) opts.out = out;
    opts.threads = threads;
    opts.seed = seed;
    return run_command(command, cfg, opts, std::cout);
  } catch (...) {
    return exit_code_for_current_exception(std::cerr);
  }
}
