#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "socdim/config.hpp"
#include "socdim/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Detect social dimensions in conversational text"};
  app.name("socdim");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  app.add_option("--config", config_path, "Run configuration (TOML subset)");
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--workers", workers, "Override the worker count (0: all cores)");
  app.require_subcommand(1);
  for (const auto& c : socdim::tools::commands()) {
    app.add_subcommand(std::string(c.name), std::string(c.help))->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    for (int i = 1; i < argc; ++i) {
      std::string arg = argv[i];
      if (arg == "--config" || arg == "--seed" || arg == "--workers") {
        ++i;
      } else if (!arg.empty() && arg[0] != '-') {
        if (!app.get_subcommand_no_throw(arg)) message = "unknown command '" + arg + "'";
        break;
      }
    }
    std::cerr << "error: " << message << "\n\n" << app.help();
    return 2;
  }

  try {
    socdim::RunConfig config;
    if (!config_path.empty()) config = socdim::load_run_config(config_path);
    if (seed) config.seed = *seed;
    if (workers) config.workers = *workers;
    socdim::tools::run_command(app.get_subcommands().front()->get_name(), config);
  } catch (const socdim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
