#include "lhydro/io.hpp"
#include "lhydro/verify.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"lattice hydrodynamics model: structural checks, simulation, Hodge decomposition"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file, line-oriented key = value");
    sub->add_option("--out", out_override, "override out_dir from the config");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the structural check suite (n <= 8)");
  add_common(verify);
  bool corrupt_star = false;
  verify->add_flag("--corrupt-star", corrupt_star,
                   "debug: negate one star sign so the star checks must fail");

  CLI::App* simulate = app.add_subcommand("simulate", "advance the field, write diagnostics and snapshots");
  add_common(simulate);

  CLI::App* decompose = app.add_subcommand("decompose", "print Hodge part norms of a snapshot");
  add_common(decompose);
  std::string snapshot_path;
  decompose->add_option("snapshot", snapshot_path, "snapshot file to decompose")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    lhydro::RunConfig cfg;
    if (!config_path.empty()) cfg = lhydro::load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;

    if (verify->parsed()) {
      lhydro::VerifyOptions opts;
      opts.config = cfg;
      opts.corrupt_star = corrupt_star;
      return lhydro::cmd_verify(opts, std::cout);
    }
    if (simulate->parsed()) {
      return lhydro::cmd_simulate(cfg, std::cerr);
    }
    if (decompose->parsed()) {
      return lhydro::cmd_decompose(cfg, snapshot_path, std::cout);
    }
  } catch (const lhydro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lhydro::SnapshotError& e) {
    std::cerr << "snapshot error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
