// Command line front end: simulate | oracle | check | version. Exit codes
// are a stable contract: 0 success, 1 hard check failure, 2 configuration
// error (bad config file, bad flags, impossible geometry).
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rotorlattice/checks.hpp"
#include "rotorlattice/errors.hpp"
#include "rotorlattice/runconfig.hpp"
#include "rotorlattice/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{std::string(rotor::kProjectName) +
               ": conservative lattice diffusion simulator and verifier"};
  app.require_subcommand(1);

  std::string config_path;
  std::string task;
  std::string observable = "x0sq";
  std::string suite = "all";

  auto* sim = app.add_subcommand(
      "simulate", "run a trajectory ensemble, write observable statistics");
  sim->add_option("-c,--config", config_path, "experiment config file")
      ->required();

  auto* ora = app.add_subcommand(
      "oracle", "write closed-form reference curves for the same config");
  ora->add_option("-c,--config", config_path, "experiment config file")
      ->required();
  ora->add_option("-t,--task", task, "heat | quadratic | constantA")
      ->required();
  ora->add_option("-o,--observable", observable,
                  "quadratic task observable: x0sq | v");

  auto* chk = app.add_subcommand(
      "check", "run an acceptance suite, write JSON reports");
  chk->add_option("-c,--config", config_path, "experiment config file")
      ->required();
  chk->add_option("-s,--suite", suite,
                  "conservation | balance | decay | gap | nash | liggett | "
                  "beta | clt | all");

  auto* ver = app.add_subcommand("version", "print version and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version paths exit 0, flag errors are
                               // configuration errors
  }

  try {
    if (ver->parsed()) {
      std::printf("%s %s\n", rotor::kProjectName, rotor::kVersion);
      return 0;
    }
    const rotor::RunConfig cfg = rotor::load_config(config_path);
    if (sim->parsed()) return rotor::cmd_simulate(cfg);
    if (ora->parsed()) return rotor::cmd_oracle(cfg, task, observable);
    if (chk->parsed()) return rotor::cmd_check(cfg, suite);
  } catch (const rotor::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
