#pragma once

#include <string>

#include "rotorlattice/runconfig.hpp"

namespace rotor {

// Subcommand bodies; each returns the process exit code (0 ok, 1 check
// failure). Configuration problems escape as ConfigError and the caller
// maps them to exit code 2.
int cmd_simulate(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg, const std::string& task,
               const std::string& observable);
int cmd_check(const RunConfig& cfg, const std::string& suite);

}  // namespace rotor
