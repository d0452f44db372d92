#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rotorlattice/runconfig.hpp"

namespace rotor {

// One verdict of the acceptance machinery. Hard failures flip the process
// exit code; soft reports carry supporting measurements. The criterion
// number ties a report to the numbered acceptance list in the README.
struct CheckReport {
  std::string name;
  std::string property;   // the invariant under test, one sentence
  std::string tolerance;  // the pinned tolerance, human readable
  int criterion = 0;      // acceptance criterion number; 0 = supporting
  bool hard = true;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;
  std::string note;  // classification words, error text, extra context
  std::uint64_t seed = 0;
  std::string config_hash;
};

// The suites pin their own geometries and sampling budgets: those are part
// of what is being accepted. The user config contributes the seed, the
// thread count, and deliberate overrides of dt / ntraj / scheme / order
// (used by the fault-injection examples); a tuned value yields only when
// the matching key appeared in the config file.
struct CheckContext {
  RunConfig cfg;
  int threads = 1;

  double dt_or(double tuned) const;
  int ntraj_or(int tuned) const;
  Scheme scheme_or(Scheme tuned) const;
  SplitOrder order_or(SplitOrder tuned) const;
};

std::vector<CheckReport> check_conservation(const CheckContext& ctx);
std::vector<CheckReport> check_balance(const CheckContext& ctx);
std::vector<CheckReport> check_decay(const CheckContext& ctx);
std::vector<CheckReport> check_gap(const CheckContext& ctx);
std::vector<CheckReport> check_nash(const CheckContext& ctx);
std::vector<CheckReport> check_liggett(const CheckContext& ctx);
std::vector<CheckReport> check_beta(const CheckContext& ctx);
std::vector<CheckReport> check_clt(const CheckContext& ctx);

std::vector<std::string> suite_names();  // includes "all"

// dispatch by suite name; "all" concatenates every suite
std::vector<CheckReport> run_suite(const std::string& suite,
                                   const CheckContext& ctx);

}  // namespace rotor
