#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rotorlattice/integrators.hpp"
#include "rotorlattice/model.hpp"

namespace rotor {

// Plain-text experiment description, INI-style sections. Every key has a
// default except run.seed; unknown sections or keys are rejected so a typo
// cannot silently fall back to a default.
//
//   [lattice]  n, l
//   [model]    stencil ("diagonal b=<real>" or "o=c; o=c; ..."), beta
//   [measure]  r
//   [integrator] scheme (em_ito|heun_strat|split_exact), dt,
//                order (lie|strang|random_perm)
//   [run]      t, epochs (count or explicit ascending list), ntraj, seed,
//              threads (0 = all cores), track (site ids),
//              start ("gaussian" | "zero" | "point <site> <amp>")
//   [output]   dir, formats (subset of "csv json")
struct RunConfig {
  int dim = 1;
  int side = 16;
  std::vector<StencilEntry> stencil_entries;  // empty = diagonal
  double stencil_b = 1.0;                     // used when entries are empty
  double beta = 0.0;
  double r = 1.0;
  Scheme scheme = Scheme::SplitExact;
  double dt = 0.01;
  SplitOrder order = SplitOrder::Strang;
  double horizon = 1.0;
  std::vector<double> epochs;  // filled from the key or from epoch_count
  int epoch_count = 4;
  int ntraj = 100;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  std::vector<int> track{0};
  enum class Start { Gaussian, Zero, Point } start = Start::Gaussian;
  int start_site = 0;
  double start_amp = 1.0;
  std::string out_dir = ".";
  bool write_csv = true;
  bool write_json = true;

  // keys that appeared in the file, "section.key" form; checks use this to
  // tell tuned defaults from deliberate user overrides
  std::set<std::string> explicit_keys;
  bool was_set(const std::string& key) const {
    return explicit_keys.count(key) > 0;
  }

  PrecisionStencil make_stencil() const;
  Model make_model() const;
  StepPlan make_plan() const;
  std::vector<double> make_epochs() const;  // resolved, ends at horizon
  std::vector<double> start_field(const Model& model) const;  // Point or Zero

  // stable canonical serialization of the resolved config; the FNV-1a hash
  // of it is stamped on every output for provenance
  std::string canonical_text() const;
  std::string hash() const;  // 16 hex digits
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// resolved thread count: ROTORLATTICE_THREADS env var wins over run.threads;
// 0 means all available cores
int resolve_threads(const RunConfig& cfg);

}  // namespace rotor
