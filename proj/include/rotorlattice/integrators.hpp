#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rotorlattice/model.hpp"
#include "rotorlattice/rng.hpp"

namespace rotor {

enum class Scheme { EmIto, HeunStrat, SplitExact };
enum class SplitOrder { Lie, Strang, RandomPerm };

Scheme scheme_from_string(const std::string& s);
SplitOrder split_order_from_string(const std::string& s);
std::string to_string(Scheme s);
std::string to_string(SplitOrder o);

struct StepPlan {
  Scheme scheme = Scheme::SplitExact;
  SplitOrder order = SplitOrder::Strang;  // split scheme only
  double dt = 0.01;
  double beta = 0.0;  // friction strength
};

// One time step of the lattice diffusion. The noise stream is consumed in a
// fixed order so runs are reproducible bit for bit:
//   em/heun:  one normal per bond, bonds enumerated site-major, axis-minor
//   split:    one normal per edge, classes in their canonical order (or the
//             per-step permuted order), edges ascending within a class;
//             the permutation draws come from the same stream, before the
//             edge noise of that step
class Stepper {
 public:
  Stepper(const Model& model, const StepPlan& plan);

  void step(std::vector<double>& x, RngStream& rng);
  const StepPlan& plan() const { return plan_; }
  int bonds() const { return static_cast<int>(bonds_.size()); }

 private:
  void step_em(std::vector<double>& x, RngStream& rng);
  void step_heun(std::vector<double>& x, RngStream& rng);
  void step_split(std::vector<double>& x, RngStream& rng);
  void flow_class(std::vector<double>& x, RngStream& rng,
                  const std::vector<Edge>& edges, double var);

  const Model* model_;
  StepPlan plan_;
  std::vector<Edge> bonds_;                 // site-major, axis-minor
  std::vector<std::vector<Edge>> classes_;  // split scheme only
  bool diagonal_;
  double bcoeff_ = 0.0;
  // scratch
  std::vector<double> dw_, dwh_, mid_, out_, drift_;
  std::vector<int> perm_;
};

// Runs one trajectory from x0, calling hook at each requested epoch with the
// current field and the running trapezoid time-integrals of the tracked
// sites (site value, or its square when the matching power is 2; an empty
// powers span means all 1). Epochs must be ascending multiples of dt (0
// allowed, reported before any stepping).
void simulate(
    const Model& model, const StepPlan& plan, std::vector<double> x0,
    std::uint64_t seed, std::uint64_t stream, std::span<const double> epochs,
    std::span<const int> integral_sites,
    const std::function<void(int epoch_idx, const std::vector<double>& x,
                             std::span<const double> integrals)>& hook,
    std::span<const int> integral_powers = {});

// all epoch snapshots and integral values of one trajectory
struct TrajectoryRecord {
  std::vector<std::vector<double>> snapshots;  // [epoch][site]
  std::vector<std::vector<double>> integrals;  // [epoch][tracked site]
};

struct EnsembleSpec {
  StepPlan plan;
  std::vector<double> epochs;
  std::vector<int> integral_sites;
  std::vector<int> integral_powers;  // 1 or 2 per site; empty = all 1
};

struct EnsembleStats {
  std::int64_t count = 0;
  std::vector<double> mean;
  std::vector<double> var;  // unbiased sample variance per entry
};

// per-trajectory reduction: fills a fixed-size stat vector from the record
using StatFn =
    std::function<void(const TrajectoryRecord& rec, std::span<double> out)>;

// draws the start configuration for one trajectory; the stream passed in is
// the trajectory's own stream, so the draw is reproducible and the stepping
// noise continues from where the sampler left off
using StartFn = std::function<void(RngStream& rng, std::vector<double>& x0)>;

// Ensemble of ntraj independent trajectories; trajectory j always draws from
// RngStream(seed, j). Trajectories are grouped into fixed blocks of 256;
// threads claim whole blocks and block partials are combined in block order,
// so the result is identical for every thread count.
EnsembleStats run_ensemble(const Model& model, const EnsembleSpec& spec,
                           const StartFn& start, int ntraj,
                           std::uint64_t seed, int threads, int stat_dim,
                           const StatFn& stat);

// same, every trajectory starting from the fixed field x0
EnsembleStats run_ensemble(const Model& model, const EnsembleSpec& spec,
                           const std::vector<double>& x0, int ntraj,
                           std::uint64_t seed, int threads, int stat_dim,
                           const StatFn& stat);

}  // namespace rotor
