#include "rotorlattice/integrators.hpp"

#include <algorithm>
#include <cmath>

#include "rotorlattice/errors.hpp"
#include "rotorlattice/parallel.hpp"

namespace rotor {

Scheme scheme_from_string(const std::string& s) {
  if (s == "em_ito") return Scheme::EmIto;
  if (s == "heun_strat") return Scheme::HeunStrat;
  if (s == "split_exact") return Scheme::SplitExact;
  throw ConfigError("unknown scheme '" + s +
                    "' (expected em_ito, heun_strat or split_exact)");
}

SplitOrder split_order_from_string(const std::string& s) {
  if (s == "lie") return SplitOrder::Lie;
  if (s == "strang") return SplitOrder::Strang;
  if (s == "random_perm") return SplitOrder::RandomPerm;
  throw ConfigError("unknown split order '" + s +
                    "' (expected lie, strang or random_perm)");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::EmIto: return "em_ito";
    case Scheme::HeunStrat: return "heun_strat";
    default: return "split_exact";
  }
}

std::string to_string(SplitOrder o) {
  switch (o) {
    case SplitOrder::Lie: return "lie";
    case SplitOrder::Strang: return "strang";
    default: return "random_perm";
  }
}

Stepper::Stepper(const Model& model, const StepPlan& plan)
    : model_(&model), plan_(plan) {
  if (!(plan.dt > 0.0)) throw ConfigError("step size dt must be positive");
  if (plan.beta < 0.0) throw ConfigError("friction beta must be nonnegative");
  const auto& lat = model.lattice();
  const auto& sten = model.stencil();
  diagonal_ = sten.is_diagonal();
  if (diagonal_) bcoeff_ = sten.diagonal_coeff();

  bonds_.reserve(static_cast<std::size_t>(lat.num_sites()) * lat.dim());
  for (int i = 0; i < lat.num_sites(); ++i)
    for (int k = 0; k < lat.dim(); ++k)
      bonds_.push_back(Edge{i, lat.shift(i, k, 1)});

  if (plan_.scheme == Scheme::SplitExact) {
    if (diagonal_) {
      for (auto& c : lat.edge_classes()) classes_.push_back(std::move(c.edges));
    } else {
      for (auto& c : lat.sublattice_classes(sten.range()))
        classes_.push_back(std::move(c.edges));
    }
    perm_.resize(classes_.size());
  } else {
    dw_.resize(bonds_.size());
    dwh_.resize(bonds_.size());
    mid_.resize(static_cast<std::size_t>(lat.num_sites()));
    out_.resize(static_cast<std::size_t>(lat.num_sites()));
    drift_.resize(static_cast<std::size_t>(lat.num_sites()));
  }
}

void Stepper::step(std::vector<double>& x, RngStream& rng) {
  switch (plan_.scheme) {
    case Scheme::EmIto: step_em(x, rng); return;
    case Scheme::HeunStrat: step_heun(x, rng); return;
    case Scheme::SplitExact: step_split(x, rng); return;
  }
}

void Stepper::step_em(std::vector<double>& x, RngStream& rng) {
  const double dt = plan_.dt;
  const double sdt = std::sqrt(dt);
  model_->drift(x, drift_);
  for (std::size_t i = 0; i < x.size(); ++i)
    out_[i] = x[i] + dt * (drift_[i] - plan_.beta * x[i]);
  for (std::size_t e = 0; e < bonds_.size(); ++e) dw_[e] = sdt * rng.normal();
  model_->add_diffusion(x, dw_, out_);
  x.swap(out_);
}

void Stepper::step_heun(std::vector<double>& x, RngStream& rng) {
  const double dt = plan_.dt;
  const double sdt = std::sqrt(dt);
  // friction handled exactly by symmetric scalar contraction
  const double half = std::exp(-0.5 * plan_.beta * dt);
  if (plan_.beta != 0.0)
    for (auto& v : x) v *= half;
  for (std::size_t e = 0; e < bonds_.size(); ++e) {
    dw_[e] = sdt * rng.normal();
    dwh_[e] = 0.5 * dw_[e];
  }
  mid_ = x;
  model_->add_diffusion(x, dwh_, mid_);
  out_ = x;
  model_->add_diffusion(mid_, dw_, out_);
  x.swap(out_);
  if (plan_.beta != 0.0)
    for (auto& v : x) v *= half;
}

void Stepper::flow_class(std::vector<double>& x, RngStream& rng,
                         const std::vector<Edge>& edges, double var) {
  const double sd = std::sqrt(var);
  if (diagonal_) {
    const double b = bcoeff_;
    for (const Edge& e : edges) {
      const double th = b * sd * rng.normal();
      const double c = std::cos(th);
      const double s = std::sin(th);
      const double xa = x[static_cast<std::size_t>(e.a)];
      const double xb = x[static_cast<std::size_t>(e.b)];
      x[static_cast<std::size_t>(e.a)] = c * xa - s * xb;
      x[static_cast<std::size_t>(e.b)] = s * xa + c * xb;
    }
    return;
  }
  for (const Edge& e : edges) model_->field_flow(e, x, sd * rng.normal());
}

void Stepper::step_split(std::vector<double>& x, RngStream& rng) {
  const double dt = plan_.dt;
  const int k = static_cast<int>(classes_.size());
  switch (plan_.order) {
    case SplitOrder::Lie:
      for (int c = 0; c < k; ++c) flow_class(x, rng, classes_[c], dt);
      break;
    case SplitOrder::Strang:
      for (int c = 0; c + 1 < k; ++c) flow_class(x, rng, classes_[c], 0.5 * dt);
      flow_class(x, rng, classes_[k - 1], dt);
      for (int c = k - 2; c >= 0; --c) flow_class(x, rng, classes_[c], 0.5 * dt);
      break;
    case SplitOrder::RandomPerm: {
      for (int c = 0; c < k; ++c) perm_[c] = c;
      // Fisher-Yates with unbiased bounded draws
      for (int c = k - 1; c > 0; --c) {
        const std::uint32_t bound = static_cast<std::uint32_t>(c) + 1;
        const std::uint32_t limit =
            (0xFFFFFFFFu / bound) * bound;  // largest multiple of bound
        std::uint32_t u;
        do {
          u = rng.next_u32();
        } while (u >= limit);
        std::swap(perm_[c], perm_[u % bound]);
      }
      for (int c = 0; c < k; ++c) flow_class(x, rng, classes_[perm_[c]], dt);
      break;
    }
  }
  if (plan_.beta != 0.0) {
    const double damp = std::exp(-plan_.beta * dt);
    for (auto& v : x) v *= damp;
  }
}

namespace {

std::vector<std::int64_t> epoch_steps(std::span<const double> epochs,
                                      double dt) {
  std::vector<std::int64_t> steps;
  steps.reserve(epochs.size());
  double prev = -1.0;
  for (double t : epochs) {
    if (t < 0.0) throw ConfigError("epochs must be nonnegative");
    if (t <= prev) throw ConfigError("epochs must be strictly ascending");
    prev = t;
    const auto k = static_cast<std::int64_t>(std::llround(t / dt));
    if (std::abs(static_cast<double>(k) * dt - t) >
        1e-9 * std::max(1.0, std::abs(t)))
      throw ConfigError("epoch " + std::to_string(t) +
                        " is not a multiple of dt");
    steps.push_back(k);
  }
  return steps;
}

void run_one(Stepper& stepper, const Model& model, std::vector<double>& x,
             RngStream& rng, std::span<const double> epochs,
             std::span<const int> sites, std::span<const int> powers,
             const std::function<void(int, const std::vector<double>&,
                                      std::span<const double>)>& hook) {
  if (static_cast<int>(x.size()) != model.lattice().num_sites())
    throw ConfigError("start field size does not match the lattice");
  if (!powers.empty() && powers.size() != sites.size())
    throw ConfigError("integral powers must match the tracked sites");
  for (int p : powers)
    if (p != 1 && p != 2)
      throw ConfigError("integral powers must be 1 or 2");
  const double dt = stepper.plan().dt;
  const auto marks = epoch_steps(epochs, dt);
  const auto tracked = [&](std::size_t s) {
    const double v = x[static_cast<std::size_t>(sites[s])];
    return (!powers.empty() && powers[s] == 2) ? v * v : v;
  };
  std::vector<double> integ(sites.size(), 0.0);
  std::vector<double> prev(sites.size(), 0.0);
  std::size_t next = 0;
  std::int64_t k = 0;
  auto flush = [&] {
    while (next < marks.size() && marks[next] == k) {
      hook(static_cast<int>(next), x, integ);
      ++next;
    }
  };
  flush();
  const std::int64_t total = marks.empty() ? 0 : marks.back();
  while (k < total) {
    for (std::size_t s = 0; s < sites.size(); ++s) prev[s] = tracked(s);
    stepper.step(x, rng);
    ++k;
    for (std::size_t s = 0; s < sites.size(); ++s)
      integ[s] += 0.5 * dt * (prev[s] + tracked(s));
    flush();
  }
}

}  // namespace

void simulate(
    const Model& model, const StepPlan& plan, std::vector<double> x0,
    std::uint64_t seed, std::uint64_t stream, std::span<const double> epochs,
    std::span<const int> integral_sites,
    const std::function<void(int epoch_idx, const std::vector<double>& x,
                             std::span<const double> integrals)>& hook,
    std::span<const int> integral_powers) {
  Stepper stepper(model, plan);
  RngStream rng(seed, stream);
  run_one(stepper, model, x0, rng, epochs, integral_sites, integral_powers,
          hook);
}

EnsembleStats run_ensemble(const Model& model, const EnsembleSpec& spec,
                           const StartFn& start, int ntraj,
                           std::uint64_t seed, int threads, int stat_dim,
                           const StatFn& stat) {
  if (ntraj < 1) throw ConfigError("trajectory count must be positive");
  if (stat_dim < 1) throw ConfigError("stat dimension must be positive");
  constexpr int kBlock = 256;
  const int nblocks = (ntraj + kBlock - 1) / kBlock;
  const std::size_t dim = static_cast<std::size_t>(stat_dim);
  std::vector<std::vector<double>> bsum(static_cast<std::size_t>(nblocks));
  std::vector<std::vector<double>> bsq(static_cast<std::size_t>(nblocks));

  parallel_for(nblocks, threads, [&](int blk) {
    Stepper stepper(model, spec.plan);
    TrajectoryRecord rec;
    rec.snapshots.resize(spec.epochs.size());
    rec.integrals.resize(spec.epochs.size());
    std::vector<double> statbuf(dim);
    std::vector<double> x;
    auto& sum = bsum[static_cast<std::size_t>(blk)];
    auto& sq = bsq[static_cast<std::size_t>(blk)];
    sum.assign(dim, 0.0);
    sq.assign(dim, 0.0);
    const int lo = blk * kBlock;
    const int hi = std::min(ntraj, lo + kBlock);
    for (int j = lo; j < hi; ++j) {
      // the start draw shares the trajectory stream, so stepping noise
      // continues from the sampler's counter position
      RngStream rng(seed, static_cast<std::uint64_t>(j));
      start(rng, x);
      run_one(stepper, model, x, rng, spec.epochs, spec.integral_sites,
              spec.integral_powers,
              [&](int e, const std::vector<double>& field,
                  std::span<const double> integ) {
                rec.snapshots[static_cast<std::size_t>(e)].assign(
                    field.begin(), field.end());
                rec.integrals[static_cast<std::size_t>(e)].assign(
                    integ.begin(), integ.end());
              });
      std::fill(statbuf.begin(), statbuf.end(), 0.0);
      stat(rec, statbuf);
      for (std::size_t d = 0; d < dim; ++d) {
        sum[d] += statbuf[d];
        sq[d] += statbuf[d] * statbuf[d];
      }
    }
  });

  // combine block partials in block order so the result does not depend on
  // the thread count
  EnsembleStats out;
  out.count = ntraj;
  out.mean.assign(dim, 0.0);
  out.var.assign(dim, 0.0);
  std::vector<double> tsum(dim, 0.0), tsq(dim, 0.0);
  for (int blk = 0; blk < nblocks; ++blk)
    for (std::size_t d = 0; d < dim; ++d) {
      tsum[d] += bsum[static_cast<std::size_t>(blk)][d];
      tsq[d] += bsq[static_cast<std::size_t>(blk)][d];
    }
  for (std::size_t d = 0; d < dim; ++d) {
    out.mean[d] = tsum[d] / ntraj;
    if (ntraj > 1) {
      const double ss = tsq[d] - ntraj * out.mean[d] * out.mean[d];
      out.var[d] = std::max(0.0, ss / (ntraj - 1));
    }
  }
  return out;
}

EnsembleStats run_ensemble(const Model& model, const EnsembleSpec& spec,
                           const std::vector<double>& x0, int ntraj,
                           std::uint64_t seed, int threads, int stat_dim,
                           const StatFn& stat) {
  return run_ensemble(
      model, spec,
      [&x0](RngStream&, std::vector<double>& x) {
        x.assign(x0.begin(), x0.end());
      },
      ntraj, seed, threads, stat_dim, stat);
}

}  // namespace rotor
