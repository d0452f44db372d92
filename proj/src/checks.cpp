#include "rotorlattice/checks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "rotorlattice/analysis.hpp"
#include "rotorlattice/detail/bessel.hpp"
#include "rotorlattice/errors.hpp"
#include "rotorlattice/oracle.hpp"
#include "rotorlattice/symbolic.hpp"

namespace rotor {

double CheckContext::dt_or(double tuned) const {
  return cfg.was_set("integrator.dt") ? cfg.dt : tuned;
}
int CheckContext::ntraj_or(int tuned) const {
  return cfg.was_set("run.ntraj") ? cfg.ntraj : tuned;
}
Scheme CheckContext::scheme_or(Scheme tuned) const {
  return cfg.was_set("integrator.scheme") ? cfg.scheme : tuned;
}
SplitOrder CheckContext::order_or(SplitOrder tuned) const {
  return cfg.was_set("integrator.order") ? cfg.order : tuned;
}

namespace {

using PolyPair = std::pair<std::string, Polynomial>;

Polynomial psite(int i) { return Polynomial::site(i); }

// compact numeric tag for report keys: 0.5 -> "0.5", 50 -> "50"
std::string num_label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckReport base_report(const CheckContext& ctx, std::string name,
                        std::string property, std::string tolerance,
                        int criterion, bool hard) {
  CheckReport r;
  r.name = std::move(name);
  r.property = std::move(property);
  r.tolerance = std::move(tolerance);
  r.criterion = criterion;
  r.hard = hard;
  r.seed = ctx.cfg.seed;
  r.config_hash = ctx.cfg.hash();
  return r;
}

// runs one sub-check; an exception becomes a failed hard report instead of
// killing the suite, so deliberate fault injection fails informatively
void guarded(const CheckContext& ctx, std::vector<CheckReport>& out,
             const std::string& name,
             const std::function<void(std::vector<CheckReport>&)>& body) {
  try {
    body(out);
  } catch (const std::exception& e) {
    auto r = base_report(ctx, name + ".error",
                         "sub-check executed without raising an error", "none",
                         0, true);
    r.pass = false;
    r.note = e.what();
    out.push_back(r);
  }
}

// nodes and weights for E[f(Z)], Z standard normal, by Golub-Welsch on the
// Hermite Jacobi matrix
std::vector<std::pair<double, double>> gauss_hermite_normal(int n) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(k / 2.0);
    jac(k, k - 1) = off;
    jac(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double w = es.eigenvectors()(0, i);
    out[static_cast<std::size_t>(i)] = {std::numbers::sqrt2 *
                                            es.eigenvalues()(i),
                                        w * w};
  }
  return out;
}

// relative drift of the conserved quadratic along one trajectory, probed at
// the quarter marks of the step budget
double max_energy_drift(const Model& model, const StepPlan& plan,
                        std::vector<double> x0, std::uint64_t seed,
                        long steps) {
  const double v0 = model.potential(x0);
  std::vector<double> epochs;
  for (long q = 1; q <= 4; ++q)
    epochs.push_back(plan.dt * static_cast<double>(steps * q / 4));
  double worst = 0.0;
  simulate(model, plan, std::move(x0), seed, 0, epochs, {},
           [&](int, const std::vector<double>& x, std::span<const double>) {
             const double v = model.potential(x);
             worst = std::max(worst, std::abs(v - v0) / std::abs(v0));
           });
  return worst;
}

double em_mean_drift(const CheckContext& ctx, const Model& model,
                     const GaussianMeasure& mu, double dt, int steps,
                     int ntraj, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.plan.scheme = Scheme::EmIto;
  spec.plan.dt = dt;
  spec.epochs = {0.0, dt * steps};
  const auto stats = run_ensemble(
      model, spec,
      [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
      ntraj, seed, ctx.threads, 1,
      [&model](const TrajectoryRecord& rec, std::span<double> out) {
        const double v0 = model.potential(rec.snapshots[0]);
        const double v1 = model.potential(rec.snapshots[1]);
        // Signed drift: the O(sqrt(dt)) fluctuation of V averages out, the
        // O(dt) discretisation bias survives and halves with dt.
        out[0] = (v1 - v0) / v0;
      });
  return stats.mean[0];
}

}  // namespace

std::vector<CheckReport> check_conservation(const CheckContext& ctx) {
  std::vector<CheckReport> out;

  guarded(ctx, out, "conservation.split_diagonal", [&](auto& reports) {
    Model model(TorusLattice(1, 16), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    StepPlan plan;
    plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    plan.order = ctx.order_or(SplitOrder::Strang);
    plan.dt = ctx.dt_or(0.01);
    RngStream rng(mix_seed(ctx.cfg.seed, 101), 1);
    std::vector<double> x;
    mu.sample(rng, x);
    const double drift = max_energy_drift(model, plan, std::move(x),
                                          mix_seed(ctx.cfg.seed, 101), 10000);
    auto r = base_report(
        ctx, "conservation.split_diagonal",
        "exact pair rotations keep the conserved quadratic fixed over 1e4 "
        "steps (on-site coupling)",
        "relative drift <= 1e-12", 1, true);
    r.measured = {{"max_rel_drift", drift}};
    r.pass = drift <= 1e-12;
    reports.push_back(r);
  });

  guarded(ctx, out, "conservation.split_tridiagonal", [&](auto& reports) {
    PrecisionStencil sten(1, {{{0}, 3.0}, {{1}, -1.0}});
    Model model(TorusLattice(1, 18), sten);
    GaussianMeasure mu(model, 1.0);
    StepPlan plan;
    plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    plan.order = ctx.order_or(SplitOrder::Strang);
    plan.dt = ctx.dt_or(0.01);
    RngStream rng(mix_seed(ctx.cfg.seed, 102), 1);
    std::vector<double> x;
    mu.sample(rng, x);
    const double drift = max_energy_drift(model, plan, std::move(x),
                                          mix_seed(ctx.cfg.seed, 102), 10000);
    auto r = base_report(
        ctx, "conservation.split_tridiagonal",
        "pair flows on stride-3 sublattice classes conserve the quadratic "
        "for a nearest-neighbour coupling",
        "relative drift <= 1e-8", 1, true);
    r.measured = {{"max_rel_drift", drift}};
    r.pass = drift <= 1e-8;
    reports.push_back(r);
  });

  guarded(ctx, out, "conservation.em_drift_halving", [&](auto& reports) {
    Model model(TorusLattice(1, 16), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    const double dt = ctx.dt_or(0.04);
    const int ntraj = ctx.ntraj_or(32768);
    const double d1 = em_mean_drift(ctx, model, mu, dt, 25, ntraj,
                                    mix_seed(ctx.cfg.seed, 103));
    const double d2 = em_mean_drift(ctx, model, mu, dt / 2, 50, ntraj,
                                    mix_seed(ctx.cfg.seed, 104));
    const double ratio = d1 / d2;
    auto r = base_report(
        ctx, "conservation.em_drift_halving",
        "Euler-Maruyama leaks energy at first order: halving dt halves the "
        "mean relative drift over a fixed horizon",
        "drift ratio in [1.5, 2.6]", 1, true);
    r.measured = {{"drift_dt", d1}, {"drift_half_dt", d2}, {"ratio", ratio}};
    r.pass = ratio >= 1.5 && ratio <= 2.6;
    reports.push_back(r);
  });

  return out;
}

std::vector<CheckReport> check_balance(const CheckContext& ctx) {
  std::vector<CheckReport> out;

  guarded(ctx, out, "balance.battery", [&](auto& reports) {
    Model model(TorusLattice(1, 8), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    StepPlan plan;
    plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    plan.order = ctx.order_or(SplitOrder::Strang);
    plan.dt = ctx.dt_or(0.05);
    const int ntraj = ctx.ntraj_or(100000);

    const std::vector<PolyPair> fs = {
        {"x0", psite(0)},
        {"x0", psite(0)},
        {"x0sq", psite(0) * psite(0)},
        {"x0x1", psite(0) * psite(1)},
        {"x0", psite(0)},
        {"x0sq", psite(0) * psite(0)},
        {"x0x2", psite(0) * psite(2)},
        {"x0+x1", psite(0) + psite(1)},
        {"x0sq+x1sq", psite(0) * psite(0) + psite(1) * psite(1)},
        {"x1", psite(1)},
    };
    const std::vector<PolyPair> gs = {
        {"x1", psite(1)},
        {"x4", psite(4)},
        {"x1sq", psite(1) * psite(1)},
        {"x2x3", psite(2) * psite(3)},
        {"x1x2", psite(1) * psite(2)},
        {"x3", psite(3)},
        {"x5", psite(5)},
        {"x2sq", psite(2) * psite(2)},
        {"x4sq", psite(4) * psite(4)},
        {"x1x3", psite(1) * psite(3)},
    };

    int passed = 0;
    double maxz = 0.0;
    int idx = 0;
    for (double t : {0.5, 1.0}) {
      for (std::size_t k = 0; k < fs.size(); ++k, ++idx) {
        const auto res = detailed_balance_test(
            model, mu, fs[k].second, gs[k].second, t, plan, ntraj,
            mix_seed(ctx.cfg.seed, 200 + static_cast<std::uint64_t>(idx)),
            ctx.threads);
        const bool ok = std::abs(res.z) <= 3.0;
        passed += ok ? 1 : 0;
        maxz = std::max(maxz, std::abs(res.z));
        auto r = base_report(
            ctx,
            "balance.pair." + fs[k].first + "~" + gs[k].first + "@t" +
                num_label(t),
            "start-end correlators of the two observables agree in the "
            "stationary state",
            "|z| <= 3", 6, false);
        r.measured = {{"t", t},
                      {"mean_fg", res.mean_fg},
                      {"mean_gf", res.mean_gf},
                      {"diff", res.diff},
                      {"se", res.se},
                      {"z", res.z}};
        r.pass = ok;
        reports.push_back(r);
      }
    }
    auto r = base_report(
        ctx, "balance.battery",
        "the sampled palindromic-splitting kernel is symmetric under the "
        "stationary Gaussian measure: paired correlator tests read as noise",
        ">= 19 of 20 pairs with |z| <= 3 at n = 1e5", 6, true);
    r.measured = {{"pairs", 20.0},
                  {"passed", static_cast<double>(passed)},
                  {"max_abs_z", maxz},
                  {"ntraj", static_cast<double>(ntraj)}};
    r.pass = passed >= 19;
    reports.push_back(r);
  });

  guarded(ctx, out, "balance.same_functional", [&](auto& reports) {
    Model model(TorusLattice(1, 8), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    StepPlan plan;
    plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    plan.order = ctx.order_or(SplitOrder::Strang);
    plan.dt = ctx.dt_or(0.05);
    const Polynomial f = psite(0) * psite(0);
    const auto res = detailed_balance_test(
        model, mu, f, f, 0.5, plan, ctx.ntraj_or(2000),
        mix_seed(ctx.cfg.seed, 250), ctx.threads);
    auto r = base_report(
        ctx, "balance.same_functional",
        "with identical observables the paired statistic vanishes "
        "identically, not just in expectation",
        "z exactly 0", 6, true);
    r.measured = {{"diff", res.diff}, {"z", res.z}};
    r.pass = res.diff == 0.0 && res.z == 0.0;
    reports.push_back(r);
  });

  guarded(ctx, out, "balance.antisymmetry_battery", [&](auto& reports) {
    // the pair fields integrate to zero against products in the Gaussian
    // state, E[f X g] = -E[g X f]; evaluated by Wick calculus, 25 cases on
    // each of two geometries
    double worst = 0.0;
    int cases = 0;
    const auto run_battery = [&](const Model& model, double r_val,
                                 int budget) {
      GaussianMeasure mu(model, r_val);
      const auto& lat = model.lattice();
      const std::vector<Polynomial> polys = {
          psite(0),
          psite(1),
          psite(0) * psite(0),
          psite(0) * psite(1),
          psite(1) * psite(1) - Polynomial::constant(0.7),
          psite(0) + 2.0 * psite(3),
          psite(2) * psite(4),
      };
      std::vector<Edge> edges;
      for (int s : {0, 1, 3})
        for (int ax = 0; ax < lat.dim(); ++ax)
          edges.push_back(Edge{s, lat.shift(s, ax, 1)});
      int used = 0;
      for (const auto& e : edges)
        for (std::size_t i = 0; i < polys.size(); ++i)
          for (std::size_t j = i; j < polys.size(); ++j) {
            if (used >= budget) return;
            const Polynomial xf = field_apply_poly(model, e, polys[i]);
            const Polynomial xg = field_apply_poly(model, e, polys[j]);
            const double sum =
                mu.wick_expect(polys[i] * xg) + mu.wick_expect(polys[j] * xf);
            worst = std::max(worst, std::abs(sum));
            ++used;
            ++cases;
          }
    };
    run_battery(Model(TorusLattice(1, 12),
                      PrecisionStencil(1, {{{0}, 3.0}, {{1}, -1.0}})),
                1.0, 25);
    run_battery(Model(TorusLattice(2, 6), PrecisionStencil::diagonal(2, 1.5)),
                0.8, 25);
    auto r = base_report(
        ctx, "balance.antisymmetry_battery",
        "pair fields are antisymmetric against the Gaussian state: "
        "E[f X g] + E[g X f] = 0 exactly, by exact moment evaluation",
        "max |sum| <= 1e-10 over 50 cases", 7, true);
    r.measured = {{"cases", static_cast<double>(cases)},
                  {"max_abs_sum", worst}};
    r.pass = cases >= 50 && worst <= 1e-10;
    reports.push_back(r);
  });

  return out;
}

namespace {

// expected one-step matrix of the splitting scheme on a tiny ring, by
// Gauss-Hermite averaging of the exact edge rotations; the palindrome here
// mirrors the stepper's strang stage order
Eigen::MatrixXd expected_split_matrix(const Model& model, double dt,
                                      int nodes) {
  const auto& lat = model.lattice();
  const int n = lat.num_sites();
  const auto gh = gauss_hermite_normal(nodes);
  const auto classes = lat.edge_classes();

  std::vector<std::pair<const std::vector<Edge>*, double>> stages;
  for (std::size_t c = 0; c + 1 < classes.size(); ++c)
    stages.push_back({&classes[c].edges, dt / 2});
  stages.push_back({&classes.back().edges, dt});
  for (std::size_t c = classes.size() - 1; c-- > 0;)
    stages.push_back({&classes[c].edges, dt / 2});

  Eigen::MatrixXd total = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (const auto& [edges, tau] : stages)
    for (const Edge& e : *edges) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(n, n);
      for (const auto& [z, w] : gh) {
        for (int col = 0; col < n; ++col) {
          std::fill(x.begin(), x.end(), 0.0);
          x[static_cast<std::size_t>(col)] = 1.0;
          model.field_flow(e, x, std::sqrt(tau) * z);
          for (int row = 0; row < n; ++row)
            expect(row, col) += w * x[static_cast<std::size_t>(row)];
        }
      }
      total = expect * total;
    }
  return total;
}

}  // namespace

std::vector<CheckReport> check_decay(const CheckContext& ctx) {
  std::vector<CheckReport> out;

  guarded(ctx, out, "decay.linear_mean", [&](auto& reports) {
    Model model(TorusLattice(1, 8), PrecisionStencil::diagonal(1, 1.0));
    const int n = model.lattice().num_sites();
    const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
    const double target = std::exp(-1.0);  // e^{-N b^2 T}, N = b = T = 1
    struct SchemeCase {
      const char* name;
      Scheme scheme;
      double dt;
    };
    const SchemeCase cases[] = {
        {"em", Scheme::EmIto, ctx.dt_or(0.002)},
        {"heun", Scheme::HeunStrat, ctx.dt_or(0.01)},
        {"split", Scheme::SplitExact, ctx.dt_or(0.01)},
    };
    int tag = 300;
    for (const auto& sc : cases) {
      EnsembleSpec spec;
      spec.plan.scheme = ctx.scheme_or(sc.scheme);
      spec.plan.order = ctx.order_or(SplitOrder::Strang);
      spec.plan.dt = sc.dt;
      spec.epochs = {1.0};
      const int ntraj = ctx.ntraj_or(20000);
      const auto stats = run_ensemble(
          model, spec, ones, ntraj, mix_seed(ctx.cfg.seed, tag++), ctx.threads,
          1, [](const TrajectoryRecord& rec, std::span<double> o) {
            o[0] = rec.snapshots[0][0];
          });
      const double se = std::sqrt(stats.var[0] / ntraj);
      auto r = base_report(
          ctx, std::string("decay.linear_mean_") + sc.name,
          "site means contract exponentially at the dimension-coupling rate",
          "|mean - exp(-1)| <= 3 SE at t = 1", 2, true);
      r.measured = {{"mean", stats.mean[0]},
                    {"target", target},
                    {"se", se},
                    {"z", (stats.mean[0] - target) / se}};
      r.pass = std::abs(stats.mean[0] - target) <= 3.0 * se;
      reports.push_back(r);
    }
  });

  guarded(ctx, out, "decay.split_mean_factor", [&](auto& reports) {
    Model model(TorusLattice(1, 4), PrecisionStencil::diagonal(1, 1.0));
    const double dt = ctx.dt_or(0.01);
    const auto mat = expected_split_matrix(model, dt, 24);
    const double target = std::exp(-dt);  // e^{-N b^2 dt}
    const int n = model.lattice().num_sites();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst =
            std::max(worst, std::abs(mat(i, j) - (i == j ? target : 0.0)));
    auto r = base_report(
        ctx, "decay.split_mean_factor",
        "the composed expected rotation matrix of one splitting step is the "
        "exact scalar contraction, independent of sample counts (quadrature)",
        "max entry gap <= 1e-10", 2, true);
    r.measured = {{"max_abs_gap", worst}, {"target_factor", target}};
    r.pass = worst <= 1e-10;
    reports.push_back(r);
  });

  for (int dim : {1, 2}) {
    guarded(ctx, out, "decay.second_moment_mc_n" + std::to_string(dim),
            [&, dim](auto& reports) {
              Model model(TorusLattice(dim, 32),
                          PrecisionStencil::diagonal(dim, 1.0));
              const int n = model.lattice().num_sites();
              std::vector<double> x0(static_cast<std::size_t>(n), 0.0);
              x0[0] = 1.0;
              EnsembleSpec spec;
              spec.plan.scheme = ctx.scheme_or(Scheme::SplitExact);
              spec.plan.order = ctx.order_or(SplitOrder::RandomPerm);
              spec.plan.dt = ctx.dt_or(0.05);
              spec.epochs = {0.5, 1.0, 2.0, 4.0};
              const std::vector<int> sites = {
                  0, model.lattice().shift(0, 0, 1),
                  model.lattice().shift(0, 0, 2)};
              const int ntraj = ctx.ntraj_or(100000);
              const auto stats = run_ensemble(
                  model, spec, x0, ntraj, mix_seed(ctx.cfg.seed, 310 + dim),
                  ctx.threads, 12,
                  [&sites](const TrajectoryRecord& rec, std::span<double> o) {
                    std::size_t d = 0;
                    for (std::size_t e = 0; e < rec.snapshots.size(); ++e)
                      for (int s : sites) {
                        const double y =
                            rec.snapshots[e][static_cast<std::size_t>(s)];
                        o[d++] = y * y;
                      }
                  });
              double maxz = 0.0;
              std::size_t d = 0;
              for (std::size_t e = 0; e < spec.epochs.size(); ++e) {
                const auto oracle =
                    second_moment_field(model, 0.0, spec.epochs[e], x0);
                for (int s : sites) {
                  const double se = std::sqrt(stats.var[d] / ntraj);
                  const double z =
                      (stats.mean[d] - oracle[static_cast<std::size_t>(s)]) /
                      se;
                  maxz = std::max(maxz, std::abs(z));
                  ++d;
                }
              }
              auto r = base_report(
                  ctx, "decay.second_moment_mc_n" + std::to_string(dim),
                  "sampled squared fields from a point start match the "
                  "discrete heat-kernel second moments",
                  "|mc - oracle| <= 3 SE at t in {0.5,1,2,4}, three sites", 3,
                  true);
              r.measured = {{"max_abs_z", maxz},
                            {"ntraj", static_cast<double>(ntraj)},
                            {"dt", spec.plan.dt}};
              r.pass = maxz <= 3.0;
              reports.push_back(r);
            });
  }

  for (int dim : {1, 2}) {
    guarded(
        ctx, out, "decay.variance_exponent_oracle_n" + std::to_string(dim),
        [&, dim](auto& reports) {
          // free-lattice variance law for x_0^2; no torus wrap by
          // construction, so the fitted exponent is the clean -dim/2
          const double b = 1.0, r_weight = 1.0;
          std::vector<double> ts, vs;
          for (int k = 0; k < 9; ++k) {
            const double t =
                5.0 * std::pow(10.0, static_cast<double>(k) / 8.0);
            const double axis = detail::bessel_i_scaled(0, 4.0 * b * b * t);
            ts.push_back(t);
            vs.push_back(2.0 * (r_weight / b) * (r_weight / b) *
                         std::pow(axis, dim));
          }
          const auto fit = fit_power_law(ts, vs);
          auto r = base_report(
              ctx, "decay.variance_exponent_oracle_n" + std::to_string(dim),
              "the exact variance of the evolved on-site square decays "
              "polynomially with exponent -dim/2",
              "exponent within 0.05 of -dim/2 on t in [5, 50]", 4, true);
          r.measured = {{"exponent", fit.slope},
                        {"target", -0.5 * dim},
                        {"r2", fit.r2}};
          r.pass = std::abs(fit.slope + 0.5 * dim) <= 0.05;
          reports.push_back(r);
        });
  }

  guarded(ctx, out, "decay.variance_exponent_mc", [&](auto& reports) {
    // stationary autocovariance of the centred square at lag tau equals
    // Var(P_{tau/2} x_0^2) by kernel symmetry, so a stationary ensemble
    // measures the decay law directly and without differencing
    Model model(TorusLattice(1, 32), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    const Polynomial g =
        psite(0) * psite(0) - Polynomial::constant(1.0);  // x_0^2 - r/b
    const std::vector<double> lags = {2.5, 5.0, 10.0, 20.0, 40.0};
    EnsembleSpec spec;
    spec.plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    spec.plan.order = ctx.order_or(SplitOrder::RandomPerm);
    spec.plan.dt = ctx.dt_or(0.05);
    spec.epochs = {0.0, 2.5, 5.0, 10.0, 20.0, 40.0};
    const int ntraj = ctx.ntraj_or(100000);
    const auto stats = run_ensemble(
        model, spec,
        [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
        ntraj, mix_seed(ctx.cfg.seed, 320), ctx.threads, 5,
        [&g](const TrajectoryRecord& rec, std::span<double> o) {
          const double g0 = g.eval(rec.snapshots[0]);
          for (std::size_t k = 1; k < rec.snapshots.size(); ++k)
            o[k - 1] = g0 * g.eval(rec.snapshots[k]);
        });
    const std::vector<double> covs(stats.mean.begin(), stats.mean.end());
    const auto fit = fit_power_law(lags, covs);
    // torus-kernel reference for the pointwise consistency flag
    double max_abs_z = 0.0;
    for (std::size_t k = 0; k < lags.size(); ++k) {
      const auto axis = heat_kernel_axis_torus(32, lags[k]);
      const double oracle = 2.0 * axis[0];
      const double se = std::sqrt(stats.var[k] / ntraj);
      max_abs_z = std::max(max_abs_z, std::abs((covs[k] - oracle) / se));
    }
    auto r = base_report(
        ctx, "decay.variance_exponent_mc",
        "sampled stationary autocovariances of the centred square fall on "
        "the polynomial law measured by the oracle",
        "fitted exponent within 0.3 of -1/2; pointwise within 3 SE", 4, true);
    r.measured = {{"exponent", fit.slope},
                  {"r2", fit.r2},
                  {"max_abs_z", max_abs_z},
                  {"ntraj", static_cast<double>(ntraj)}};
    r.pass = std::abs(fit.slope + 0.5) <= 0.3 && max_abs_z <= 3.0;
    reports.push_back(r);
  });

  guarded(ctx, out, "decay.gradient_bound_family", [&](auto& reports) {
    Model model(TorusLattice(1, 48), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    const int n = model.lattice().num_sites();
    const std::vector<PolyPair> family = {
        {"x0sq", psite(0) * psite(0)},
        {"x0x1", psite(0) * psite(1)},
        {"x0x2", psite(0) * psite(2)},
        {"(x0+x1)sq", (psite(0) + psite(1)) * (psite(0) + psite(1))},
        {"box2", box_sum_squares(model.lattice(), 2)},
    };
    std::vector<double> grid;
    for (int k = 0; k < 25; ++k)
      grid.push_back(0.1 * std::pow(500.0, static_cast<double>(k) / 24.0));
    grid.back() = 50.0;
    double worst_ratio = 0.0;
    bool all_ok = true;
    for (const auto& [label, f] : family) {
      const auto q = quadratic_from_polynomial(n, f);
      const auto points = gradient_bound_check(model, mu, q, grid);
      for (const auto& p : points) {
        worst_ratio = std::max(worst_ratio, p.lhs / p.rhs);
        if (p.lhs > p.rhs * (1.0 + 1e-9)) all_ok = false;
      }
    }
    const double plateau = gradient_envelope_plateau(1.0);
    const double target = 0.5 / std::sqrt(std::numbers::pi);
    const bool const_ok = std::abs(plateau - target) <= 1e-6;
    auto r = base_report(
        ctx, "decay.gradient_bound_family",
        "evolved gradients of a five-member quadratic family stay below the "
        "dimensional decay envelope with constant 1/(2 b sqrt(pi))",
        "lhs <= rhs on t in [0.1, 50]; constant within 1e-6", 5, true);
    r.measured = {{"worst_lhs_over_rhs", worst_ratio},
                  {"constant", plateau},
                  {"constant_target", target},
                  {"envelope_peak", gradient_envelope_peak(1.0)}};
    r.pass = all_ok && const_ok;
    reports.push_back(r);

    // conserved quadratic: both sides finite but the gradient seminorm
    // grows with volume, so the ratio is recorded, never asserted
    QuadraticForm qv(n);
    for (int i = 0; i < n; ++i) qv.add(i, i, 0.5);
    const std::vector<double> vgrid = {0.1, 1.0, 10.0, 50.0};
    const auto vpoints = gradient_bound_check(model, mu, qv, vgrid);
    auto rv = base_report(
        ctx, "decay.gradient_bound_conserved",
        "for the conserved quadratic the two sides of the bound are "
        "recorded for context",
        "record only", 5, false);
    for (const auto& p : vpoints)
      rv.measured.push_back({"ratio_t" + num_label(p.t), p.lhs / p.rhs});
    rv.pass = true;
    reports.push_back(rv);
  });

  return out;
}

std::vector<CheckReport> check_gap(const CheckContext& ctx) {
  std::vector<CheckReport> out;
  struct GapCase {
    int dim;
    int side;
    std::vector<int> ells;
  };
  const std::vector<GapCase> cases = {
      {1, 64, {2, 4, 8, 16, 32}},
      {2, 32, {2, 3, 4, 6, 8, 12, 16}},
  };
  for (const auto& gc : cases) {
    guarded(ctx, out, "gap.box_ratio_slope_n" + std::to_string(gc.dim),
            [&](auto& reports) {
              Model model(TorusLattice(gc.dim, gc.side),
                          PrecisionStencil::diagonal(gc.dim, 1.0));
              GaussianMeasure mu(model, 1.0);
              const auto pts = no_gap_ratios(model, mu, gc.ells);
              std::vector<double> xs, ys;
              for (const auto& p : pts) {
                xs.push_back(static_cast<double>(p.ell));
                ys.push_back(p.ratio);
              }
              const auto fit = fit_power_law(xs, ys);
              auto r = base_report(
                  ctx, "gap.box_ratio_slope_n" + std::to_string(gc.dim),
                  "Dirichlet-to-variance ratios of box observables fall like "
                  "the inverse box side, so no uniform spectral gap exists",
                  "log-log slope within 0.02 of -1", 8, true);
              r.measured = {{"slope", fit.slope},
                            {"r2", fit.r2},
                            {"ratio_largest_box", pts.back().ratio}};
              r.pass =
                  std::abs(fit.slope + 1.0) <= 0.02 && pts.back().ratio > 0.0;
              reports.push_back(r);
            });
  }
  return out;
}

namespace {

std::vector<PolyPair> audit_family(const TorusLattice& lat) {
  return {
      {"box2", box_sum_squares(lat, 2)},
      {"box4", box_sum_squares(lat, 4)},
      {"box8", box_sum_squares(lat, 8)},
      {"x0sq", psite(0) * psite(0)},
      {"x0x1", psite(0) * psite(1)},
  };
}

}  // namespace

std::vector<CheckReport> check_nash(const CheckContext& ctx) {
  std::vector<CheckReport> out;
  for (int dim : {1, 2}) {
    guarded(ctx, out, "nash.family_stability_n" + std::to_string(dim),
            [&, dim](auto& reports) {
              double cmax[2] = {0.0, 0.0};
              const int sides[2] = {16, 32};
              for (int si = 0; si < 2; ++si) {
                Model model(TorusLattice(dim, sides[si]),
                            PrecisionStencil::diagonal(dim, 1.0));
                GaussianMeasure mu(model, 1.0);
                for (const auto& [label, f] : audit_family(model.lattice())) {
                  const auto a = liggett_nash_audit(model, mu, f);
                  if (a.degenerate)
                    throw ConfigError("audit family member " + label +
                                      " is degenerate");
                  cmax[si] = std::max(cmax[si], a.c2);
                  if (si == 1) {
                    auto rr = base_report(
                        ctx,
                        "nash.ratio_n" + std::to_string(dim) + "." + label,
                        "gradient-seminorm ratio of one family member",
                        "reported only", 9, false);
                    rr.measured = {{"c2", a.c2},
                                   {"seminorm_a", a.seminorm_a},
                                   {"seminorm_b", a.seminorm_b},
                                   {"grad_pairing", a.grad_pairing}};
                    rr.pass = true;
                    reports.push_back(rr);
                  }
                }
              }
              const double rel = std::abs(cmax[1] / cmax[0] - 1.0);
              auto r = base_report(
                  ctx, "nash.family_stability_n" + std::to_string(dim),
                  "the empirical constant of the gradient-seminorm "
                  "inequality is finite and volume-stable; its value is "
                  "reported, not matched against anything",
                  "max family constant finite, change <= 20% for L 16 -> 32",
                  9, true);
              r.measured = {{"c2_L16", cmax[0]},
                            {"c2_L32", cmax[1]},
                            {"rel_change", rel}};
              r.pass = cmax[0] > 0.0 && std::isfinite(cmax[1]) && rel <= 0.2;
              reports.push_back(r);
            });
  }

  guarded(ctx, out, "nash.conserved_excluded", [&](auto& reports) {
    Model model(TorusLattice(1, 16), PrecisionStencil::diagonal(1, 1.0));
    GaussianMeasure mu(model, 1.0);
    const auto a = liggett_nash_audit(model, mu, potential_poly(model));
    auto r = base_report(
        ctx, "nash.conserved_excluded",
        "the conserved quadratic is annihilated by the generator, so its "
        "audit is flagged degenerate instead of dividing by zero",
        "degenerate flag set, constants left at 0", 0, true);
    r.measured = {{"degenerate", a.degenerate ? 1.0 : 0.0},
                  {"grad_pairing", a.grad_pairing},
                  {"c2", a.c2}};
    r.pass = a.degenerate && a.c2 == 0.0;
    reports.push_back(r);
  });

  return out;
}

std::vector<CheckReport> check_liggett(const CheckContext& ctx) {
  std::vector<CheckReport> out;
  for (int dim : {1, 2}) {
    guarded(ctx, out, "liggett.family_stability_n" + std::to_string(dim),
            [&, dim](auto& reports) {
              double cmax[2] = {0.0, 0.0};
              const int sides[2] = {16, 32};
              for (int si = 0; si < 2; ++si) {
                Model model(TorusLattice(dim, sides[si]),
                            PrecisionStencil::diagonal(dim, 1.0));
                GaussianMeasure mu(model, 1.0);
                for (const auto& [label, f] : audit_family(model.lattice())) {
                  const auto a = liggett_nash_audit(model, mu, f);
                  if (a.degenerate)
                    throw ConfigError("audit family member " + label +
                                      " is degenerate");
                  cmax[si] = std::max(cmax[si], a.c1);
                  if (si == 1) {
                    auto rr = base_report(
                        ctx,
                        "liggett.ratio_n" + std::to_string(dim) + "." + label,
                        "variance-to-Dirichlet ratio of one family member",
                        "reported only", 9, false);
                    rr.measured = {{"c1", a.c1},
                                   {"variance", a.variance},
                                   {"dirichlet", a.dirichlet}};
                    rr.pass = true;
                    reports.push_back(rr);
                  }
                }
              }
              const double rel = std::abs(cmax[1] / cmax[0] - 1.0);
              auto r = base_report(
                  ctx, "liggett.family_stability_n" + std::to_string(dim),
                  "the empirical constant of the variance-decay inequality "
                  "is finite and volume-stable; reported, never asserted "
                  "against a target",
                  "max family constant finite, change <= 20% for L 16 -> 32",
                  9, true);
              r.measured = {{"c1_L16", cmax[0]},
                            {"c1_L32", cmax[1]},
                            {"rel_change", rel}};
              r.pass = cmax[0] > 0.0 && std::isfinite(cmax[1]) && rel <= 0.2;
              reports.push_back(r);
            });
  }
  return out;
}

std::vector<CheckReport> check_beta(const CheckContext& ctx) {
  std::vector<CheckReport> out;
  guarded(ctx, out, "beta.phase_scan", [&](auto& reports) {
    Model model(TorusLattice(1, 48), PrecisionStencil::diagonal(1, 1.0));
    const std::vector<double> betas = {0.0, 1e-3, 0.1, 0.5, 1.0};
    const auto scan = phase_transition_scan(model, 1.0, betas, 40.0);

    const auto rank = [](DecayClass c) {
      switch (c) {
        case DecayClass::Polynomial: return 0;
        case DecayClass::Crossover: return 1;
        case DecayClass::Exponential: return 2;
      }
      return 1;
    };
    bool monotone = true;
    for (std::size_t k = 1; k < scan.size(); ++k)
      if (rank(scan[k].decay.cls) < rank(scan[k - 1].decay.cls))
        monotone = false;

    for (const auto& p : scan) {
      auto rr = base_report(ctx, "beta.scan_beta" + num_label(p.beta),
                            "decay classification of one friction strength",
                            "reported; crossover is a legitimate outcome", 10,
                            false);
      rr.measured = {{"beta", p.beta},
                     {"exponent", p.decay.poly.slope},
                     {"rate", -p.decay.expo.slope},
                     {"r2_poly", p.decay.poly.r2},
                     {"r2_exp", p.decay.expo.r2}};
      rr.note = to_string(p.decay.cls);
      rr.pass = true;
      reports.push_back(rr);
    }

    const auto& b0 = scan[0];
    const auto& b05 = scan[3];
    const auto& b1 = scan[4];
    const bool ok0 = b0.decay.cls == DecayClass::Polynomial &&
                     std::abs(b0.decay.poly.slope + 0.5) <= 0.1;
    const bool ok05 = b05.decay.cls == DecayClass::Exponential &&
                      std::abs(-b05.decay.expo.slope - 2.0) <= 0.1;
    const bool ok1 = b1.decay.cls == DecayClass::Exponential &&
                     std::abs(-b1.decay.expo.slope - 4.0) <= 0.2;
    auto r = base_report(
        ctx, "beta.phase_scan",
        "switching on friction moves the variance decay from the polynomial "
        "law to exponential at rate four times the friction, monotonically "
        "across the grid",
        "beta=0 polynomial, exponent -1/2 +- 0.1; rates 2 +- 0.1 and 4 +- "
        "0.2; classification monotone",
        10, true);
    r.measured = {{"exponent_beta0", b0.decay.poly.slope},
                  {"rate_beta0.5", -b05.decay.expo.slope},
                  {"rate_beta1", -b1.decay.expo.slope},
                  {"monotone", monotone ? 1.0 : 0.0}};
    r.pass = ok0 && ok05 && ok1 && monotone;
    reports.push_back(r);
  });
  return out;
}

std::vector<CheckReport> check_clt(const CheckContext& ctx) {
  std::vector<CheckReport> out;

  // The potential is conserved pathwise, so a stationary-start ensemble is a
  // mixture over energy shells and S_T/sqrt(T) converges to a variance
  // mixture of Gaussians, not a Gaussian: the excess kurtosis floors at
  // 3 Var(V)/E[V]^2 = 6/n instead of decaying. The CLT itself lives on a
  // single shell, where the restricted dynamics is ergodic. The hard check
  // therefore conditions the start on the mean-energy shell (rescaling a
  // stationary draw lands exactly on the microcanonical law because the
  // diagonal-stencil measure is isotropic in the M-metric); the mixture
  // floor is pinned separately below as its own prediction.
  guarded(ctx, out, "clt.linear_functional", [&](auto& reports) {
    const double b = 2.0;
    const int nsites = 16;
    Model model(TorusLattice(1, nsites), PrecisionStencil::diagonal(1, b));
    GaussianMeasure mu(model, 1.0);
    const double vstar = 0.5 * nsites;  // E_mu[V] = n r / 2
    EnsembleSpec spec;
    spec.plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    spec.plan.order = ctx.order_or(SplitOrder::RandomPerm);
    spec.plan.dt = ctx.dt_or(0.05);
    spec.epochs = {10.0, 20.0, 50.0};
    spec.integral_sites = {0};
    const int ntraj = ctx.ntraj_or(10000);
    const auto stats = run_ensemble(
        model, spec,
        [&mu, &model, vstar](RngStream& rng, std::vector<double>& x) {
          mu.sample(rng, x);
          const double scale = std::sqrt(vstar / model.potential(x));
          for (auto& xi : x) xi *= scale;
        },
        ntraj, mix_seed(ctx.cfg.seed, 400), ctx.threads, 12,
        [](const TrajectoryRecord& rec, std::span<double> o) {
          std::size_t d = 0;
          for (std::size_t e = 0; e < rec.integrals.size(); ++e) {
            const double s = rec.integrals[e][0];
            o[d++] = s;
            o[d++] = s * s;
            o[d++] = s * s * s;
            o[d++] = s * s * s * s;
          }
        });

    std::vector<MomentSummary> sums;
    for (std::size_t e = 0; e < spec.epochs.size(); ++e) {
      const double rt = std::sqrt(spec.epochs[e]);
      // raw moments of z = S_T / sqrt(T) from raw moments of S_T
      sums.push_back(standardized_moments(
          stats.mean[4 * e] / rt, stats.mean[4 * e + 1] / (rt * rt),
          stats.mean[4 * e + 2] / (rt * rt * rt),
          stats.mean[4 * e + 3] / (rt * rt * rt * rt), ntraj));
    }

    bool flat = true;
    for (std::size_t i = 0; i < sums.size(); ++i)
      for (std::size_t j = i + 1; j < sums.size(); ++j)
        if (std::abs(sums[i].variance - sums[j].variance) >
            3.0 * (sums[i].se_variance + sums[j].se_variance))
          flat = false;
    // shape is a T -> infinity statement; gate it at the longest horizon,
    // where the 1/T fourth-cumulant transient has died down
    const auto& last = sums.back();
    const bool gauss =
        std::abs(last.skewness) <= 3.0 * last.se_skewness &&
        std::abs(last.excess_kurtosis) <= 3.0 * last.se_kurtosis;

    auto r = base_report(
        ctx, "clt.linear_functional",
        "on a fixed energy shell the normalized time integrals of a site "
        "coordinate have flat variance across horizons and Gaussian shape "
        "at the longest one",
        "pairwise variance gaps <= 3 SE over T in {10,20,50}; skewness and "
        "excess kurtosis within 3 SE of 0 at T = 50",
        11, true);
    for (std::size_t e = 0; e < sums.size(); ++e) {
      const std::string tl = num_label(spec.epochs[e]);
      r.measured.push_back({"var_T" + tl, sums[e].variance});
      r.measured.push_back({"se_var_T" + tl, sums[e].se_variance});
    }
    const std::string tlast = num_label(spec.epochs.back());
    r.measured.push_back({"skewness_T" + tlast, last.skewness});
    r.measured.push_back({"excess_kurtosis_T" + tlast, last.excess_kurtosis});
    r.measured.push_back({"ntraj", static_cast<double>(ntraj)});
    r.pass = flat && gauss;
    reports.push_back(r);

    // analytic level: the site autocovariance is (r/b) e^{-m s} with
    // m = dim b^2; conditioning on the mean shell keeps the same level
    // because E[x_0^2 | V = E V] equals the unconditional moment exactly
    const double m = b * b;
    auto rs = base_report(
        ctx, "clt.variance_level",
        "measured integral variances sit on the closed-form level from the "
        "exponential site autocovariance",
        "within 3 SE per horizon", 11, false);
    bool level_ok = true;
    for (std::size_t e = 0; e < sums.size(); ++e) {
      const double T = spec.epochs[e];
      const double pred =
          2.0 * (1.0 / b) / m * (1.0 - (1.0 - std::exp(-m * T)) / (m * T));
      const std::string tl = num_label(T);
      rs.measured.push_back({"pred_T" + tl, pred});
      rs.measured.push_back({"gap_T" + tl, sums[e].variance - pred});
      if (std::abs(sums[e].variance - pred) > 3.0 * sums[e].se_variance)
        level_ok = false;
    }
    rs.pass = level_ok;
    reports.push_back(rs);
  });

  guarded(ctx, out, "clt.conserved_mixture", [&](auto& reports) {
    const double b = 2.0;
    const int nsites = 16;
    Model model(TorusLattice(1, nsites), PrecisionStencil::diagonal(1, b));
    GaussianMeasure mu(model, 1.0);
    EnsembleSpec spec;
    spec.plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    spec.plan.order = ctx.order_or(SplitOrder::RandomPerm);
    spec.plan.dt = ctx.dt_or(0.05);
    spec.epochs = {50.0};
    spec.integral_sites = {0};
    const int ntraj = ctx.ntraj_or(10000);
    const auto stats = run_ensemble(
        model, spec,
        [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
        ntraj, mix_seed(ctx.cfg.seed, 402), ctx.threads, 4,
        [](const TrajectoryRecord& rec, std::span<double> o) {
          const double s = rec.integrals[0][0];
          o[0] = s;
          o[1] = s * s;
          o[2] = s * s * s;
          o[3] = s * s * s * s;
        });
    const double rt = std::sqrt(spec.epochs[0]);
    const auto sum = standardized_moments(
        stats.mean[0] / rt, stats.mean[1] / (rt * rt),
        stats.mean[2] / (rt * rt * rt), stats.mean[3] / (rt * rt * rt * rt),
        ntraj);

    // V ~ (r/2) chi^2_n for every stencil, and the per-shell asymptotic
    // variance is linear in V, so the limit law is a chi^2 scale mixture
    // with excess kurtosis 3 Var(V)/E[V]^2 = 6/n. The sampling error of
    // the kurtosis estimator under that mixture needs moments up to order
    // eight: E[W^k]/E[W]^k = prod_j (1 + 2j/n) for W proportional to V.
    const double pred = 6.0 / nsites;
    const double q2 = 1.0 + 2.0 / nsites;
    const double q3 = q2 * (1.0 + 4.0 / nsites);
    const double q4 = q3 * (1.0 + 6.0 / nsites);
    const double mu4 = 3.0 * q2, mu6 = 15.0 * q3, mu8 = 105.0 * q4;
    const double nvar = (mu8 - mu4 * mu4) + 4.0 * mu4 * mu4 * (mu4 - 1.0) -
                        4.0 * mu4 * (mu6 - mu4);
    const double se = std::sqrt(nvar / ntraj);

    auto r = base_report(
        ctx, "clt.conserved_mixture",
        "with the energy shell left free, the long-horizon integral law is "
        "a variance mixture across shells whose excess kurtosis floors at "
        "6/n instead of vanishing",
        "|excess kurtosis - 6/n| <= 3 delta-method SE at T = 50", 11, false);
    r.measured = {{"excess_kurtosis", sum.excess_kurtosis},
                  {"pred_floor", pred},
                  {"se_mixture", se},
                  {"ntraj", static_cast<double>(ntraj)}};
    r.pass = std::abs(sum.excess_kurtosis - pred) <= 3.0 * se;
    reports.push_back(r);
  });

  guarded(ctx, out, "clt.centred_square", [&](auto& reports) {
    const double b = std::numbers::sqrt2;
    Model model(TorusLattice(1, 16), PrecisionStencil::diagonal(1, b));
    GaussianMeasure mu(model, 1.0);
    EnsembleSpec spec;
    spec.plan.scheme = ctx.scheme_or(Scheme::SplitExact);
    spec.plan.order = ctx.order_or(SplitOrder::RandomPerm);
    spec.plan.dt = ctx.dt_or(0.05);
    spec.epochs = {10.0, 20.0, 50.0};
    spec.integral_sites = {0};
    spec.integral_powers = {2};
    const int ntraj = ctx.ntraj_or(10000);
    const double shift = 1.0 / b;  // E[x_0^2] = r/b
    const auto stats = run_ensemble(
        model, spec,
        [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
        ntraj, mix_seed(ctx.cfg.seed, 401), ctx.threads, 6,
        [&spec, shift](const TrajectoryRecord& rec, std::span<double> o) {
          std::size_t d = 0;
          for (std::size_t e = 0; e < rec.integrals.size(); ++e) {
            const double s = rec.integrals[e][0] - shift * spec.epochs[e];
            o[d++] = s;
            o[d++] = s * s;
          }
        });
    auto r = base_report(
        ctx, "clt.centred_square",
        "slower-mixing quadratic integrand: the variance growth is recorded "
        "for context, convergence is known to be slow here",
        "record only", 11, false);
    for (std::size_t e = 0; e < spec.epochs.size(); ++e) {
      const double T = spec.epochs[e];
      const double var =
          stats.mean[2 * e + 1] - stats.mean[2 * e] * stats.mean[2 * e];
      r.measured.push_back({"var_over_T_T" + num_label(T), var / T});
    }
    r.pass = true;
    reports.push_back(r);
  });

  guarded(ctx, out, "clt.degenerate_zero", [&](auto& reports) {
    const auto s = standardized_moments(0.0, 0.0, 0.0, 0.0, 100);
    auto r = base_report(
        ctx, "clt.degenerate_zero",
        "the identically-zero integrand yields exactly zero statistics "
        "instead of a divide-by-zero normalization",
        "all central moments exactly 0", 0, true);
    r.measured = {{"variance", s.variance},
                  {"skewness", s.skewness},
                  {"excess_kurtosis", s.excess_kurtosis}};
    r.note = s.variance == 0.0 ? "degenerate" : "";
    r.pass =
        s.variance == 0.0 && s.skewness == 0.0 && s.excess_kurtosis == 0.0;
    reports.push_back(r);
  });

  return out;
}

std::vector<std::string> suite_names() {
  return {"conservation", "balance", "decay", "gap",
          "nash",         "liggett", "beta",  "clt",
          "all"};
}

std::vector<CheckReport> run_suite(const std::string& suite,
                                   const CheckContext& ctx) {
  if (suite == "conservation") return check_conservation(ctx);
  if (suite == "balance") return check_balance(ctx);
  if (suite == "decay") return check_decay(ctx);
  if (suite == "gap") return check_gap(ctx);
  if (suite == "nash") return check_nash(ctx);
  if (suite == "liggett") return check_liggett(ctx);
  if (suite == "beta") return check_beta(ctx);
  if (suite == "clt") return check_clt(ctx);
  if (suite == "all") {
    std::vector<CheckReport> out;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, ctx);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw ConfigError("unknown check suite '" + suite + "'");
}

}  // namespace rotor
