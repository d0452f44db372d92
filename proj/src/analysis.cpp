#include "rotorlattice/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "rotorlattice/errors.hpp"
#include "rotorlattice/oracle.hpp"
#include "rotorlattice/symbolic.hpp"

namespace rotor {

FitResult fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("fit arrays differ in length");
  const auto n = x.size();
  if (n < 2) throw ConfigError("linear fit needs at least 2 points");
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - xm;
    const double dy = y[k] - ym;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("linear fit abscissae are all equal");
  FitResult out;
  out.slope = sxy / sxx;
  out.intercept = ym - out.slope * xm;
  // flat data fitted exactly by a flat line counts as a perfect fit
  out.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return out;
}

namespace {

void check_positive(std::span<const double> v, const char* what) {
  for (double u : v)
    if (!(u > 0.0)) throw ConfigError(std::string(what) + " must be positive");
}

std::vector<double> log_of(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [](double u) { return std::log(u); });
  return out;
}

}  // namespace

FitResult fit_power_law(std::span<const double> t, std::span<const double> y) {
  if (t.size() < 5) throw ConfigError("power-law fit needs at least 5 points");
  check_positive(t, "power-law fit times");
  check_positive(y, "power-law fit values");
  return fit_linear(log_of(t), log_of(y));
}

FitResult fit_exponential(std::span<const double> t,
                          std::span<const double> y) {
  if (t.size() < 5)
    throw ConfigError("exponential fit needs at least 5 points");
  check_positive(y, "exponential fit values");
  return fit_linear(t, log_of(y));
}

std::string to_string(DecayClass cls) {
  switch (cls) {
    case DecayClass::Polynomial: return "polynomial";
    case DecayClass::Exponential: return "exponential";
    case DecayClass::Crossover: return "crossover";
  }
  return "crossover";
}

DecayClassification classify_decay(std::span<const double> t,
                                   std::span<const double> y, double margin) {
  DecayClassification out;
  out.poly = fit_power_law(t, y);
  out.expo = fit_exponential(t, y);
  const double gap = out.poly.r2 - out.expo.r2;
  if (gap >= margin)
    out.cls = DecayClass::Polynomial;
  else if (gap <= -margin)
    out.cls = DecayClass::Exponential;
  else
    out.cls = DecayClass::Crossover;
  return out;
}

std::vector<double> variance_curve(const Model& model,
                                   const GaussianMeasure& mu,
                                   const Polynomial& f,
                                   std::span<const double> times,
                                   double beta) {
  const auto q0 = quadratic_from_polynomial(model.lattice().num_sites(), f);
  const auto evolved = quadratic_evolve_grid(model, q0, beta, times);
  std::vector<double> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    out[k] = quadratic_variance(mu, evolved[k].form);
  return out;
}

std::vector<PhasePoint> phase_transition_scan(const Model& model, double r,
                                              std::span<const double> betas,
                                              double horizon, int points) {
  if (!model.stencil().is_diagonal())
    throw ConfigError("variance decay scan needs a diagonal interaction");
  if (points < 5) throw ConfigError("scan needs at least 5 grid points");
  if (!(horizon > 0.0)) throw ConfigError("scan horizon must be positive");
  const double b = model.stencil().diagonal_coeff();
  const double side = model.lattice().side();
  const double wrap = (side / 6.0) * (side / 6.0) / (b * b);
  const double lo = std::max(1.0, horizon / 16.0);
  const double hi = std::min(horizon, wrap);
  if (!(lo < hi))
    throw ConfigError(
        "scan window is empty: need horizon above 16 and below the "
        "wrap-around limit (L/6)^2/b^2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = hi / lo;
  for (int k = 0; k < points; ++k)
    grid[static_cast<std::size_t>(k)] =
        lo * std::pow(ratio, static_cast<double>(k) / (points - 1));
  grid.back() = hi;

  // friction acts on quadratics as the exact scalar e^{-2 beta t}, so one
  // frictionless evolution serves every beta
  const GaussianMeasure mu(model, r);
  const Polynomial f = Polynomial::site(0) * Polynomial::site(0);
  const auto base = variance_curve(model, mu, f, grid, 0.0);

  std::vector<PhasePoint> out;
  out.reserve(betas.size());
  for (double beta : betas) {
    if (beta < 0.0) throw ConfigError("friction strength must be nonnegative");
    PhasePoint p;
    p.beta = beta;
    p.times = grid;
    p.values.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      p.values[k] = base[k] * std::exp(-4.0 * beta * grid[k]);
    p.decay = classify_decay(p.times, p.values);
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial box_sum_squares(const TorusLattice& lat, int ell) {
  if (ell < 1 || ell > lat.side())
    throw ConfigError("box side must lie in [1, L]");
  Polynomial f;
  std::vector<int> c(static_cast<std::size_t>(lat.dim()), 0);
  for (;;) {
    const int s = lat.site(c);
    f += Polynomial::site(s) * Polynomial::site(s);
    int ax = 0;
    while (ax < lat.dim() && ++c[static_cast<std::size_t>(ax)] == ell) {
      c[static_cast<std::size_t>(ax)] = 0;
      ++ax;
    }
    if (ax == lat.dim()) break;
  }
  return f;
}

std::vector<GapRatioPoint> no_gap_ratios(const Model& model,
                                         const GaussianMeasure& mu,
                                         std::span<const int> ells) {
  std::vector<GapRatioPoint> out;
  out.reserve(ells.size());
  for (int ell : ells) {
    const Polynomial f = box_sum_squares(model.lattice(), ell);
    GapRatioPoint p;
    p.ell = ell;
    p.dirichlet = mu.dirichlet_form(f, f);
    p.variance = mu.variance(f);
    if (!(p.variance > 0.0))
      throw ConfigError("box observable has zero variance");
    p.ratio = p.dirichlet / p.variance;
    out.push_back(p);
  }
  return out;
}

InequalityAudit liggett_nash_audit(const Model& model,
                                   const GaussianMeasure& mu,
                                   const Polynomial& f) {
  InequalityAudit a;
  a.variance = mu.variance(f);
  a.dirichlet = mu.dirichlet_form(f, f);
  a.seminorm_a = mu.seminorm_A(f);
  a.seminorm_b = mu.seminorm_B(f);
  Polynomial neg_lf = generator_apply_poly(model, f);
  neg_lf *= -1.0;
  for (int i : f.support())
    a.grad_pairing += mu.expect_product(f.derivative(i), neg_lf.derivative(i));
  a.degenerate = !(a.variance > 0.0) || !(a.dirichlet > 0.0) ||
                 !(a.seminorm_a > 0.0) || !(a.seminorm_b > 0.0) ||
                 !(a.grad_pairing > 0.0);
  if (a.degenerate) return a;
  const double dim = model.lattice().dim();
  const double e_d = dim / (dim + 4.0);
  const double e_ab = 4.0 / (dim + 4.0);
  a.c1 = a.variance / (std::pow(a.dirichlet, e_d) *
                       std::pow(a.seminorm_a * a.seminorm_b, e_ab));
  a.c2 = std::pow(a.seminorm_a, 2.0 + 4.0 / dim) /
         (std::pow(a.seminorm_b, 4.0 / dim) * a.grad_pairing);
  return a;
}

BalanceResult detailed_balance_test(const Model& model,
                                    const GaussianMeasure& mu,
                                    const Polynomial& f, const Polynomial& g,
                                    double t, const StepPlan& plan, int ntraj,
                                    std::uint64_t seed, int threads) {
  if (t < 0.0) throw ConfigError("balance test lag must be nonnegative");
  EnsembleSpec spec;
  spec.plan = plan;
  spec.epochs = (t == 0.0) ? std::vector<double>{0.0}
                           : std::vector<double>{0.0, t};
  const std::size_t last = spec.epochs.size() - 1;
  const auto stats = run_ensemble(
      model, spec,
      [&mu](RngStream& rng, std::vector<double>& x) { mu.sample(rng, x); },
      ntraj, seed, threads, 3,
      [&f, &g, last](const TrajectoryRecord& rec, std::span<double> out) {
        const double u = f.eval(rec.snapshots[0]) * g.eval(rec.snapshots[last]);
        const double v = g.eval(rec.snapshots[0]) * f.eval(rec.snapshots[last]);
        out[0] = u;
        out[1] = v;
        out[2] = u - v;
      });
  BalanceResult out;
  out.mean_fg = stats.mean[0];
  out.mean_gf = stats.mean[1];
  out.diff = stats.mean[2];
  out.se = std::sqrt(stats.var[2] / static_cast<double>(stats.count));
  out.z = (out.diff == 0.0) ? 0.0 : out.diff / out.se;
  return out;
}

MomentSummary standardized_moments(double m1, double m2, double m3, double m4,
                                   std::int64_t n) {
  if (n < 2) throw ConfigError("moment summary needs at least 2 samples");
  MomentSummary s;
  s.mean = m1;
  const double c2 = m2 - m1 * m1;
  s.variance = c2;
  const double nn = static_cast<double>(n);
  if (c2 > 0.0) {
    const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
    const double c4 =
        m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    s.skewness = c3 / std::pow(c2, 1.5);
    s.excess_kurtosis = c4 / (c2 * c2) - 3.0;
    s.se_mean = std::sqrt(c2 / nn);
    // Var(sample variance) ~ (mu4 - c2^2)/n with mu4 = c4 + 3 c2^2
    s.se_variance = std::sqrt(std::max(0.0, c4 + 2.0 * c2 * c2) / nn);
  }
  s.se_skewness = std::sqrt(6.0 / nn);
  s.se_kurtosis = std::sqrt(24.0 / nn);
  return s;
}

}  // namespace rotor
