#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "rotorlattice/analysis.hpp"
#include "rotorlattice/oracle.hpp"
#include "rotorlattice/symbolic.hpp"

using namespace rotor;

namespace {
Polynomial x(int i) { return Polynomial::site(i); }

Model diag_model(int L, double b) {
  return Model(TorusLattice(1, L), PrecisionStencil::diagonal(1, b));
}
}  // namespace

TEST_CASE("linear fit recovers exact lines") {
  const std::array<double, 5> xs{1, 2, 3, 5, 8};
  std::array<double, 5> ys{};
  for (int i = 0; i < 5; ++i) ys[i] = 2.0 + 3.0 * xs[i];
  const auto fit = fit_linear(xs, ys);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("power law and exponential fits recover their parameters") {
  std::array<double, 6> ts{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::array<double, 6> pow{}, expo{};
  for (int i = 0; i < 6; ++i) {
    pow[i] = 5.0 * std::pow(ts[i], -1.5);
    expo[i] = 2.0 * std::exp(-0.7 * ts[i]);
  }
  const auto pf = fit_power_law(ts, pow);
  CHECK(pf.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(std::exp(pf.intercept) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(pf.r2 == doctest::Approx(1.0).epsilon(1e-12));

  const auto ef = fit_exponential(ts, expo);
  CHECK(ef.slope == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(std::exp(ef.intercept) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ef.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decay classification separates the two pure laws") {
  std::vector<double> ts;
  for (int i = 0; i < 13; ++i) ts.push_back(1.0 + 3.0 * i);
  std::vector<double> pow, expo;
  for (double t : ts) {
    pow.push_back(3.0 * std::pow(t, -0.5));
    expo.push_back(3.0 * std::exp(-0.8 * t));
  }
  const auto cp = classify_decay(ts, pow);
  CHECK(cp.cls == DecayClass::Polynomial);
  CHECK(cp.poly.slope == doctest::Approx(-0.5).epsilon(1e-10));

  const auto ce = classify_decay(ts, expo);
  CHECK(ce.cls == DecayClass::Exponential);
  CHECK(ce.expo.slope == doctest::Approx(-0.8).epsilon(1e-10));

  // on a narrow window both laws fit, the r2 gap collapses, and the
  // classification refuses to choose
  std::vector<double> narrow_t, narrow_y;
  for (int i = 0; i < 13; ++i) {
    const double t = 10.0 + 0.01 * i;
    narrow_t.push_back(t);
    narrow_y.push_back(std::exp(-0.3 * t));
  }
  CHECK(classify_decay(narrow_t, narrow_y).cls == DecayClass::Crossover);
}

TEST_CASE("variance curve matches the heat kernel closed form") {
  // Var(P_t x0^2) = 2 (r/b)^2 q_{2 b^2 t}(0)^N without friction,
  // times e^{-4 beta t} with it
  const int L = 16;
  const double b = 1.3, r = 0.7;
  const auto model = diag_model(L, b);
  GaussianMeasure mu(model, r);
  const auto f = x(0) * x(0);
  const std::array<double, 4> times{0.0, 0.5, 2.0, 10.0};

  for (double beta : {0.0, 0.25}) {
    const auto curve = variance_curve(model, mu, f, times, beta);
    REQUIRE(curve.size() == 4);
    for (int k = 0; k < 4; ++k) {
      const double t = times[k];
      const double q0 = heat_kernel_axis_torus(L, 2.0 * b * b * t)[0];
      const double want =
          2.0 * (r / b) * (r / b) * q0 * std::exp(-4.0 * beta * t);
      CHECK(curve[k] == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("box observables sum squares over the box") {
  TorusLattice lat(2, 6);
  const auto f = box_sum_squares(lat, 2);
  CHECK(f.degree() == 2);
  CHECK(f.support().size() == 4);  // sites (0,0),(1,0),(0,1),(1,1)
  std::vector<double> ones(36, 1.0);
  CHECK(f.eval(ones) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("gap ratios fall exactly like one over ell in one dimension") {
  // boundary bonds contribute 4 r^2 to the dirichlet form; the variance is
  // 2 (r/b)^2 ell, so ratio * ell = 2 b^2 independent of ell
  const double b = 1.4;
  const auto model = diag_model(32, b);
  GaussianMeasure mu(model, 0.8);
  const std::array<int, 5> ells{2, 3, 4, 8, 16};
  const auto pts = no_gap_ratios(model, mu, ells);
  REQUIRE(pts.size() == 5);
  for (const auto& p : pts) {
    CHECK(p.ratio == doctest::Approx(p.dirichlet / p.variance).epsilon(1e-13));
    CHECK(p.ratio * p.ell == doctest::Approx(2.0 * b * b).epsilon(1e-10));
  }
  // and the log-log slope of the ratio is exactly -1
  std::vector<double> ls, rs;
  for (const auto& p : pts) {
    ls.push_back(static_cast<double>(p.ell));
    rs.push_back(p.ratio);
  }
  const auto fit = fit_power_law(ls, rs);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("inequality audit reproduces hand-computed constants") {
  // f = x0^2 on the on-site chain: variance 2 (r/b)^2, dirichlet 4 r^2,
  // both seminorms 2 sqrt(r/b), pairing 8 b r; then c2 = 1/(2 b^2) and
  // c1 = r^{4/5} / 2 at b = 1
  const double r = 1.0;
  const auto model = diag_model(16, 1.0);
  GaussianMeasure mu(model, r);
  const auto audit = liggett_nash_audit(model, mu, x(0) * x(0));
  CHECK_FALSE(audit.degenerate);
  CHECK(audit.variance == doctest::Approx(2.0 * r * r).epsilon(1e-12));
  CHECK(audit.dirichlet == doctest::Approx(4.0 * r * r).epsilon(1e-12));
  CHECK(audit.seminorm_a == doctest::Approx(2.0 * std::sqrt(r)).epsilon(1e-12));
  CHECK(audit.seminorm_b == doctest::Approx(2.0 * std::sqrt(r)).epsilon(1e-12));
  CHECK(audit.grad_pairing == doctest::Approx(8.0 * r).epsilon(1e-12));
  CHECK(audit.c2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(audit.c1 == doctest::Approx(0.5 * std::pow(r, 0.8)).epsilon(1e-12));
}

TEST_CASE("inequality audit flags conserved observables as degenerate") {
  const auto model = diag_model(8, 1.0);
  GaussianMeasure mu(model, 1.0);
  const auto audit = liggett_nash_audit(model, mu, potential_poly(model));
  CHECK(audit.degenerate);
  CHECK(audit.dirichlet == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(audit.c1 == 0.0);
  CHECK(audit.c2 == 0.0);
}

TEST_CASE("phase scan classifies zero and strong friction correctly") {
  const auto model = diag_model(24, 1.0);
  const std::array<double, 2> betas{0.0, 0.5};
  const auto pts = phase_transition_scan(model, 1.0, betas, 20.0);
  REQUIRE(pts.size() == 2);

  CHECK(pts[0].decay.cls == DecayClass::Polynomial);
  CHECK(pts[0].decay.poly.slope == doctest::Approx(-0.5).epsilon(0.3));

  CHECK(pts[1].decay.cls == DecayClass::Exponential);
  // rate 4 beta + the polynomial envelope's effective contribution
  CHECK(pts[1].decay.expo.slope < -1.5);
  CHECK(pts[1].times.size() == pts[1].values.size());
  CHECK(pts[1].times.front() >= 1.0);
}

TEST_CASE("detailed balance statistic vanishes identically for equal pairs") {
  const auto model = diag_model(8, 1.0);
  GaussianMeasure mu(model, 1.0);
  StepPlan plan;
  plan.scheme = Scheme::SplitExact;
  plan.dt = 0.05;
  const auto f = x(0) * x(0);
  const auto res =
      detailed_balance_test(model, mu, f, f, 0.25, plan, 500, 11, 1);
  CHECK(res.diff == 0.0);
  CHECK(res.z == 0.0);
}

TEST_CASE("detailed balance holds for the palindromic splitting") {
  const auto model = diag_model(8, 1.0);
  GaussianMeasure mu(model, 1.0);
  StepPlan plan;
  plan.scheme = Scheme::SplitExact;
  plan.order = SplitOrder::Strang;
  plan.dt = 0.05;
  const auto res = detailed_balance_test(model, mu, x(0), x(0) * x(0) * x(1),
                                         0.5, plan, 20000, 9001, 1);
  CHECK(res.se > 0.0);
  CHECK(std::abs(res.z) < 5.0);
  CHECK(res.mean_fg - res.mean_gf == doctest::Approx(res.diff).epsilon(1e-12));
}

TEST_CASE("standardized moments recover location and scale") {
  // raw moments of a shifted, scaled gaussian: mean 2, variance 9
  // m1 = 2, m2 = 13, m3 = e[z^3] = mu^3+3 mu s^2 = 62, m4 = 318 + ...
  const double mu_ = 2.0, s2 = 9.0;
  const double m1 = mu_;
  const double m2 = s2 + mu_ * mu_;
  const double m3 = mu_ * mu_ * mu_ + 3.0 * mu_ * s2;
  const double m4 = mu_ * mu_ * mu_ * mu_ + 6.0 * mu_ * mu_ * s2 + 3 * s2 * s2;
  const auto s = standardized_moments(m1, m2, m3, m4, 10000);
  CHECK(s.mean == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.variance == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(s.skewness == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.excess_kurtosis == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.se_mean == doctest::Approx(std::sqrt(9.0 / 10000)).epsilon(1e-12));
  CHECK(s.se_skewness == doctest::Approx(std::sqrt(6.0 / 10000)).epsilon(1e-12));
  CHECK(s.se_kurtosis ==
        doctest::Approx(std::sqrt(24.0 / 10000)).epsilon(1e-12));
  CHECK(s.se_variance > 0.0);

  // degenerate input short-circuits to zeros
  const auto z = standardized_moments(0.0, 0.0, 0.0, 0.0, 50);
  CHECK(z.variance == 0.0);
  CHECK(z.skewness == 0.0);
  CHECK(z.excess_kurtosis == 0.0);
}
