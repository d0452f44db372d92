#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rotorlattice/integrators.hpp"
#include "rotorlattice/measure.hpp"
#include "rotorlattice/model.hpp"
#include "rotorlattice/polynomial.hpp"

namespace rotor {

// Curve fits, decay classification, spectral-gap ratios, functional
// inequality audits and the sampled reversibility test. Everything except
// detailed_balance_test is deterministic: curves come from the quadratic-form
// evolution and moments from Wick calculus, so fitted exponents and rates are
// properties of the dynamics, not of a sampler.

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// least squares y = intercept + slope x; needs >= 2 distinct abscissae
FitResult fit_linear(std::span<const double> x, std::span<const double> y);

// y = C t^slope in ln-ln coordinates; needs >= 5 points with t, y > 0
FitResult fit_power_law(std::span<const double> t, std::span<const double> y);

// y = C e^{slope t} in ln-lin coordinates (decay means slope < 0);
// needs >= 5 points with y > 0
FitResult fit_exponential(std::span<const double> t,
                          std::span<const double> y);

enum class DecayClass { Polynomial, Exponential, Crossover };
std::string to_string(DecayClass cls);

struct DecayClassification {
  DecayClass cls = DecayClass::Crossover;
  FitResult poly;  // ln y against ln t
  FitResult expo;  // ln y against t
};

// Classify a positive decay curve by whichever of the two fits has the
// larger r^2; if the r^2 gap is below margin the curve is a crossover.
DecayClassification classify_decay(std::span<const double> t,
                                   std::span<const double> y,
                                   double margin = 0.05);

// Exact Var_mu(P_t f) along a time grid for a purely quadratic observable,
// friction included as e^{-4 beta t}
std::vector<double> variance_curve(const Model& model,
                                   const GaussianMeasure& mu,
                                   const Polynomial& f,
                                   std::span<const double> times, double beta);

struct PhasePoint {
  double beta = 0.0;
  DecayClassification decay;
  std::vector<double> times;
  std::vector<double> values;  // Var_mu(P_t x_0^2) on the fit window
};

// Variance decay of x_0^2 classified per friction strength. The fit window
// is log-spaced on [T/16, T] clipped to t >= 1 (early transients) and
// t <= (L/6)^2 / b^2 (torus wrap-around); the interchange part is evolved
// once and friction applied as an exact factor. Diagonal interaction only.
std::vector<PhasePoint> phase_transition_scan(const Model& model, double r,
                                              std::span<const double> betas,
                                              double horizon, int points = 13);

// sum of x_i^2 over the axis-aligned box {0..ell-1}^N
Polynomial box_sum_squares(const TorusLattice& lat, int ell);

struct GapRatioPoint {
  int ell = 0;
  double dirichlet = 0.0;
  double variance = 0.0;
  double ratio = 0.0;  // dirichlet / variance
};

// Dirichlet-to-variance ratios of the box observables; a ratio falling like
// 1/ell rules out a volume-independent spectral gap
std::vector<GapRatioPoint> no_gap_ratios(const Model& model,
                                         const GaussianMeasure& mu,
                                         std::span<const int> ells);

struct InequalityAudit {
  bool degenerate = false;  // some factor vanished; constants left at 0
  double variance = 0.0;
  double dirichlet = 0.0;
  double seminorm_a = 0.0;    // sqrt(sum_i E[(d_i f)^2])
  double seminorm_b = 0.0;    // sum_i sqrt(E[(d_i f)^2])
  double grad_pairing = 0.0;  // sum_i E[d_i f d_i(-L f)]
  // variance <= c1 * dirichlet^{N/(N+4)} (seminorm_a seminorm_b)^{4/(N+4)}
  double c1 = 0.0;
  // seminorm_a^{2+4/N} <= c2 * seminorm_b^{4/N} * grad_pairing
  double c2 = 0.0;
};

// Exact ingredients of the variance-decay and Nash-type inequalities for one
// observable; the extracted constants are diagnostics, never pass/fail gates.
InequalityAudit liggett_nash_audit(const Model& model,
                                   const GaussianMeasure& mu,
                                   const Polynomial& f);

struct BalanceResult {
  double mean_fg = 0.0;  // sample mean of f(Y_0) g(Y_t)
  double mean_gf = 0.0;  // sample mean of g(Y_0) f(Y_t)
  double diff = 0.0;     // paired difference mean
  double se = 0.0;       // standard error of the paired difference
  double z = 0.0;        // diff / se; defined as 0 for identically zero diff
};

// Reversibility test in the stationary state: with Y_0 ~ mu the paired
// statistic f(Y_0) g(Y_t) - g(Y_0) f(Y_t) has mean zero exactly when the
// sampled transition kernel is mu-symmetric. Palindromic splitting is
// mu-symmetric at any dt, so its z-scores are pure noise.
BalanceResult detailed_balance_test(const Model& model,
                                    const GaussianMeasure& mu,
                                    const Polynomial& f, const Polynomial& g,
                                    double t, const StepPlan& plan, int ntraj,
                                    std::uint64_t seed, int threads);

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;  // sqrt((c4 + 2 c2^2)/n), distribution-free
  double se_skewness = 0.0;  // normal-theory sqrt(6/n)
  double se_kurtosis = 0.0;  // normal-theory sqrt(24/n)
};

// central moment summary from raw moment means m_k = mean of z^k
MomentSummary standardized_moments(double m1, double m2, double m3, double m4,
                                   std::int64_t n);

}  // namespace rotor
