#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rotorlattice/measure.hpp"
#include "rotorlattice/model.hpp"
#include "rotorlattice/polynomial.hpp"

namespace rotor {

// Closed-form references for the diagonal model, against which the Monte
// Carlo side is judged. Squares of coordinates evolve by the discrete heat
// equation with diffusivity b^2, so everything here reduces to heat kernels
// and linear algebra on quadratic forms; no sampling is involved.

// transition kernel of e^{t lap} on Z^N evaluated at a lattice offset:
// prod_n e^{-2t} I_{|k_n|}(2t)
double heat_kernel_infinite(std::span<const int> offset, double t);

// one axis of the torus kernel: q_t(d) = (1/L) sum_m e^{t lambda_m}
// cos(2 pi m d / L), lambda_m = -2(1 - cos(2 pi m / L)); d = 0..L-1
std::vector<double> heat_kernel_axis_torus(int side, double t);

// full torus kernel as a per-site field (product over axes)
std::vector<double> heat_kernel_torus(const TorusLattice& lat, double t);

// E_x[Y_k(t)^2] for the diagonal model: e^{-2 beta t} times the torus heat
// kernel at time b^2 t convolved with the squared start field.
// Rejects non-diagonal stencils: the closed form needs M = b Id.
std::vector<double> second_moment_field(const Model& model, double beta,
                                        double t, std::span<const double> x0);

// dense symmetric matrix of a purely quadratic observable x^T Q x
class QuadraticForm {
 public:
  explicit QuadraticForm(int n);
  int size() const { return n_; }
  double at(int i, int j) const { return a_[idx(i, j)]; }
  void add(int i, int j, double v);  // symmetric update
  double eval(std::span<const double> x) const;
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_;
  std::vector<double> a_;  // row-major, symmetric
};

// Q <-> polynomial conversions; the polynomial must be homogeneous degree 2
QuadraticForm quadratic_from_polynomial(int n, const Polynomial& f);
Polynomial quadratic_to_polynomial(const QuadraticForm& q);

// exact action of the interchange generator on quadratic forms: for each
// bond, H_e(Q) = m_i Q_j^T + Q_j m_i^T - m_j Q_i^T - Q_i m_j^T (rows of M
// and columns of Q); the generator is (1/2) sum_bonds H_e(H_e(Q))
class QuadraticGenerator {
 public:
  explicit QuadraticGenerator(const Model& model);
  int size() const;
  void apply(const std::vector<double>& q, std::vector<double>& out) const;

 private:
  const Model* model_;
  std::vector<std::vector<std::pair<int, double>>> mrows_;
};

struct EvolveResult {
  QuadraticForm form;
  double step_error;  // max-abs gap to the halved-step rerun
  int steps;
};

// P_t on a quadratic observable by RK4 with step doubling until the result
// is within tol of a halved-step rerun; friction enters as the exact factor
// e^{-2 beta t} since the dilation part commutes with the interchange part
EvolveResult quadratic_evolve(const Model& model, const QuadraticForm& q0,
                              double beta, double t, double tol = 1e-10);

// same, evaluated along an ascending time grid in one sweep
std::vector<EvolveResult> quadratic_evolve_grid(const Model& model,
                                                const QuadraticForm& q0,
                                                double beta,
                                                std::span<const double> times,
                                                double tol = 1e-10);

// Wick functionals of a quadratic form under the Gaussian measure
double quadratic_mean(const GaussianMeasure& mu, const QuadraticForm& q);
double quadratic_variance(const GaussianMeasure& mu, const QuadraticForm& q);
// E[(d_i x^T Q x)^2] = 4 (Q C Q)_{ii}; max over i
double quadratic_gradient_sq_max(const GaussianMeasure& mu,
                                 const QuadraticForm& q);
double quadratic_seminorm_sq_sum(const GaussianMeasure& mu,
                                 const QuadraticForm& q);  // sum_i 4(QCQ)_ii

// envelope of the gradient decay: g(t) = sqrt(t) e^{-2t} I_0(2t).
// peak: the finite-t supremum (near t = 0.4, about 0.3315/b).
// plateau: the t -> infinity limit, 1/(2 b sqrt(pi)), found by scanning g
// upward in t until stable to 1e-8. The plateau is the tighter constant used
// in the bound check below; the peak is what the Duhamel argument yields.
double gradient_envelope_peak(double b);
double gradient_envelope_plateau(double b);

struct GradientBoundPoint {
  double t;
  double lhs;  // max_i E[(d_i P_t f)^2]
  double rhs;  // (A^N / t^{N/2}) * sum_i E[(d_i f)^2]
};

// evaluates both sides of the gradient decay bound for a quadratic f along
// a time grid, with A = gradient_envelope_plateau(b); diagonal model only
std::vector<GradientBoundPoint> gradient_bound_check(
    const Model& model, const GaussianMeasure& mu, const QuadraticForm& f,
    std::span<const double> t_grid);

}  // namespace rotor
