#pragma once

#include <cstdint>
#include <vector>

#include "rotorlattice/model.hpp"
#include "rotorlattice/polynomial.hpp"
#include "rotorlattice/rng.hpp"

namespace rotor {

// Mean-zero Gaussian field with covariance r * M^{-1}. M is circulant on the
// torus, so the covariance and its square root are single rows indexed by
// site offset, obtained from the reciprocal of the stencil symbol.
//
// Moments of polynomial observables are computed exactly by Wick pairing
// (even degree <= 8), which is what makes this class usable as an oracle for
// stationary expectations, Dirichlet forms and gradient seminorms.
class GaussianMeasure {
 public:
  GaussianMeasure(const Model& model, double r);

  double r() const { return r_; }
  const Model& model() const { return *model_; }

  // covariance of x_i and x_j
  double cov(int i, int j) const;
  bool diagonal_covariance() const { return diagonal_; }
  // covariance against site 0, indexed by offset site id
  const std::vector<double>& covariance_row() const { return cov_row_; }

  // draw one field configuration; consumes num_sites() normals in site order
  void sample(RngStream& rng, std::vector<double>& x) const;

  // exact Gaussian expectation of a polynomial, degree <= 8
  double wick_expect(const Polynomial& f) const;
  double expect_product(const Polynomial& f, const Polynomial& g) const;
  double variance(const Polynomial& f) const;

  // (1/2) sum over unordered bonds of E[X_e f * X_e g]
  double dirichlet_form(const Polynomial& f, const Polynomial& g) const;

  // sqrt(sum_i E[(d_i f)^2]) and sum_i sqrt(E[(d_i f)^2])
  double seminorm_A(const Polynomial& f) const;
  double seminorm_B(const Polynomial& f) const;

  // E[f g] + sum_ij G_ij E[d_i f d_j g] with G = M^{-1} (no factor of r)
  double sobolev_inner(const Polynomial& f, const Polynomial& g) const;

  // independent covariance computation: dense M assembled entry by entry and
  // inverted by LDLT; returns row-major n x n
  std::vector<double> dense_covariance_oracle() const;

 private:
  double moment(const std::int32_t* v, int d) const;

  const Model* model_;
  double r_;
  bool diagonal_;
  double diag_var_ = 0.0;           // r / c(0) when the stencil is diagonal
  std::vector<double> green_row_;   // M^{-1} row 0 by offset id
  std::vector<double> cov_row_;     // r * green_row_
  std::vector<double> sqrt_row_;    // C^{1/2} row 0 by offset id
};

}  // namespace rotor
