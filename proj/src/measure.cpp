#include "rotorlattice/measure.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "rotorlattice/detail/dft.hpp"
#include "rotorlattice/errors.hpp"
#include "rotorlattice/symbolic.hpp"

namespace rotor {

GaussianMeasure::GaussianMeasure(const Model& model, double r)
    : model_(&model), r_(r) {
  if (!(r > 0.0)) throw ConfigError("temperature r must be positive");
  const auto& lat = model.lattice();
  const auto& sten = model.stencil();
  diagonal_ = sten.is_diagonal();
  if (diagonal_) {
    diag_var_ = r_ / sten.diagonal_coeff();
    return;
  }
  const std::vector<double> symbol = sten.validated_symbol(lat);
  const int n = lat.num_sites();
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  // green row: inverse transform of 1/symbol
  for (int m = 0; m < n; ++m) buf[m] = 1.0 / symbol[m];
  detail::dft_nd(buf, lat.dim(), lat.side(), /*inverse=*/true);
  green_row_.resize(n);
  cov_row_.resize(n);
  for (int s = 0; s < n; ++s) {
    green_row_[s] = buf[s].real();
    cov_row_[s] = r_ * green_row_[s];
  }
  // square-root row: inverse transform of sqrt(r/symbol)
  for (int m = 0; m < n; ++m) buf[m] = std::sqrt(r_ / symbol[m]);
  detail::dft_nd(buf, lat.dim(), lat.side(), /*inverse=*/true);
  sqrt_row_.resize(n);
  for (int s = 0; s < n; ++s) sqrt_row_[s] = buf[s].real();
}

double GaussianMeasure::cov(int i, int j) const {
  if (diagonal_) return i == j ? diag_var_ : 0.0;
  return cov_row_[static_cast<std::size_t>(
      model_->lattice().offset_site(i, j))];
}

void GaussianMeasure::sample(RngStream& rng, std::vector<double>& x) const {
  const auto& lat = model_->lattice();
  const int n = lat.num_sites();
  x.resize(static_cast<std::size_t>(n));
  if (diagonal_) {
    const double sd = std::sqrt(diag_var_);
    for (int i = 0; i < n; ++i) x[i] = sd * rng.normal();
    return;
  }
  std::vector<double> xi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xi[i] = rng.normal();
  // x = C^{1/2} xi via circulant convolution with the square-root row
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += sqrt_row_[static_cast<std::size_t>(lat.offset_site(j, i))] * xi[j];
    x[i] = acc;
  }
}

// mean-zero Gaussian moment by Wick pairing: pair v[0] with each v[k] and
// recurse on the remainder
double GaussianMeasure::moment(const std::int32_t* v, int d) const {
  if (d == 0) return 1.0;
  if (d % 2 == 1) return 0.0;
  if (d == 2) return cov(v[0], v[1]);
  double acc = 0.0;
  std::int32_t rest[8];
  for (int k = 1; k < d; ++k) {
    const double c = cov(v[0], v[k]);
    if (c == 0.0) continue;
    int w = 0;
    for (int t = 1; t < d; ++t)
      if (t != k) rest[w++] = v[t];
    acc += c * moment(rest, d - 2);
  }
  return acc;
}

double GaussianMeasure::wick_expect(const Polynomial& f) const {
  if (f.degree() > 8)
    throw UnsupportedDegree("Gaussian moments implemented up to degree 8");
  double acc = 0.0;
  for (const auto& m : f.terms()) acc += m.coeff * moment(m.v.data(), m.deg);
  return acc;
}

double GaussianMeasure::expect_product(const Polynomial& f,
                                       const Polynomial& g) const {
  return wick_expect(f * g);
}

double GaussianMeasure::variance(const Polynomial& f) const {
  const double mean = wick_expect(f);
  return wick_expect(f * f) - mean * mean;
}

double GaussianMeasure::dirichlet_form(const Polynomial& f,
                                       const Polynomial& g) const {
  const auto& lat = model_->lattice();
  double acc = 0.0;
  for (int i = 0; i < lat.num_sites(); ++i) {
    for (int k = 0; k < lat.dim(); ++k) {
      const Edge e{i, lat.shift(i, k, 1)};
      const Polynomial xf = field_apply_poly(*model_, e, f);
      if (xf.zero()) continue;
      const Polynomial xg = field_apply_poly(*model_, e, g);
      if (xg.zero()) continue;
      acc += wick_expect(xf * xg);
    }
  }
  return 0.5 * acc;
}

double GaussianMeasure::seminorm_A(const Polynomial& f) const {
  double acc = 0.0;
  for (int s : f.support()) {
    const Polynomial d = f.derivative(s);
    acc += wick_expect(d * d);
  }
  return std::sqrt(acc);
}

double GaussianMeasure::seminorm_B(const Polynomial& f) const {
  double acc = 0.0;
  for (int s : f.support()) {
    const Polynomial d = f.derivative(s);
    acc += std::sqrt(wick_expect(d * d));
  }
  return acc;
}

double GaussianMeasure::sobolev_inner(const Polynomial& f,
                                      const Polynomial& g) const {
  const auto& lat = model_->lattice();
  double acc = wick_expect(f * g);
  const auto fs = f.support();
  const auto gs = g.support();
  for (int i : fs) {
    const Polynomial df = f.derivative(i);
    for (int j : gs) {
      const double green =
          diagonal_ ? (i == j ? 1.0 / model_->stencil().diagonal_coeff() : 0.0)
                    : green_row_[static_cast<std::size_t>(
                          lat.offset_site(i, j))];
      if (green == 0.0) continue;
      acc += green * wick_expect(df * g.derivative(j));
    }
  }
  return acc;
}

std::vector<double> GaussianMeasure::dense_covariance_oracle() const {
  const auto& lat = model_->lattice();
  const int n = lat.num_sites();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& entry : model_->stencil().entries())
    for (int s = 0; s < n; ++s)
      m(s, lat.shift(s, entry.offset)) += entry.coeff;
  const Eigen::MatrixXd c =
      r_ * m.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
  std::vector<double> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = c(i, j);
  return out;
}

}  // namespace rotor
