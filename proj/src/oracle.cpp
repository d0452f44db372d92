#include "rotorlattice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rotorlattice/detail/bessel.hpp"
#include "rotorlattice/errors.hpp"

namespace rotor {

double heat_kernel_infinite(std::span<const int> offset, double t) {
  if (t < 0.0) throw std::domain_error("heat kernel needs t >= 0");
  double p = 1.0;
  for (int k : offset) p *= detail::bessel_i_scaled(std::abs(k), 2.0 * t);
  return p;
}

std::vector<double> heat_kernel_axis_torus(int side, double t) {
  const int l = side;
  std::vector<double> lam(static_cast<std::size_t>(l));
  for (int m = 0; m < l; ++m)
    lam[m] = -2.0 * (1.0 - std::cos(2.0 * std::numbers::pi * m / l));
  std::vector<double> q(static_cast<std::size_t>(l), 0.0);
  for (int d = 0; d < l; ++d) {
    double acc = 0.0;
    for (int m = 0; m < l; ++m)
      acc += std::exp(t * lam[m]) *
             std::cos(2.0 * std::numbers::pi * m * d / l);
    q[d] = acc / l;
  }
  return q;
}

std::vector<double> heat_kernel_torus(const TorusLattice& lat, double t) {
  const std::vector<double> q = heat_kernel_axis_torus(lat.side(), t);
  std::vector<double> out(static_cast<std::size_t>(lat.num_sites()));
  std::vector<int> c(static_cast<std::size_t>(lat.dim()));
  for (int s = 0; s < lat.num_sites(); ++s) {
    lat.coords(s, c);
    double p = 1.0;
    for (int n = 0; n < lat.dim(); ++n) p *= q[static_cast<std::size_t>(c[n])];
    out[s] = p;
  }
  return out;
}

std::vector<double> second_moment_field(const Model& model, double beta,
                                        double t, std::span<const double> x0) {
  const auto& lat = model.lattice();
  if (!model.stencil().is_diagonal())
    throw std::invalid_argument(
        "second moment closed form needs a diagonal stencil");
  if (static_cast<int>(x0.size()) != lat.num_sites())
    throw std::invalid_argument("start field size mismatch");
  const double b = model.stencil().diagonal_coeff();
  const std::vector<double> q = heat_kernel_axis_torus(lat.side(), b * b * t);
  std::vector<double> field(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) field[i] = x0[i] * x0[i];
  // separable circular convolution, one axis at a time
  std::vector<double> next(field.size());
  const int l = lat.side();
  for (int axis = 0; axis < lat.dim(); ++axis) {
    for (int s = 0; s < lat.num_sites(); ++s) {
      double acc = 0.0;
      for (int d = 0; d < l; ++d)
        acc += q[d] * field[static_cast<std::size_t>(lat.shift(s, axis, d))];
      next[static_cast<std::size_t>(s)] = acc;
    }
    std::swap(field, next);
  }
  const double damp = std::exp(-2.0 * beta * t);
  for (auto& v : field) v *= damp;
  return field;
}

QuadraticForm::QuadraticForm(int n)
    : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
  if (n < 1) throw std::invalid_argument("quadratic form needs n >= 1");
}

void QuadraticForm::add(int i, int j, double v) {
  if (i == j) {
    a_[idx(i, i)] += v;
  } else {
    a_[idx(i, j)] += 0.5 * v;
    a_[idx(j, i)] += 0.5 * v;
  }
}

double QuadraticForm::eval(std::span<const double> x) const {
  double acc = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += a_[idx(i, j)] * x[j];
    acc += x[i] * row;
  }
  return acc;
}

QuadraticForm quadratic_from_polynomial(int n, const Polynomial& f) {
  QuadraticForm q(n);
  for (const auto& m : f.terms()) {
    if (m.deg != 2)
      throw std::invalid_argument(
          "quadratic form conversion needs a homogeneous degree-2 polynomial");
    q.add(m.v[0], m.v[1], m.coeff);
  }
  return q;
}

Polynomial quadratic_to_polynomial(const QuadraticForm& q) {
  Polynomial f;
  const int n = q.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double c = (i == j) ? q.at(i, i) : 2.0 * q.at(i, j);
      if (c == 0.0) continue;
      const int sites[2] = {i, j};
      f += Polynomial::monomial(sites, c);
    }
  }
  return f;
}

QuadraticGenerator::QuadraticGenerator(const Model& model) : model_(&model) {
  const auto& lat = model.lattice();
  mrows_.resize(static_cast<std::size_t>(lat.num_sites()));
  for (int i = 0; i < lat.num_sites(); ++i)
    for (const auto& entry : model.stencil().entries())
      mrows_[i].emplace_back(lat.shift(i, entry.offset), entry.coeff);
}

int QuadraticGenerator::size() const { return model_->lattice().num_sites(); }

void QuadraticGenerator::apply(const std::vector<double>& q,
                               std::vector<double>& out) const {
  const auto& lat = model_->lattice();
  const int n = lat.num_sites();
  const std::size_t nn = static_cast<std::size_t>(n);
  out.assign(nn * nn, 0.0);
  std::vector<double> u(nn), v(nn);
  auto mat = [&](const std::vector<double>& a, int i, int j) {
    return a[static_cast<std::size_t>(i) * nn + j];
  };
  auto mrow_val = [&](int i, int j) {
    for (const auto& [col, c] : mrows_[i])
      if (col == j) return c;
    return 0.0;
  };
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < lat.dim(); ++k) {
      const int j = lat.shift(i, k, 1);
      const double mij = mrow_val(i, j);
      const double mii = mrow_val(i, i);
      const double mjj = mrow_val(j, j);
      const double qij = mat(q, i, j);
      const double qii = mat(q, i, i);
      const double qjj = mat(q, j, j);
      // K = H_e(q); only its columns at j and i are needed:
      // u = K e_j, v = K e_i
      for (int p = 0; p < n; ++p) {
        const double qpj = q[static_cast<std::size_t>(p) * nn + j];
        const double qpi = q[static_cast<std::size_t>(p) * nn + i];
        u[p] = mij * qpj - mjj * qpi;
        v[p] = mii * qpj - mij * qpi;
      }
      for (const auto& [col, c] : mrows_[i]) {
        u[col] += c * qjj;
        v[col] += c * qij;
      }
      for (const auto& [col, c] : mrows_[j]) {
        u[col] -= c * qij;
        v[col] -= c * qii;
      }
      // out += (1/2) (m_i u^T + u m_i^T - m_j v^T - v m_j^T)
      for (const auto& [col, c] : mrows_[i]) {
        const double w = 0.5 * c;
        double* row = out.data() + static_cast<std::size_t>(col) * nn;
        for (int p = 0; p < n; ++p) {
          row[p] += w * u[p];
          out[static_cast<std::size_t>(p) * nn + col] += w * u[p];
        }
      }
      for (const auto& [col, c] : mrows_[j]) {
        const double w = -0.5 * c;
        double* row = out.data() + static_cast<std::size_t>(col) * nn;
        for (int p = 0; p < n; ++p) {
          row[p] += w * v[p];
          out[static_cast<std::size_t>(p) * nn + col] += w * v[p];
        }
      }
    }
  }
}

namespace {

// one classical RK4 sweep of dq/ds = A[q] over nsteps equal steps
std::vector<double> rk4_sweep(const QuadraticGenerator& gen,
                              std::vector<double> q, double t, int nsteps) {
  const double dt = t / nsteps;
  const std::size_t sz = q.size();
  std::vector<double> k1(sz), k2(sz), k3(sz), k4(sz), tmp(sz);
  for (int s = 0; s < nsteps; ++s) {
    gen.apply(q, k1);
    for (std::size_t p = 0; p < sz; ++p) tmp[p] = q[p] + 0.5 * dt * k1[p];
    gen.apply(tmp, k2);
    for (std::size_t p = 0; p < sz; ++p) tmp[p] = q[p] + 0.5 * dt * k2[p];
    gen.apply(tmp, k3);
    for (std::size_t p = 0; p < sz; ++p) tmp[p] = q[p] + dt * k3[p];
    gen.apply(tmp, k4);
    for (std::size_t p = 0; p < sz; ++p)
      q[p] += dt / 6.0 * (k1[p] + 2.0 * k2[p] + 2.0 * k3[p] + k4[p]);
  }
  return q;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p)
    m = std::max(m, std::abs(a[p] - b[p]));
  return m;
}

// spectral radius estimate of the quadratic generator, used to size the
// first step: bonds contribute at most ~8 per axis at coupling scale c^2
double stiffness_scale(const Model& model) {
  double csum = 0.0;
  for (const auto& entry : model.stencil().entries())
    csum += std::abs(entry.coeff);
  return 8.0 * model.lattice().dim() * csum * csum;
}

}  // namespace

std::vector<EvolveResult> quadratic_evolve_grid(const Model& model,
                                                const QuadraticForm& q0,
                                                double beta,
                                                std::span<const double> times,
                                                double tol) {
  if (q0.size() != model.lattice().num_sites())
    throw std::invalid_argument("quadratic form size mismatch");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("time grid must be strictly ascending");
  if (!times.empty() && times.front() < 0.0)
    throw std::invalid_argument("time grid must be nonnegative");

  const QuadraticGenerator gen(model);
  const double rad = stiffness_scale(model);
  std::vector<EvolveResult> out;
  out.reserve(times.size());
  std::vector<double> cur = q0.data();
  double tcur = 0.0;
  for (double target : times) {
    const double span = target - tcur;
    double err = 0.0;
    int used = 0;
    if (span > 0.0) {
      int nsteps = std::max(8, static_cast<int>(std::ceil(span * rad)));
      std::vector<double> coarse = rk4_sweep(gen, cur, span, nsteps);
      for (int round = 0;; ++round) {
        std::vector<double> fine = rk4_sweep(gen, cur, span, 2 * nsteps);
        err = max_abs_diff(coarse, fine);
        used = 2 * nsteps;
        if (err <= tol) {
          cur = std::move(fine);
          break;
        }
        if (round >= 10)
          throw std::runtime_error(
              "quadratic evolve step control stalled, achieved " +
              std::to_string(err));
        coarse = std::move(fine);
        nsteps *= 2;
      }
    }
    tcur = target;
    QuadraticForm snapshot(q0.size());
    snapshot.data() = cur;
    // friction commutes with the interchange part; exact scalar factor
    const double damp = std::exp(-2.0 * beta * target);
    for (auto& vq : snapshot.data()) vq *= damp;
    out.push_back(EvolveResult{std::move(snapshot), err, used});
  }
  return out;
}

EvolveResult quadratic_evolve(const Model& model, const QuadraticForm& q0,
                              double beta, double t, double tol) {
  const double times[1] = {t};
  auto res = quadratic_evolve_grid(model, q0, beta, times, tol);
  return std::move(res.front());
}

namespace {

// C q C-type contractions against the covariance; diagonal measures use the
// scalar fast path
std::vector<double> right_multiply_cov(const GaussianMeasure& mu,
                                       const QuadraticForm& q) {
  const int n = q.size();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> qc(nn * nn);
  if (mu.diagonal_covariance()) {
    const double c = mu.cov(0, 0);
    for (std::size_t p = 0; p < nn * nn; ++p) qc[p] = q.data()[p] * c;
    return qc;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += q.at(i, k) * mu.cov(k, j);
      qc[static_cast<std::size_t>(i) * nn + j] = acc;
    }
  return qc;
}

}  // namespace

double quadratic_mean(const GaussianMeasure& mu, const QuadraticForm& q) {
  double acc = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    if (mu.diagonal_covariance()) {
      acc += q.at(i, i) * mu.cov(i, i);
    } else {
      for (int j = 0; j < q.size(); ++j) acc += q.at(i, j) * mu.cov(j, i);
    }
  }
  return acc;
}

double quadratic_variance(const GaussianMeasure& mu, const QuadraticForm& q) {
  const auto qc = right_multiply_cov(mu, q);
  const int n = q.size();
  const std::size_t nn = static_cast<std::size_t>(n);
  double acc = 0.0;  // 2 tr((QC)^2)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += qc[static_cast<std::size_t>(i) * nn + j] *
             qc[static_cast<std::size_t>(j) * nn + i];
  return 2.0 * acc;
}

namespace {

// diagonal of Q C Q
std::vector<double> qcq_diagonal(const GaussianMeasure& mu,
                                 const QuadraticForm& q) {
  const auto qc = right_multiply_cov(mu, q);
  const int n = q.size();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<double> d(nn, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += qc[static_cast<std::size_t>(i) * nn + k] * q.at(k, i);
    d[static_cast<std::size_t>(i)] = acc;
  }
  return d;
}

}  // namespace

double quadratic_gradient_sq_max(const GaussianMeasure& mu,
                                 const QuadraticForm& q) {
  const auto d = qcq_diagonal(mu, q);
  double m = 0.0;
  for (double v : d) m = std::max(m, 4.0 * v);
  return m;
}

double quadratic_seminorm_sq_sum(const GaussianMeasure& mu,
                                 const QuadraticForm& q) {
  const auto d = qcq_diagonal(mu, q);
  double acc = 0.0;
  for (double v : d) acc += 4.0 * v;
  return acc;
}

namespace {

double envelope(double t) {
  return std::sqrt(t) * detail::bessel_i_scaled(0, 2.0 * t);
}

}  // namespace

double gradient_envelope_peak(double b) {
  if (!(b > 0.0)) throw std::domain_error("coupling b must be positive");
  // coarse log-spaced scan, then ternary refinement around the best point
  double best_t = 0.4, best = 0.0;
  for (double t = 1e-3; t < 1e3; t *= 1.05) {
    const double g = envelope(t);
    if (g > best) {
      best = g;
      best_t = t;
    }
  }
  double lo = best_t / 1.05, hi = best_t * 1.05;
  while (hi - lo > 1e-10 * best_t) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (envelope(m1) < envelope(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return envelope(0.5 * (lo + hi)) / b;
}

double gradient_envelope_plateau(double b) {
  if (!(b > 0.0)) throw std::domain_error("coupling b must be positive");
  // g(t) settles onto 1/(2 sqrt(pi)) from above; march t upward until two
  // successive decades agree to 1e-8
  double prev = envelope(1e4);
  for (double t = 1e5; t <= 1e12; t *= 10.0) {
    const double curv = envelope(t);
    if (std::abs(curv - prev) <= 1e-8) return curv / b;
    prev = curv;
  }
  return prev / b;
}

std::vector<GradientBoundPoint> gradient_bound_check(
    const Model& model, const GaussianMeasure& mu, const QuadraticForm& f,
    std::span<const double> t_grid) {
  if (!model.stencil().is_diagonal())
    throw std::invalid_argument(
        "gradient bound check needs a diagonal stencil");
  const double b = model.stencil().diagonal_coeff();
  const double aconst = gradient_envelope_plateau(b);
  const int dim = model.lattice().dim();
  const double seminorm_sq = quadratic_seminorm_sq_sum(mu, f);
  const auto evolved = quadratic_evolve_grid(model, f, 0.0, t_grid);
  std::vector<GradientBoundPoint> out;
  out.reserve(t_grid.size());
  for (std::size_t idx = 0; idx < t_grid.size(); ++idx) {
    const double t = t_grid[idx];
    GradientBoundPoint p;
    p.t = t;
    p.lhs = quadratic_gradient_sq_max(mu, evolved[idx].form);
    p.rhs = std::pow(aconst, dim) / std::pow(t, 0.5 * dim) * seminorm_sq;
    out.push_back(p);
  }
  return out;
}

}  // namespace rotor
