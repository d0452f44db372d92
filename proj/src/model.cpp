#include "rotorlattice/model.hpp"

#include <cmath>
#include <stdexcept>

#include "rotorlattice/errors.hpp"

namespace rotor {

Model::Model(TorusLattice lattice, PrecisionStencil stencil)
    : lattice_(std::move(lattice)), stencil_(std::move(stencil)) {
  stencil_.validated_symbol(lattice_);  // geometry + positivity gate
}

double Model::grad_V(const std::vector<double>& x, int site) const {
  double g = 0.0;
  for (const auto& e : stencil_.entries())
    g += e.coeff * x[lattice_.shift(site, e.offset)];
  return g;
}

void Model::grad_V_all(const std::vector<double>& x,
                       std::vector<double>& out) const {
  const int n = lattice_.num_sites();
  out.assign(n, 0.0);
  for (const auto& e : stencil_.entries()) {
    // accumulate c(o) * x(site + o) entry by entry; contiguous in site
    for (int s = 0; s < n; ++s)
      out[s] += e.coeff * x[lattice_.shift(s, e.offset)];
  }
}

double Model::potential(const std::vector<double>& x) const {
  const int n = lattice_.num_sites();
  double v = 0.0;
  for (const auto& e : stencil_.entries()) {
    double acc = 0.0;
    for (int s = 0; s < n; ++s) acc += x[s] * x[lattice_.shift(s, e.offset)];
    v += e.coeff * acc;
  }
  return 0.5 * v;
}

double Model::energy(Configuration& c) const {
  if (!c.energy_valid) {
    c.energy = potential(c.x);
    c.energy_valid = true;
  }
  return c.energy;
}

double Model::revalidate(Configuration& c) const {
  const double fresh = potential(c.x);
  double drift = 0.0;
  if (c.energy_valid) {
    const double scale = std::max({std::abs(fresh), std::abs(c.energy), 1e-300});
    drift = std::abs(fresh - c.energy) / scale;
  }
  c.energy = fresh;
  c.energy_valid = true;
  return drift;
}

double Model::field_apply(Edge e, const std::vector<double>& x,
                          const std::vector<double>& df) const {
  return grad_V(x, e.a) * df[e.b] - grad_V(x, e.b) * df[e.a];
}

namespace {

// phi0(u) = sum (-u)^m / (2m+1)!  = sin(sqrt u)/sqrt u   (u > 0)
//                                 = sinh(sqrt -u)/sqrt -u (u < 0)
// phi1(u) = sum (-u)^m / (2m+2)!  = (1 - cos(sqrt u))/u  etc.
// Series branch keeps full precision through u -> 0.
void phi_pair(double u, double& phi0, double& phi1) {
  const double au = std::abs(u);
  if (au < 1e-2) {
    phi0 = 1.0 - u / 6.0 * (1.0 - u / 20.0 * (1.0 - u / 42.0));
    phi1 = 0.5 - u / 24.0 * (1.0 - u / 30.0 * (1.0 - u / 56.0));
    return;
  }
  if (u > 0.0) {
    const double w = std::sqrt(u);
    phi0 = std::sin(w) / w;
    phi1 = (1.0 - std::cos(w)) / u;
  } else {
    const double w = std::sqrt(-u);
    phi0 = std::sinh(w) / w;
    phi1 = (std::cosh(w) - 1.0) / (-u);
  }
}

}  // namespace

void Model::field_flow(Edge e, std::vector<double>& x, double s) const {
  const int i = e.a;
  const int j = e.b;
  const double a = stencil_.diagonal_coeff();
  // nearest-neighbour coupling between the pair; zero for on-site stencils
  const double m = stencil_.coeff(
      [&] {
        std::vector<int> o(lattice_.dim(), 0);
        // recover the bond axis from the id difference
        for (int k = 0; k < lattice_.dim(); ++k) {
          if (lattice_.shift(i, k, 1) == j) {
            o[k] = 1;
            break;
          }
        }
        return o;
      }());

  // External contributions to the pair gradient stay constant along the flow.
  const double gi_ext = grad_V(x, i) - a * x[i] - m * x[j];
  const double gj_ext = grad_V(x, j) - a * x[j] - m * x[i];

  // The frozen system is linear: d/ds (x_i, x_j) = K (x_i, x_j) + f with
  //   K = [[-m, -a], [a, m]],  f = (-gj_ext, gi_ext).
  // Closed form via x(s) = x0 + s phi0(u) v + s^2 phi1(u) K v,
  // v = K x0 + f, u = det(K) s^2. Exact, so V is conserved identically.
  const double xi = x[i];
  const double xj = x[j];
  const double vi = -m * xi - a * xj - gj_ext;
  const double vj = a * xi + m * xj + gi_ext;
  const double wi = -m * vi - a * vj;
  const double wj = a * vi + m * vj;
  const double det = a * a - m * m;
  double phi0, phi1;
  phi_pair(det * s * s, phi0, phi1);
  x[i] = xi + s * phi0 * vi + s * s * phi1 * wi;
  x[j] = xj + s * phi0 * vj + s * s * phi1 * wj;
}

void Model::drift(const std::vector<double>& x,
                  std::vector<double>& out) const {
  const int n = lattice_.num_sites();
  const int N = lattice_.dim();
  const double c0 = stencil_.diagonal_coeff();
  std::vector<double> g;
  grad_V_all(x, g);
  out.assign(n, 0.0);
  for (int k = 0; k < N; ++k) {
    const double ck = stencil_.axis_coeff(k);
    for (int s = 0; s < n; ++s) {
      const int sm = lattice_.shift(s, k, -1);
      const int sp = lattice_.shift(s, k, +1);
      out[s] -= 0.5 * (2.0 * c0 * g[s] - ck * (g[sm] + g[sp]));
    }
  }
}

void Model::add_diffusion(const std::vector<double>& x,
                          const std::vector<double>& dw,
                          std::vector<double>& out) const {
  const int n = lattice_.num_sites();
  const int N = lattice_.dim();
  std::vector<double> g;
  grad_V_all(x, g);
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < N; ++k) {
      const int sp = lattice_.shift(s, k, +1);
      const double w = dw[static_cast<size_t>(s) * N + k];
      out[sp] += g[s] * w;
      out[s] -= g[sp] * w;
    }
  }
}

}  // namespace rotor
