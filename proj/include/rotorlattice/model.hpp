#pragma once

#include <vector>

#include "rotorlattice/lattice.hpp"
#include "rotorlattice/stencil.hpp"

namespace rotor {

// Lattice state plus a cached value of the conserved quadratic V. The cache
// must stay within 1e-12 relative of a fresh evaluation; Model::revalidate
// recomputes, reports the drift and refreshes. Schemes that conserve V keep
// the cache valid across steps, which makes per-epoch conservation
// monitoring free.
struct Configuration {
  std::vector<double> x;
  double energy = 0.0;
  bool energy_valid = false;

  explicit Configuration(int n) : x(static_cast<size_t>(n), 0.0) {}
  explicit Configuration(std::vector<double> values) : x(std::move(values)) {}
};

// Torus + coupling table with the derived dynamics pieces: the gradient
// field (Mx), the conserved potential V = x.Mx/2, the antisymmetric pair
// fields and their exact flows, and the Ito drift/diffusion of the rotor
// chain.
class Model {
 public:
  Model(TorusLattice lattice, PrecisionStencil stencil);

  const TorusLattice& lattice() const { return lattice_; }
  const PrecisionStencil& stencil() const { return stencil_; }
  bool diagonal() const { return stencil_.is_diagonal(); }

  double grad_V(const std::vector<double>& x, int site) const;
  void grad_V_all(const std::vector<double>& x, std::vector<double>& out) const;
  double potential(const std::vector<double>& x) const;

  double energy(Configuration& c) const;      // cached V
  double revalidate(Configuration& c) const;  // returns relative cache drift

  // Pair field of edge (i,j): X f = (Mx)_i d_j f - (Mx)_j d_i f, evaluated
  // from a table of partial derivatives of f at the sites.
  double field_apply(Edge e, const std::vector<double>& x,
                     const std::vector<double>& df) const;

  // Exact flow of the pair field for time s: the unique solution of
  //   d/ds x_j = (Mx)_i,   d/ds x_i = -(Mx)_j
  // with every other coordinate frozen. Conserves V identically.
  void field_flow(Edge e, std::vector<double>& x, double s) const;

  // Ito drift of the conservative dynamics (the confinement term -beta x is
  // the integrator's business). For an on-site coupling b this is -N b^2 x.
  void drift(const std::vector<double>& x, std::vector<double>& out) const;

  // out += B(x) dw, where dw holds one increment per directed bond in
  // site-major, axis-minor order: dw[i*N + k] drives bond (i, i + e_k) and
  // sends +(Mx)_i to component i+e_k and -(Mx)_{i+e_k} to component i.
  void add_diffusion(const std::vector<double>& x,
                     const std::vector<double>& dw,
                     std::vector<double>& out) const;

 private:
  TorusLattice lattice_;
  PrecisionStencil stencil_;
  // per-entry precomputed site deltas are not stored; shifts are cheap and
  // hot loops precompute their own index tables
};

}  // namespace rotor
