#pragma once

#include <span>
#include <vector>

#include "rotorlattice/lattice.hpp"

namespace rotor {

struct StencilEntry {
  std::vector<int> offset;
  double coeff;
};

// Symmetric finite-range coupling table c(o) = c(-o). Defines the precision
// matrix M_ij = c(j - i) of the conserved quadratic form; grad entries are
// (Mx)_i = sum_o c(o) x_{i+o}.
class PrecisionStencil {
 public:
  // On-site coupling only: c(0) = b.
  static PrecisionStencil diagonal(int dim, double b);

  // Entries are mirror-completed: giving c(o) implies c(-o). Listing both
  // with different values is rejected.
  PrecisionStencil(int dim, std::vector<StencilEntry> entries);

  int dim() const { return dim_; }
  int range() const { return range_; }  // max |offset|_inf
  bool is_diagonal() const { return range_ == 0; }
  double diagonal_coeff() const;  // c(0)
  double coeff_bound() const;     // max |c(o)|
  double coeff(std::span<const int> offset) const;  // 0 when absent
  // Nearest-neighbour coupling c(e_axis); the drift formula needs it.
  double axis_coeff(int axis) const;
  const std::vector<StencilEntry>& entries() const { return entries_; }

  // Fourier multiplier of the wrapped coupling on the given torus, indexed by
  // frequency site id. Throws ConfigError unless L > 2R and the multiplier is
  // strictly positive (which makes M invertible and the Gibbs state proper).
  std::vector<double> validated_symbol(const TorusLattice& lat) const;

 private:
  int dim_;
  int range_ = 0;
  std::vector<StencilEntry> entries_;  // canonical order, both mirrors stored
};

}  // namespace rotor
