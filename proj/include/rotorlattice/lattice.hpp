#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rotor {

// Directed nearest-neighbour bond (a, a + e_axis); b is always the positive
// shift of a along the class axis.
struct Edge {
  std::int32_t a;
  std::int32_t b;
};

// Bonds of one axis and one base-coordinate parity. The pairs are vertex
// disjoint, which makes their rotor flows commute when the interaction is
// on-site only.
struct EdgeClass {
  int axis;
  int parity;
  std::vector<Edge> edges;
};

// Bonds whose base sites agree modulo (range + 2) in every coordinate. The
// stride guarantees disjoint dependence sets for interactions of the given
// range, so the flows inside one class commute for any symmetric stencil.
struct SublatticeClass {
  int axis;
  std::vector<int> offset;  // base coordinate residues, one per axis
  int stride;
  std::vector<Edge> edges;
};

// Periodic box {0..L-1}^N with row-major site ids, first axis fastest:
// site = c_0 + L*c_1 + L^2*c_2 + ...
class TorusLattice {
 public:
  TorusLattice(int dim, int side);

  int dim() const { return dim_; }
  int side() const { return side_; }
  int num_sites() const { return nsites_; }
  std::int64_t num_edges() const {
    return static_cast<std::int64_t>(dim_) * nsites_;
  }

  int site(std::span<const int> coords) const;  // coordinates wrap mod L
  void coords(int site, std::span<int> out) const;
  int coord(int site, int axis) const;

  int shift(int site, int axis, int delta) const;
  int shift(int site, std::span<const int> offset) const;

  // Site id of the coordinate difference (to - from) mod L; covariance and
  // kernel tables are indexed by this.
  int offset_site(int from, int to) const;

  // 2N neighbours in axis-major order, minus direction first:
  // [ax0-, ax0+, ax1-, ax1+, ...]
  std::vector<int> neighbors(int site) const;

  std::vector<EdgeClass> edge_classes() const;  // requires even side
  std::vector<SublatticeClass> sublattice_classes(int range) const;

 private:
  int dim_;
  int side_;
  int nsites_;
  std::vector<int> stride_;  // stride_[k] = L^k
};

}  // namespace rotor
