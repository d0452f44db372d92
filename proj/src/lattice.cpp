#include "rotorlattice/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rotorlattice/errors.hpp"

namespace rotor {

TorusLattice::TorusLattice(int dim, int side) : dim_(dim), side_(side) {
  if (dim < 1) throw ConfigError("lattice dimension must be >= 1");
  if (side < 4) throw ConfigError("lattice side must be >= 4");
  std::int64_t n = 1;
  stride_.resize(dim);
  for (int k = 0; k < dim; ++k) {
    stride_[k] = static_cast<int>(n);
    n *= side;
    if (n > (1 << 24))
      throw ConfigError("lattice too large: " + std::to_string(side) + "^" +
                        std::to_string(dim) + " sites");
  }
  nsites_ = static_cast<int>(n);
}

int TorusLattice::site(std::span<const int> coords) const {
  int id = 0;
  for (int k = 0; k < dim_; ++k) {
    int c = coords[k] % side_;
    if (c < 0) c += side_;
    id += c * stride_[k];
  }
  return id;
}

void TorusLattice::coords(int site, std::span<int> out) const {
  for (int k = 0; k < dim_; ++k) {
    out[k] = (site / stride_[k]) % side_;
  }
}

int TorusLattice::coord(int site, int axis) const {
  return (site / stride_[axis]) % side_;
}

int TorusLattice::shift(int site, int axis, int delta) const {
  const int c = coord(site, axis);
  int nc = (c + delta) % side_;
  if (nc < 0) nc += side_;
  return site + (nc - c) * stride_[axis];
}

int TorusLattice::shift(int site, std::span<const int> offset) const {
  for (int k = 0; k < dim_; ++k) site = shift(site, k, offset[k]);
  return site;
}

int TorusLattice::offset_site(int from, int to) const {
  int id = 0;
  for (int k = 0; k < dim_; ++k) {
    int d = (coord(to, k) - coord(from, k)) % side_;
    if (d < 0) d += side_;
    id += d * stride_[k];
  }
  return id;
}

std::vector<int> TorusLattice::neighbors(int site) const {
  std::vector<int> out;
  out.reserve(2 * dim_);
  for (int k = 0; k < dim_; ++k) {
    out.push_back(shift(site, k, -1));
    out.push_back(shift(site, k, +1));
  }
  return out;
}

std::vector<EdgeClass> TorusLattice::edge_classes() const {
  if (side_ % 2 != 0)
    throw ConfigError(
        "axis-parity edge classes need an even side, got L = " +
        std::to_string(side_));
  std::vector<EdgeClass> classes;
  classes.reserve(2 * dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int parity = 0; parity < 2; ++parity) {
      EdgeClass cls{k, parity, {}};
      cls.edges.reserve(nsites_ / 2);
      for (int s = 0; s < nsites_; ++s) {
        if (coord(s, k) % 2 != parity) continue;
        cls.edges.push_back(Edge{s, static_cast<std::int32_t>(shift(s, k, 1))});
      }
      classes.push_back(std::move(cls));
    }
  }
  return classes;
}

std::vector<SublatticeClass> TorusLattice::sublattice_classes(int range) const {
  if (range < 0) throw ConfigError("stencil range must be >= 0");
  const int stride = range + 2;
  if (side_ % stride != 0)
    throw ConfigError("sublattice classes need side divisible by " +
                      std::to_string(stride) + ", got L = " +
                      std::to_string(side_));
  std::vector<SublatticeClass> classes;
  std::vector<int> offset(dim_, 0);
  for (int k = 0; k < dim_; ++k) {
    // enumerate residue vectors in row-major order, first axis fastest
    std::fill(offset.begin(), offset.end(), 0);
    for (;;) {
      SublatticeClass cls{k, offset, stride, {}};
      for (int s = 0; s < nsites_; ++s) {
        bool member = true;
        for (int a = 0; a < dim_; ++a) {
          if (coord(s, a) % stride != offset[a]) {
            member = false;
            break;
          }
        }
        if (member)
          cls.edges.push_back(
              Edge{s, static_cast<std::int32_t>(shift(s, k, 1))});
      }
      classes.push_back(std::move(cls));
      int a = 0;
      while (a < dim_ && ++offset[a] == stride) offset[a++] = 0;
      if (a == dim_) break;
    }
  }
  return classes;
}

}  // namespace rotor
