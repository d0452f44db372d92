#include "rotorlattice/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rotorlattice/errors.hpp"

namespace rotor {

namespace {

std::string offset_str(std::span<const int> o) {
  std::ostringstream ss;
  ss << "(";
  for (size_t k = 0; k < o.size(); ++k) ss << (k ? "," : "") << o[k];
  ss << ")";
  return ss.str();
}

}  // namespace

PrecisionStencil PrecisionStencil::diagonal(int dim, double b) {
  return PrecisionStencil(dim, {{std::vector<int>(dim, 0), b}});
}

PrecisionStencil::PrecisionStencil(int dim, std::vector<StencilEntry> entries)
    : dim_(dim) {
  if (dim < 1) throw ConfigError("stencil dimension must be >= 1");
  if (entries.empty()) throw ConfigError("stencil has no entries");

  std::map<std::vector<int>, double> table;
  for (auto& e : entries) {
    if (static_cast<int>(e.offset.size()) != dim)
      throw ConfigError("stencil offset arity does not match dimension");
    if (e.coeff == 0.0) continue;
    std::vector<int> neg(e.offset);
    for (auto& v : neg) v = -v;
    for (const auto& key : {e.offset, neg}) {
      auto it = table.find(key);
      if (it != table.end() && it->second != e.coeff)
        throw ConfigError("stencil not symmetric at offset " +
                          offset_str(key));
      table[key] = e.coeff;
    }
  }
  if (table.empty()) throw ConfigError("stencil has no nonzero entries");

  for (const auto& [off, c] : table) {
    int norm = 0;
    for (int v : off) norm = std::max(norm, std::abs(v));
    range_ = std::max(range_, norm);
    entries_.push_back({off, c});
  }
}

double PrecisionStencil::diagonal_coeff() const {
  return coeff(std::vector<int>(dim_, 0));
}

double PrecisionStencil::coeff_bound() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.coeff));
  return m;
}

double PrecisionStencil::coeff(std::span<const int> offset) const {
  for (const auto& e : entries_) {
    if (std::equal(e.offset.begin(), e.offset.end(), offset.begin(),
                   offset.end()))
      return e.coeff;
  }
  return 0.0;
}

double PrecisionStencil::axis_coeff(int axis) const {
  std::vector<int> o(dim_, 0);
  o[axis] = 1;
  return coeff(o);
}

std::vector<double> PrecisionStencil::validated_symbol(
    const TorusLattice& lat) const {
  if (lat.dim() != dim_)
    throw ConfigError("stencil dimension does not match lattice");
  if (lat.side() <= 2 * range_)
    throw ConfigError("torus side must exceed twice the stencil range; need L > " +
                      std::to_string(2 * range_));

  const int n = lat.num_sites();
  const int L = lat.side();
  const double two_pi = 6.28318530717958647692528676656;
  std::vector<double> symbol(n, 0.0);
  std::vector<int> freq(dim_);
  for (int m = 0; m < n; ++m) {
    lat.coords(m, freq);
    double s = 0.0;
    for (const auto& e : entries_) {
      double phase = 0.0;
      for (int k = 0; k < dim_; ++k) phase += freq[k] * e.offset[k];
      s += e.coeff * std::cos(two_pi * phase / L);
    }
    symbol[m] = s;
  }
  const double top = *std::max_element(symbol.begin(), symbol.end());
  const double floor = *std::min_element(symbol.begin(), symbol.end());
  if (!(floor > 1e-12 * std::max(1.0, top)))
    throw ConfigError("stencil symbol is not positive on this torus");
  return symbol;
}

}  // namespace rotor
