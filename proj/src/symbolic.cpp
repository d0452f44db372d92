#include "rotorlattice/symbolic.hpp"

namespace rotor {

Polynomial field_gradient_poly(const Model& model, int site) {
  const auto& lat = model.lattice();
  Polynomial g;
  for (const auto& entry : model.stencil().entries()) {
    const int t = lat.shift(site, entry.offset);
    g += entry.coeff * Polynomial::site(t);
  }
  return g;
}

Polynomial field_apply_poly(const Model& model, const Edge& e,
                            const Polynomial& f) {
  const Polynomial ga = field_gradient_poly(model, e.a);
  const Polynomial gb = field_gradient_poly(model, e.b);
  return ga * f.derivative(e.b) - gb * f.derivative(e.a);
}

Polynomial generator_apply_poly(const Model& model, const Polynomial& f) {
  const auto& lat = model.lattice();
  Polynomial out;
  for (int i = 0; i < lat.num_sites(); ++i) {
    for (int k = 0; k < lat.dim(); ++k) {
      const Edge e{i, lat.shift(i, k, 1)};
      out += 0.5 * field_apply_poly(model, e, field_apply_poly(model, e, f));
    }
  }
  return out;
}

Polynomial dilation_apply_poly(const Polynomial& f) {
  Polynomial out;
  // only sites in the support of f can contribute
  for (int s : f.support()) out += Polynomial::site(s) * f.derivative(s);
  return out;
}

Polynomial potential_poly(const Model& model) {
  const auto& lat = model.lattice();
  Polynomial v;
  for (const auto& entry : model.stencil().entries()) {
    for (int s = 0; s < lat.num_sites(); ++s) {
      const int t = lat.shift(s, entry.offset);
      v += (0.5 * entry.coeff) * (Polynomial::site(s) * Polynomial::site(t));
    }
  }
  return v;
}

}  // namespace rotor
