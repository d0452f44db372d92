#pragma once

#include "rotorlattice/model.hpp"
#include "rotorlattice/polynomial.hpp"

namespace rotor {

// Exact polynomial calculus for the pair fields and the generator. These
// routines stay in the polynomial algebra, so identities like X_e V = 0 or
// L x_k^2 = b^2 (lap x^2)_k can be checked structurally rather than at
// sampled points.

// (M x)_i as a degree-1 polynomial
Polynomial field_gradient_poly(const Model& model, int site);

// X_e f = g_a df/db - g_b df/da
Polynomial field_apply_poly(const Model& model, const Edge& e,
                            const Polynomial& f);

// (1/4) sum_i sum_{j~i} X_ij^2 f = (1/2) sum_{unordered bonds} X_e^2 f
Polynomial generator_apply_poly(const Model& model, const Polynomial& f);

// Euler operator sum_i x_i df/dx_i; the friction acts as -beta * this
Polynomial dilation_apply_poly(const Polynomial& f);

// interaction potential (1/2) x^T M x as a polynomial
Polynomial potential_poly(const Model& model);

}  // namespace rotor
