#pragma once

#include <vector>

namespace rotor::detail {

// Scaled modified Bessel function e^{-z} I_k(z) for integer k >= 0, z >= 0.
// Three regimes: power series for small z, Miller backward recurrence with
// the e^{-z}(I_0 + 2 sum I_k) = 1 normalization for moderate z, and the
// large-argument expansion in 1/(8z) for large z with k^2 << z.
double bessel_i_scaled(int k, double z);

// e^{-z} I_k(z) for all k in [0, kmax]; one backward pass serves every order
std::vector<double> bessel_i_scaled_row(int kmax, double z);

}  // namespace rotor::detail
