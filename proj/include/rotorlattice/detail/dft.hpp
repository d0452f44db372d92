#pragma once

#include <complex>
#include <vector>

namespace rotor::detail {

// In-place discrete Fourier transform of an L^N array along every axis,
// naive O(L) per output point per line. Desk-scale sides (L <= 64) make an
// FFT pointless here; these transforms only run in setup paths.
// Forward:  A(m) = sum_x a(x) exp(-2 pi i m.x / L)
// Inverse:  a(x) = L^-N sum_m A(m) exp(+2 pi i m.x / L)
void dft_nd(std::vector<std::complex<double>>& data, int dim, int side,
            bool inverse);

}  // namespace rotor::detail
