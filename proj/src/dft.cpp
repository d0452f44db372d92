#include "rotorlattice/detail/dft.hpp"

#include <cmath>

namespace rotor::detail {

void dft_nd(std::vector<std::complex<double>>& data, int dim, int side,
            bool inverse) {
  const double two_pi = 6.28318530717958647692528676656;
  const double sign = inverse ? +1.0 : -1.0;

  // Twiddle table exp(sign * 2 pi i k / L), k = 0..L-1.
  std::vector<std::complex<double>> tw(side);
  for (int k = 0; k < side; ++k) {
    const double ang = sign * two_pi * k / side;
    tw[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> line(side), out(side);
  std::int64_t stride = 1;
  const std::int64_t total = static_cast<std::int64_t>(data.size());
  for (int axis = 0; axis < dim; ++axis) {
    const std::int64_t block = stride * side;
    for (std::int64_t base = 0; base < total; base += block) {
      for (std::int64_t off = 0; off < stride; ++off) {
        for (int j = 0; j < side; ++j) line[j] = data[base + off + j * stride];
        for (int m = 0; m < side; ++m) {
          std::complex<double> acc{0.0, 0.0};
          for (int j = 0; j < side; ++j) acc += line[j] * tw[(m * j) % side];
          out[m] = acc;
        }
        for (int m = 0; m < side; ++m) data[base + off + m * stride] = out[m];
      }
    }
    stride = block;
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& z : data) z *= scale;
  }
}

}  // namespace rotor::detail
