#include "rotorlattice/detail/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rotor::detail {

namespace {

constexpr double kSeriesCut = 20.0;
constexpr double kMillerCut = 4000.0;

// e^{-z} sum_m (z/2)^{2m+k} / (m! (m+k)!); all terms positive, first term
// taken through logs so large k underflows to zero instead of overflowing
double series_scaled(int k, double z) {
  const double logt0 = -z + k * std::log(z / 2.0) - std::lgamma(k + 1.0);
  if (logt0 < -745.0) return 0.0;
  double term = std::exp(logt0);
  double sum = term;
  const double q = 0.25 * z * z;
  for (int m = 1; m < 400; ++m) {
    term *= q / (static_cast<double>(m) * (m + k));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

// backward recurrence p_{m-1} = p_{m+1} + (2m/z) p_m seeded far above kmax;
// the scale is fixed by e^{-z}(I_0 + 2 sum_{k>=1} I_k) = 1
std::vector<double> miller_row(int kmax, double z) {
  const int start = kmax + static_cast<int>(std::ceil(1.6 * z)) + 40;
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  double pp1 = 0.0;     // p_{m+1}
  double p = 1e-280;    // p_m
  double norm = 0.0;    // running p_0 + 2 sum p_k, filled on the way down
  for (int m = start; m >= 0; --m) {
    const double pm1 = pp1 + (2.0 * m / z) * p;  // p_{m-1}
    if (m <= kmax) out[static_cast<std::size_t>(m)] = p;
    norm += (m == 0) ? p : 2.0 * p;
    pp1 = p;
    p = pm1;
    if (std::abs(p) > 1e280) {
      const double inv = 1e-280;
      p *= inv;
      pp1 *= inv;
      norm *= inv;
      for (auto& v : out) v *= inv;
    }
  }
  for (auto& v : out) v /= norm;
  return out;
}

// e^{-z} I_k(z) ~ (2 pi z)^{-1/2} sum_j prod_{i<=j} (mu - (2i-1)^2) *
// (-1)^j / (j! (8z)^j), mu = 4k^2; truncated at the smallest term
double asymptotic_scaled(int k, double z) {
  const double mu = 4.0 * static_cast<double>(k) * k;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::abs(term);
  for (int j = 1; j < 40; ++j) {
    term *= -(mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (j * 8.0 * z);
    if (std::abs(term) >= prev) break;  // divergent tail reached
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace

double bessel_i_scaled(int k, double z) {
  if (k < 0 || z < 0.0) throw std::domain_error("bessel_i_scaled: k, z >= 0");
  if (z == 0.0) return k == 0 ? 1.0 : 0.0;
  if (z <= kSeriesCut) return series_scaled(k, z);
  if (z <= kMillerCut || 4.0 * k * k >= 0.1 * z)
    return miller_row(k, z)[static_cast<std::size_t>(k)];
  return asymptotic_scaled(k, z);
}

std::vector<double> bessel_i_scaled_row(int kmax, double z) {
  if (kmax < 0 || z < 0.0)
    throw std::domain_error("bessel_i_scaled_row: kmax, z >= 0");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  if (z == 0.0) {
    for (int k = 0; k <= kmax; ++k) out[k] = (k == 0) ? 1.0 : 0.0;
    return out;
  }
  if (z <= kSeriesCut) {
    for (int k = 0; k <= kmax; ++k) out[k] = series_scaled(k, z);
    return out;
  }
  if (z <= kMillerCut || 4.0 * kmax * kmax >= 0.1 * z) return miller_row(kmax, z);
  for (int k = 0; k <= kmax; ++k) out[k] = asymptotic_scaled(k, z);
  return out;
}

}  // namespace rotor::detail
