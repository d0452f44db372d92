#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "rotorlattice/rng.hpp"

using namespace rotor;

// Published known-answer vectors for Philox4x32 with 10 rounds.
TEST_CASE("philox block reproduces the reference vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;

  const A4 z = RngStream::block(A4{0, 0, 0, 0}, A2{0, 0});
  CHECK(z[0] == 0x6627e8d5u);
  CHECK(z[1] == 0xe169c58du);
  CHECK(z[2] == 0xbc57ac4cu);
  CHECK(z[3] == 0x9b00dbd8u);

  const A4 f = RngStream::block(
      A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      A2{0xffffffffu, 0xffffffffu});
  CHECK(f[0] == 0x408f276du);
  CHECK(f[1] == 0x41c83b0eu);
  CHECK(f[2] == 0xa20bc7c6u);
  CHECK(f[3] == 0x6d5451fdu);

  const A4 p = RngStream::block(
      A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      A2{0xa4093822u, 0x299f31d0u});
  CHECK(p[0] == 0xd16cfe09u);
  CHECK(p[1] == 0x94fdccebu);
  CHECK(p[2] == 0x5001e420u);
  CHECK(p[3] == 0x24126ea1u);
}

TEST_CASE("the stream walks blocks in counter order") {
  RngStream rng(0, 0);
  const auto b0 = RngStream::block({0, 0, 0, 0}, {0, 0});
  const auto b1 = RngStream::block({1, 0, 0, 0}, {0, 0});
  for (int i = 0; i < 4; ++i) CHECK(rng.next_u32() == b0[i]);
  for (int i = 0; i < 4; ++i) CHECK(rng.next_u32() == b1[i]);
}

TEST_CASE("identical seed and stream reproduce the same sequence") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  RngStream rng(1, 0);
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform01();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("normal draws have the right first four moments") {
  RngStream rng(2024, 0);
  const int n = 400000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s3 += z * z * z;
    s4 += z * z * z * z;
  }
  s1 /= n;
  s2 /= n;
  s3 /= n;
  s4 /= n;
  // 5 sigma bands for this sample size
  CHECK(std::abs(s1) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(s2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(s3) < 5.0 * std::sqrt(15.0 / n));
  CHECK(std::abs(s4 - 3.0) < 5.0 * std::sqrt(96.0 / n));
}

TEST_CASE("distinct stream ids decorrelate") {
  RngStream a(99, 0), b(99, 1);
  const int n = 50000;
  double cross = 0, va = 0, vb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal();
    const double y = b.normal();
    cross += x * y;
    va += x * x;
    vb += y * y;
  }
  const double rho = cross / std::sqrt(va * vb);
  CHECK(std::abs(rho) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("mix_seed separates tags and seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t tag = 0; tag < 256; ++tag)
    CHECK(seen.insert(mix_seed(12345, tag)).second);
  CHECK(mix_seed(12345, 0) != mix_seed(54321, 0));
  CHECK(mix_seed(12345, 3) == mix_seed(12345, 3));
}
