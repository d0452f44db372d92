#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "rotorlattice/errors.hpp"
#include "rotorlattice/stencil.hpp"

using namespace rotor;

TEST_CASE("diagonal stencil is on-site only") {
  const auto st = PrecisionStencil::diagonal(2, 1.5);
  CHECK(st.dim() == 2);
  CHECK(st.range() == 0);
  CHECK(st.is_diagonal());
  CHECK(st.diagonal_coeff() == 1.5);
  CHECK(st.coeff_bound() == 1.5);

  const std::array<int, 2> zero{0, 0};
  const std::array<int, 2> e0{1, 0};
  CHECK(st.coeff(zero) == 1.5);
  CHECK(st.coeff(e0) == 0.0);
  CHECK(st.axis_coeff(0) == 0.0);
  CHECK(st.axis_coeff(1) == 0.0);
}

TEST_CASE("entries are mirror completed") {
  PrecisionStencil st(1, {{{0}, 3.0}, {{1}, -1.0}});
  CHECK(st.range() == 1);
  CHECK_FALSE(st.is_diagonal());
  CHECK(st.diagonal_coeff() == 3.0);
  CHECK(st.coeff_bound() == 3.0);

  const std::array<int, 1> plus{1};
  const std::array<int, 1> minus{-1};
  CHECK(st.coeff(plus) == -1.0);
  CHECK(st.coeff(minus) == -1.0);  // implied mirror
  CHECK(st.axis_coeff(0) == -1.0);

  // both mirrors stored in the canonical entry list
  int hits = 0;
  for (const auto& e : st.entries())
    if (e.offset[0] == 1 || e.offset[0] == -1) ++hits;
  CHECK(hits == 2);
}

TEST_CASE("conflicting mirror values are rejected") {
  CHECK_THROWS_AS(PrecisionStencil(1, {{{0}, 3.0}, {{1}, -1.0}, {{-1}, -0.5}}),
                  ConfigError);
}

TEST_CASE("empty entry list is rejected") {
  CHECK_THROWS_AS(PrecisionStencil(1, {}), ConfigError);
}

TEST_CASE("validated symbol matches the cosine sum") {
  TorusLattice lat(1, 8);
  PrecisionStencil st(1, {{{0}, 3.0}, {{1}, -1.0}});
  const auto sym = st.validated_symbol(lat);
  REQUIRE(static_cast<int>(sym.size()) == 8);
  // m(theta_k) = 3 - 2 cos(2 pi k / 8)
  CHECK(sym[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sym[4] == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(sym[1] == doctest::Approx(3.0 - std::sqrt(2.0)).epsilon(1e-13));
  CHECK(sym[1] == doctest::Approx(sym[7]).epsilon(1e-14));  // even in k
}

TEST_CASE("symbol validation rejects non-positive multipliers") {
  TorusLattice lat(1, 8);
  // m(0) = 1 - 1.2 < 0: the quadratic form loses positivity
  PrecisionStencil bad(1, {{{0}, 1.0}, {{1}, -0.6}});
  CHECK_THROWS_AS(bad.validated_symbol(lat), ConfigError);
}

TEST_CASE("symbol validation rejects a torus smaller than the coupling") {
  // range-2 stencil on L = 4: wrapped offsets would alias (L <= 2R)
  TorusLattice tiny(1, 4);
  PrecisionStencil st(1, {{{0}, 5.0}, {{1}, -1.0}, {{2}, -0.5}});
  CHECK_THROWS_AS(st.validated_symbol(tiny), ConfigError);
}

TEST_CASE("two dimensional symbol is the sum over axes") {
  TorusLattice lat(2, 6);
  PrecisionStencil st(2, {{{0, 0}, 5.0}, {{1, 0}, -1.0}, {{0, 1}, -0.5}});
  const auto sym = st.validated_symbol(lat);
  const double pi = 3.14159265358979323846;
  for (int k0 : {0, 1, 3}) {
    for (int k1 : {0, 2}) {
      const std::array<int, 2> f{k0, k1};
      const double want = 5.0 - 2.0 * std::cos(2 * pi * k0 / 6.0) -
                          1.0 * std::cos(2 * pi * k1 / 6.0);
      CHECK(sym[lat.site(f)] == doctest::Approx(want).epsilon(1e-13));
    }
  }
}
