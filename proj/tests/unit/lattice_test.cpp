#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "rotorlattice/lattice.hpp"

using namespace rotor;

TEST_CASE("site ids are row major with the first axis fastest") {
  TorusLattice lat(2, 4);
  CHECK(lat.num_sites() == 16);
  CHECK(lat.num_edges() == 32);

  const std::array<int, 2> c{1, 2};
  CHECK(lat.site(c) == 9);  // 1 + 4*2

  std::array<int, 2> back{};
  lat.coords(9, back);
  CHECK(back[0] == 1);
  CHECK(back[1] == 2);
  CHECK(lat.coord(9, 0) == 1);
  CHECK(lat.coord(9, 1) == 2);

  // coordinates wrap mod L in both directions
  const std::array<int, 2> wrapped{-1, 6};
  CHECK(lat.site(wrapped) == 11);  // (3, 2)
}

TEST_CASE("coordinate round trip covers every site") {
  TorusLattice lat(3, 5);
  std::array<int, 3> c{};
  for (int s = 0; s < lat.num_sites(); ++s) {
    lat.coords(s, c);
    CHECK(lat.site(c) == s);
  }
}

TEST_CASE("shift moves along one axis with periodic wrap") {
  TorusLattice lat(2, 4);
  CHECK(lat.shift(0, 0, 1) == 1);
  CHECK(lat.shift(0, 0, -1) == 3);
  CHECK(lat.shift(0, 1, 1) == 4);
  CHECK(lat.shift(0, 1, -1) == 12);
  CHECK(lat.shift(0, 0, 4) == 0);    // full loop
  CHECK(lat.shift(5, 0, 7) == lat.shift(5, 0, -1));

  const std::array<int, 2> off{1, 1};
  CHECK(lat.shift(15, off) == 0);  // (3,3) + (1,1) wraps to (0,0)
}

TEST_CASE("neighbors come in axis major order, minus direction first") {
  TorusLattice lat(2, 4);
  const auto nb = lat.neighbors(0);
  REQUIRE(nb.size() == 4);
  CHECK(nb[0] == 3);
  CHECK(nb[1] == 1);
  CHECK(nb[2] == 12);
  CHECK(nb[3] == 4);
}

TEST_CASE("offset_site indexes the wrapped coordinate difference") {
  TorusLattice lat(2, 4);
  for (int from : {0, 5, 11}) {
    for (int to : {0, 3, 14}) {
      std::array<int, 2> cf{}, ct{}, d{};
      lat.coords(from, cf);
      lat.coords(to, ct);
      for (int k = 0; k < 2; ++k) d[k] = (ct[k] - cf[k] + 4) % 4;
      CHECK(lat.offset_site(from, to) == lat.site(d));
    }
  }
  // translation invariance of the offset index
  CHECK(lat.offset_site(1, 6) == lat.offset_site(0, 5));
}

TEST_CASE("edge classes partition the bonds into vertex-disjoint halves") {
  for (int dim : {1, 2}) {
    TorusLattice lat(dim, 6);
    const auto classes = lat.edge_classes();
    REQUIRE(static_cast<int>(classes.size()) == 2 * dim);

    std::set<std::pair<int, int>> seen;
    for (const auto& cls : classes) {
      CHECK(static_cast<int>(cls.edges.size()) == lat.num_sites() / 2);
      // no vertex appears twice inside one class
      std::set<int> verts;
      for (const auto& e : cls.edges) {
        CHECK(e.b == lat.shift(e.a, cls.axis, 1));
        CHECK(verts.insert(e.a).second);
        CHECK(verts.insert(e.b).second);
        CHECK(seen.insert({e.a, e.b}).second);
      }
      // parity tags the base coordinate along the class axis
      for (const auto& e : cls.edges)
        CHECK(lat.coord(e.a, cls.axis) % 2 == cls.parity);
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == lat.num_edges());
  }
}

TEST_CASE("sublattice classes keep dependence sets disjoint for range 1") {
  const int range = 1;
  TorusLattice lat(1, 12);
  const auto classes = lat.sublattice_classes(range);

  std::set<std::pair<int, int>> seen;
  for (const auto& cls : classes) {
    CHECK(cls.stride == range + 2);
    // the flow of edge (a,b) writes {a,b} and reads their range-1 halo;
    // within a class no write site may appear in another edge's halo
    std::set<int> touched;
    for (const auto& e : cls.edges) {
      CHECK(seen.insert({e.a, e.b}).second);
      for (int d = -range; d <= 1 + range; ++d) {
        const int s = lat.shift(e.a, cls.axis, d);
        if (d == 0 || d == 1) CHECK(touched.count(s) == 0);
      }
      for (int d = -range; d <= 1 + range; ++d)
        touched.insert(lat.shift(e.a, cls.axis, d));
    }
  }
  CHECK(static_cast<std::int64_t>(seen.size()) == lat.num_edges());
}

TEST_CASE("sublattice classes cover two dimensions as well") {
  TorusLattice lat(2, 6);
  const auto classes = lat.sublattice_classes(1);
  std::set<std::pair<int, int>> seen;
  for (const auto& cls : classes)
    for (const auto& e : cls.edges) {
      CHECK(e.b == lat.shift(e.a, cls.axis, 1));
      CHECK(seen.insert({e.a, e.b}).second);
    }
  CHECK(static_cast<std::int64_t>(seen.size()) == lat.num_edges());
}
