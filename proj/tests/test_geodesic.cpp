#include "flatbill/geodesic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "flatbill/unfold.hpp"

using namespace flatbill;

namespace {

// independent lattice oracle: unoriented saddle connections on the unit
// square torus with one marked point are the primitive integer vectors
long torus_oracle_count(long cap2) {
  long R = (long)std::floor(std::sqrt((double)cap2)) + 1;
  long n = 0;
  for (long x = -R; x <= R; ++x)
    for (long y = 0; y <= R; ++y) {
      if (y == 0 && x <= 0) continue;
      if (x * x + y * y > cap2) continue;
      if (std::gcd(std::labs(x), std::labs(y)) != 1) continue;
      ++n;
    }
  return n;
}

Rational len2_of(const SaddleConnection& sc) {
  REQUIRE(sc.len2.is_rational());
  return sc.len2.rational_value();
}

}  // namespace

TEST_CASE("torus saddle connections match the lattice oracle") {
  Surface S = make_square_torus();
  for (long L = 1; L <= 8; ++L) {
    auto scs = enumerate_saddle_connections(S, Rational(L));
    CHECK((long)scs.size() == torus_oracle_count(L * L));
  }
  auto scs = enumerate_saddle_connections(S, Rational(20));
  CHECK((long)scs.size() == torus_oracle_count(400));

  // exact holonomies at L = 2
  auto small = enumerate_saddle_connections(S, Rational(2));
  REQUIRE(small.size() == 4);
  auto has_hol = [&](long x, long y) {
    Vec v{Rational(x), Rational(y)};
    for (const auto& sc : small)
      if (sc.hol == v) return true;
    return false;
  };
  CHECK(has_hol(1, 0));
  CHECK(has_hol(0, 1));
  CHECK(has_hol(1, 1));
  CHECK(has_hol(-1, 1));
  for (const auto& sc : small) {
    CHECK(sc.src == sc.dst);
    CHECK(sc.len2 == sc.hol.norm2());
  }
}

TEST_CASE("enumeration is a monotone prefix in the bound") {
  Surface S = make_square_torus();
  auto a = enumerate_saddle_connections(S, Rational(3));
  auto b = enumerate_saddle_connections(S, Rational(5));
  REQUIRE(a.size() < b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].hol == b[i].hol);
    CHECK(a[i].path == b[i].path);
    CHECK(a[i].src == b[i].src);
    CHECK(a[i].dst == b[i].dst);
  }
}

TEST_CASE("enumeration input checking") {
  Surface S = make_square_torus();
  CHECK_THROWS_AS(enumerate_saddle_connections(S, Rational(0)), domain_error);
  CHECK_THROWS_AS(enumerate_saddle_connections(S, Rational(-1)), domain_error);

  Polygon tri = realize(make_right_triangle(1, 2));
  Surface cone = pillowcase_double(tri);
  CHECK_THROWS_AS(enumerate_saddle_connections(cone, Rational(1)), domain_error);

  // empty endpoint filter keeps nothing
  EnumOptions opt;
  opt.endpoint_filter = {{std::vector<SiteRef>{}, std::vector<SiteRef>{}}};
  CHECK(enumerate_saddle_connections(S, Rational(3), opt).empty());
}

TEST_CASE("interior marks as endpoints on the torus") {
  Surface S = make_square_torus();
  S.interior_marks.push_back({0, Vec(Rational(1, 3), Rational(1, 3)), 0});

  EnumOptions opt;
  opt.endpoint_filter = {{std::vector<SiteRef>{{SiteRef::Type::mark, 0}},
                          std::vector<SiteRef>{{SiteRef::Type::cone, 0}}}};
  auto scs = enumerate_saddle_connections(S, Rational(1), opt);
  // offsets (a - 1/3, b - 1/3) of squared length <= 1
  REQUIRE(scs.size() == 4);
  std::multiset<Rational> lens;
  for (const auto& sc : scs) {
    lens.insert(len2_of(sc));
    bool mc = sc.src == SiteRef{SiteRef::Type::mark, 0} &&
              sc.dst == SiteRef{SiteRef::Type::cone, 0};
    bool cm = sc.dst == SiteRef{SiteRef::Type::mark, 0} &&
              sc.src == SiteRef{SiteRef::Type::cone, 0};
    CHECK((mc || cm));
  }
  std::multiset<Rational> want{Rational(2, 9), Rational(5, 9), Rational(5, 9),
                               Rational(8, 9)};
  CHECK(lens == want);

  // with marks transparent the torus has no endpoints left at all
  EnumOptions off;
  off.treat_marked_as_singular = false;
  Surface T = make_square_torus();
  CHECK(enumerate_saddle_connections(T, Rational(3), off).empty());
}

TEST_CASE("torus cylinders up to length 2") {
  Surface S = make_square_torus();
  CylinderSet R = cylinders_up_to(S, Rational(2));
  REQUIRE(R.cylinders.size() == 4);
  std::multiset<Rational> circs;
  for (const Cylinder& c : R.cylinders) {
    CHECK(c.kind == Cylinder::Kind::simple);
    CHECK(c.area == Cyc(1));
    // area = circumference * height, exactly
    CHECK(c.circumference2 * c.height2 == c.area * c.area);
    REQUIRE(c.boundary_top.size() == 1);
    REQUIRE(c.boundary_bottom.size() == 1);
    CHECK(c.boundary_top[0] == c.boundary_bottom[0]);
    CHECK(parallel(c.direction, R.connections[c.boundary_top[0]].hol));
    REQUIRE(c.circumference2.is_rational());
    circs.insert(c.circumference2.rational_value());
  }
  CHECK(circs == std::multiset<Rational>{Rational(1), Rational(1), Rational(2),
                                         Rational(2)});

  // with the marked point transparent there is nothing to cut along
  CHECK(cylinders_up_to(S, Rational(2), false).cylinders.empty());

  // interior marked points are not supported by the cut machinery
  Surface M = make_square_torus();
  M.interior_marks.push_back({0, Vec(Rational(1, 3), Rational(1, 3)), 0});
  CHECK_THROWS_AS(cylinders_up_to(M, Rational(2)), domain_error);
}

TEST_CASE("torus cylinder graph and area partition") {
  Surface S = make_square_torus();
  CylinderGraph G = cylinder_graph(S, Vec(Rational(1), Rational(0)));
  REQUIRE(G.cylinders.size() == 1);
  CHECK(G.cylinders[0].circumference2 == Cyc(1));
  CHECK(G.cylinders[0].height2 == Cyc(1));
  CHECK(G.cylinders[0].area == Cyc(1));
  REQUIRE(G.edges.size() == 1);
  CHECK(G.edges[0] == std::pair<int, int>(0, 0));

  CHECK(area_partition_check(S, Vec(Rational(1), Rational(0))));
  CHECK(area_partition_check(S, Vec(Rational(1), Rational(1))));
  CHECK(area_partition_check(S, Vec(Rational(3), Rational(-2))));

  // irrational slope: not periodic
  Cyc sqrt3 = Cyc::zeta(12, 1) + Cyc::zeta(12, -1);  // 2 cos(pi/6)
  Vec irr(Cyc(1) + sqrt3 * Cyc::zeta(4, 1));
  CHECK_FALSE(area_partition_check(S, irr));

  CHECK(area_partition_check(make_hex_torus(), Vec(Rational(1), Rational(0))));
}

TEST_CASE("staircase horizontal decomposition") {
  Surface S = make_staircase(1);
  CylinderGraph G = cylinder_graph(S, Vec(Rational(1), Rational(0)));
  REQUIRE(G.cylinders.size() == 2);
  int wide = G.cylinders[0].circumference2 == Cyc(4) ? 0 : 1;
  int tall = 1 - wide;
  CHECK(G.cylinders[wide].circumference2 == Cyc(4));
  CHECK(G.cylinders[wide].area == Cyc(2));
  CHECK(G.cylinders[wide].height2 == Cyc(1));
  CHECK(G.cylinders[tall].circumference2 == Cyc(1));
  CHECK(G.cylinders[tall].area == Cyc(1));
  CHECK(G.cylinders[tall].height2 == Cyc(1));
  // the two cylinders feed each other, and the wide one also feeds itself
  auto has = [&](int i, int j) {
    return std::find(G.edges.begin(), G.edges.end(),
                     std::pair<int, int>(i, j)) != G.edges.end();
  };
  CHECK(has(wide, tall));
  CHECK(has(tall, wide));
  CHECK(area_partition_check(S, Vec(Rational(1), Rational(0))));
  CHECK(area_partition_check(S, Vec(Rational(0), Rational(1))));
  CHECK(area_partition_check(S, Vec(Rational(1), Rational(1))));
}

TEST_CASE("pillowcase-style half-translation cylinders") {
  // four copies of the isosceles right triangle: the quadratic pillowcase
  Surface S = partial_unfold(realize(make_right_triangle(1, 2)));
  REQUIRE(S.kind == SurfaceKind::half_translation);
  CHECK(stratum_of(S).str() == "Q(-1^4)");

  CylinderSet R = cylinders_up_to(S, Rational(3));
  REQUIRE(!R.cylinders.empty());
  for (const Cylinder& c : R.cylinders) {
    // every boundary of a pillowcase cylinder folds through two poles
    CHECK(c.kind == Cylinder::Kind::other);
    REQUIRE(c.boundary_top.size() == 2);
    REQUIRE(c.boundary_bottom.size() == 2);
    CHECK(c.boundary_top[0] == c.boundary_top[1]);
    CHECK(c.boundary_bottom[0] == c.boundary_bottom[1]);
    CHECK(c.circumference2 * c.height2 == c.area * c.area);
  }
  Cyc total(0);
  Vec horiz(Rational(1), Rational(0));
  for (const Cylinder& c : R.cylinders)
    if (parallel(c.direction, horiz)) total += c.area;
  CHECK(total == S.area());
  CHECK(area_partition_check(S, horiz));
}

TEST_CASE("unfolded right triangle cylinders are exact and deterministic") {
  Surface S = partial_unfold(realize(make_right_triangle(3, 8)));
  CylinderSet R1 = cylinders_up_to(S, Rational(3));
  CylinderSet R2 = cylinders_up_to(S, Rational(3));
  // the dihedral symmetry of the unfolding produces one orbit of eight
  REQUIRE(R1.cylinders.size() == 8);
  for (size_t i = 1; i < R1.cylinders.size(); ++i) {
    CHECK(R1.cylinders[i].circumference2 == R1.cylinders[0].circumference2);
    CHECK(R1.cylinders[i].kind == Cylinder::Kind::envelope);
  }
  REQUIRE(R1.connections.size() == R2.connections.size());
  REQUIRE(R1.cylinders.size() == R2.cylinders.size());
  for (size_t i = 0; i < R1.cylinders.size(); ++i) {
    const Cylinder& c = R1.cylinders[i];
    CHECK(c.circumference2 == R2.cylinders[i].circumference2);
    CHECK(c.circumference2 * c.height2 == c.area * c.area);
    CHECK((c.circumference2 - c.circumference2.conj()).is_zero());
  }
}
