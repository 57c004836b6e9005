#include "flatbill/unfold.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace flatbill;

namespace {

std::vector<Rational> cone_multiset(const Surface& S) {
  std::vector<Rational> v;
  for (const auto& cls : S.classes) v.push_back(cls.cone_angle.value());
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Rational> angles_pi(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("pillowcase doubles") {
  Surface S = pillowcase_double(realize(make_right_triangle(1, 2)));
  CHECK(S.kind == SurfaceKind::cone);
  CHECK(S.copy_count() == 2);
  CHECK(S.genus() == 0);
  CHECK(cone_multiset(S) ==
        angles_pi({Rational(1, 2), Rational(1, 2), Rational(1)}));

  S = pillowcase_double(realize(make_right_triangle(3, 8)));
  CHECK(cone_multiset(S) ==
        angles_pi({Rational(3, 8), Rational(5, 8), Rational(1)}));

  Polygon square;
  square.vertices = {Vec(Rational(0), Rational(0)), Vec(Rational(1), Rational(0)),
                     Vec(Rational(1), Rational(1)), Vec(Rational(0), Rational(1))};
  square.angles.assign(4, Angle(1, 2));
  S = pillowcase_double(square);
  CHECK(cone_multiset(S) ==
        angles_pi({Rational(1), Rational(1), Rational(1), Rational(1)}));
}

TEST_CASE("full unfolding of the 45-45-90 triangle is a torus of area 4") {
  Polygon P = realize(make_right_triangle(1, 2));  // legs 1
  REQUIRE(P.edge(2).norm2() == Cyc(1));
  Surface S = unfold(P);
  CHECK(S.copy_count() == 8);
  CHECK(S.kind == SurfaceKind::translation);
  CHECK(S.genus() == 1);
  CHECK(S.area() == Cyc(4));
  StratumSignature sig = stratum_of(S);
  CHECK(sig.abelian);
  CHECK(sig.orders.empty());
  CHECK(sig.marked_regular == 0);
}

TEST_CASE("full unfolding of the equilateral triangle is the hexagonal torus") {
  Surface S = unfold(realize(make_isosceles(1, 1, 3)));
  CHECK(S.copy_count() == 6);
  CHECK(S.genus() == 1);
  // six unit-side triangles carry the same area as the unit-circumradius hexagon
  CHECK(S.area() == make_hex_torus().area());
}

TEST_CASE("unfold(Q_{3,8}) lies in H(2,4)") {
  Surface S = unfold(realize(make_right_triangle(3, 8)));
  CHECK(S.copy_count() == 32);
  CHECK(S.genus() == 4);
  StratumSignature sig = stratum_of(S);
  CHECK(sig.abelian);
  CHECK(sig.orders == std::vector<long>{4, 2});
  CHECK(sig.str() == "H(4,2)");
  CHECK(riemann_hurwitz_genus(realize(make_right_triangle(3, 8))) == 4);
}

TEST_CASE("Riemann-Hurwitz genus matches the constructed unfolding") {
  std::vector<Polygon> ps;
  for (long n = 2; n <= 7; ++n)
    for (long a = 1; a < n; a += 2)
      if (std::gcd(a, 2 * n) == 1) ps.push_back(realize(make_right_triangle(a, n)));
  ps.push_back(realize(make_isosceles(2, 3, 7)));
  ps.push_back(realize(make_isosceles(1, 2, 4)));
  ps.push_back(realize(make_parallelogram(2, 3, 5, Rational(1, 2))));
  for (const Polygon& P : ps)
    CHECK(riemann_hurwitz_genus(P) == unfold(P).genus());
}

TEST_CASE("partial unfolding of right triangles") {
  SUBCASE("Q_{3,8} in Q(1,3,-1^8)") {
    Surface S = partial_unfold(realize(make_right_triangle(3, 8)));
    CHECK(S.kind == SurfaceKind::half_translation);
    CHECK(S.copy_count() == 16);
    CHECK(S.degree_over_double == Rational(8));
    StratumSignature sig = stratum_of(S);
    CHECK(!sig.abelian);
    CHECK(sig.orders == std::vector<long>({3, 1, -1, -1, -1, -1, -1, -1, -1, -1}));
    CHECK(sig.str() == "Q(3,1,-1^8)");
  }
  SUBCASE("Q_{1,2} is pillowcase-like: cone angles (1,1,1,1)pi") {
    Surface S = partial_unfold(realize(make_right_triangle(1, 2)));
    CHECK(S.genus() == 0);
    auto cones = cone_multiset(S);
    CHECK(std::count(cones.begin(), cones.end(), Rational(1)) == 4);
  }
  SUBCASE("cone angle multiset is (a, n-a, 1^n) pi for all small (a,n)") {
    for (long n = 2; n <= 8; ++n)
      for (long a = 1; a < n; a += 2) {
        if (std::gcd(a, 2 * n) != 1) continue;
        Surface S = partial_unfold(realize(make_right_triangle(a, n)));
        CHECK(S.degree_over_double == Rational(n));
        std::vector<Rational> expect(static_cast<size_t>(n), Rational(1));
        expect.push_back(Rational(a));
        expect.push_back(Rational(n - a));
        CHECK(cone_multiset(S) == angles_pi(expect));
      }
  }
}

TEST_CASE("partial unfolding of the odd isosceles triangle iso(2,3,7)") {
  Surface S = partial_unfold(realize(make_isosceles(2, 3, 7)));
  CHECK(S.kind == SurfaceKind::half_translation);
  StratumSignature sig = stratum_of(S);
  CHECK(!sig.abelian);
  std::vector<long> expect = {2, 1};
  expect.insert(expect.end(), 7, -1);
  CHECK(sig.orders == expect);
  CHECK(sig.str() == "Q(2,1,-1^7)");
}

TEST_CASE("partial unfolding of an odd parallelogram") {
  Surface S = partial_unfold(realize(make_parallelogram(2, 3, 5, Rational(1, 2))));
  CHECK(S.kind == SurfaceKind::half_translation);
  CHECK(S.copy_count() == 10);
  StratumSignature sig = stratum_of(S);
  std::vector<long> expect = {4, 2};
  expect.insert(expect.end(), 10, -1);
  CHECK(sig.orders == expect);
  CHECK(sig.str() == "Q(4,2,-1^10)");
}

TEST_CASE("degree tower: full unfolding doubles the partial one") {
  for (const PolySpec& spec :
       {make_right_triangle(3, 8), make_isosceles(2, 3, 7), make_isosceles(1, 2, 4),
        make_parallelogram(2, 3, 5, Rational(1, 2))}) {
    Polygon P = realize(spec);
    CHECK(unfold(P).area() == partial_unfold(P).area() * Rational(2));
  }
}

TEST_CASE("marking billiard points on the partial unfolding of Q_{3,8}") {
  Surface S = partial_unfold(realize(make_right_triangle(3, 8)));
  std::vector<Vec> pts = {
      Vec(Rational(1), Rational(0)),        // the a pi/2n vertex: one preimage
      Vec(Rational(1, 2), Rational(0)),     // boundary, non-vertex: n preimages
      Vec(Rational(1, 4), Rational(1, 8)),  // interior: 2n preimages
      Vec(Rational(0), Rational(0)),        // right-angle vertex: the n poles pair up
  };
  std::vector<long> counts = mark_billiard_points(S, pts);
  CHECK(counts == std::vector<long>({1, 8, 16, 8}));
  CHECK(S.interior_marks.size() == 16);

  CHECK_THROWS_AS(mark_billiard_points(S, {Vec(Rational(5), Rational(5))}),
                  domain_error);
  Surface torus = make_square_torus();
  CHECK_THROWS_AS(mark_billiard_points(torus, {Vec(Rational(1, 2), Rational(1, 2))}),
                  domain_error);
}

TEST_CASE("point location in a polygon") {
  Polygon P = realize(make_right_triangle(1, 2));
  CHECK(locate_point(P, Vec(Rational(0), Rational(0))).where == PointLocation::vertex);
  auto le = locate_point(P, Vec(Rational(1, 2), Rational(0)));
  CHECK(le.where == PointLocation::edge);
  CHECK(le.index == 0);
  CHECK(locate_point(P, Vec(Rational(1, 4), Rational(1, 4))).where ==
        PointLocation::interior);
  CHECK(locate_point(P, Vec(Rational(2), Rational(2))).where == PointLocation::outside);
  CHECK(locate_point(P, Vec(Rational(1, 2), Rational(1, 2))).where ==
        PointLocation::edge);  // on the hypotenuse
}
