#include <doctest.h>

#include "flatbill/polygon.hpp"

#include <algorithm>
#include <cmath>

using namespace flatbill;

static std::vector<Angle> sorted_angles(const Polygon& P) {
  auto v = P.angles;
  std::sort(v.begin(), v.end());
  return v;
}

TEST_CASE("normalize_right") {
  CHECK(normalize_right(1, 2, 6) == std::pair<long, long>{1, 3});
  CHECK(normalize_right(3, 5, 16) == std::pair<long, long>{3, 8});
  CHECK(normalize_right(2, 3, 10) == std::pair<long, long>{3, 5});
  // idempotent: re-normalizing the output parameters is a fixed point
  auto [a, n] = normalize_right(2, 3, 10);
  CHECK(normalize_right(a, n - a, 2 * n) == std::pair<long, long>{a, n});
  CHECK_THROWS_AS(normalize_right(1, 2, 7), domain_error);
  CHECK_THROWS_AS(normalize_right(2, 4, 12), domain_error);
}

TEST_CASE("right triangle construction") {
  PolySpec s = make_right_triangle(3, 8);
  CHECK(s.angles.size() == 3);
  CHECK(std::count(s.angles.begin(), s.angles.end(), Angle(3, 16)) == 1);
  CHECK(std::count(s.angles.begin(), s.angles.end(), Angle(5, 16)) == 1);
  CHECK(std::count(s.angles.begin(), s.angles.end(), Angle(1, 2)) == 1);
  CHECK_THROWS_AS(make_right_triangle(2, 5), domain_error);  // gcd(2,10) != 1

  Polygon P = realize(s);
  P.validate();
  // third vertex at (0, tan(3pi/16))
  CHECK(std::abs(P.vertices[2].y_approx() - std::tan(3 * M_PI / 16)) < 1e-12);
  CHECK(std::abs(P.area().real_approx() - 0.5 * std::tan(3 * M_PI / 16)) < 1e-12);

  Polygon Q = realize(make_right_triangle(1, 2));
  CHECK(Q.vertices[1] == Vec(Rational(1), Rational(0)));
  CHECK(Q.vertices[2] == Vec(Rational(0), Rational(1)));
}

TEST_CASE("isosceles and quadrilateral constructions") {
  CHECK_THROWS_AS(make_isosceles(2, 2, 7), domain_error);
  Polygon T = realize(make_isosceles(2, 3, 7));
  T.validate();
  CHECK(sorted_angles(T) == std::vector<Angle>{Angle(2, 7), Angle(2, 7), Angle(3, 7)});

  Polygon para = realize(make_parallelogram(2, 3, 5, Rational(1, 2)));
  para.validate();
  CHECK(para.size() == 4);
  CHECK_THROWS_AS(realize(make_parallelogram(2, 3, 5, Rational(0))), domain_error);

  PolySpec rt = make_right_trapezoid(3, 5, 8, Rational(1, 2));
  CHECK(rt.angles == std::vector<Angle>{Angle(3, 8), Angle(5, 8), Angle(1, 2), Angle(1, 2)});
  realize(rt).validate();
  // obtuse alpha needs t > 1
  CHECK_THROWS_AS(make_right_trapezoid(5, 3, 8, Rational(1, 2)), domain_error);
  realize(make_right_trapezoid(5, 3, 8, Rational(2))).validate();

  realize(make_isosceles_trapezoid(3, 5, 8, Rational(1))).validate();
}

TEST_CASE("glue_square") {
  Polygon T = realize(make_right_triangle(1, 2));  // 45-45-90
  // legs join the right-angle vertex (index 0) to 45-degree vertices
  Polygon G = glue_square(T, 2);  // edge from vertex 2 to vertex 0
  CHECK(G.size() == 5);
  auto a = sorted_angles(G);
  CHECK(std::count(a.begin(), a.end(), Angle(3, 4)) == 1);  // pi/4 + pi/2
  CHECK(std::count(a.begin(), a.end(), Angle(1, 1)) == 1);  // pi/2 vertex became marked
  CHECK(std::count(a.begin(), a.end(), Angle(1, 2)) == 2);  // square corners
  CHECK(G.area() == T.area() + T.edge(2).norm2());

  // rectangle is not almost-right
  Polygon rect;
  rect.vertices = {Vec(Rational(0), Rational(0)), Vec(Rational(2), Rational(0)),
                   Vec(Rational(2), Rational(1)), Vec(Rational(0), Rational(1))};
  rect.angles = std::vector<Angle>(4, Angle(1, 2));
  rect.validate();
  CHECK_THROWS_AS(glue_square(rect, 0), domain_error);
}

TEST_CASE("build_almost_right") {
  // seed case: the triangle itself
  Polygon T = build_almost_right({Angle(1, 4), Angle(1, 4), Angle(1, 2)});
  CHECK(T.size() == 3);

  // one gluing: (3/16, 5/16 + 1/2, 1/2, 1/2, 1) five angles, sum 3pi?
  // 3/16 + 13/16 + 1/2 + 1/2 + 1 = 3. yes
  Polygon P = build_almost_right(
      {Angle(3, 16), Angle(13, 16), Angle(1, 2), Angle(1, 2), Angle(1, 1)});
  CHECK(P.size() == 5);
  auto got = sorted_angles(P);
  CHECK(std::count(got.begin(), got.end(), Angle(13, 16)) == 1);

  // reflex corner: (3/16, 5/16, 3/2, 1/2, 1/2) sums to 3 = (5-2)
  Polygon R = build_almost_right(
      {Angle(3, 16), Angle(5, 16), Angle(3, 2), Angle(1, 2), Angle(1, 2)});
  CHECK(R.size() == 5);
  auto ra = sorted_angles(R);
  CHECK(std::count(ra.begin(), ra.end(), Angle(3, 2)) == 1);

  CHECK_THROWS_AS(build_almost_right({Angle(1, 3), Angle(1, 3), Angle(1, 3)}),
                  domain_error);
  CHECK_THROWS_AS(build_almost_right({Angle(1, 4), Angle(1, 4), Angle(1, 4)}),
                  domain_error);
}

TEST_CASE("polygon spec text parsing") {
  CHECK(parse_polygon_spec("right:a=3,n=8").family == Family::right_triangle);
  CHECK(parse_polygon_spec("iso:a=2,b=3,n=7").b == 3);
  CHECK(parse_polygon_spec("para:a=1,b=2,n=3,t=1/2").t == Rational(1, 2));
  CHECK(parse_polygon_spec("rtrap:a=3,b=5,n=8,t=1/2").family == Family::right_trapezoid);
  auto alm = parse_polygon_spec("almost:[3/16,5/16,1/2,1/2,3/2]");
  CHECK(alm.angles.size() == 5);
  CHECK(alm.angles[4] == Angle(3, 2));
  CHECK_THROWS_AS(parse_polygon_spec("hex:a=1"), domain_error);
  CHECK_THROWS_AS(parse_polygon_spec("right:a=2,n=5"), domain_error);
}

TEST_CASE("scaling") {
  Polygon P = realize(make_right_triangle(3, 8, Rational(2)));
  Polygon Q = realize(make_right_triangle(3, 8)).scaled(Rational(2));
  CHECK(P.vertices[1] == Q.vertices[1]);
  CHECK(P.area() == Q.area());
}
