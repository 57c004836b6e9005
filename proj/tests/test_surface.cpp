#include "flatbill/surface.hpp"

#include <doctest.h>

using namespace flatbill;

TEST_CASE("square torus fixture") {
  Surface S = make_square_torus();
  CHECK(S.kind == SurfaceKind::translation);
  CHECK(S.copy_count() == 1);
  CHECK(S.classes.size() == 1);
  CHECK(S.classes[0].cone_angle == Angle(2, 1));
  CHECK(S.classes[0].corners.size() == 4);
  CHECK(S.classes[0].marked);
  CHECK(S.genus() == 1);
  CHECK(S.area() == Cyc(1));

  StratumSignature sig = stratum_of(S);
  CHECK(sig.abelian);
  CHECK(sig.orders.empty());
  CHECK(sig.marked_regular == 1);
  CHECK(sig.str() == "H(0)");

  Surface big = make_square_torus(Rational(3, 2));
  CHECK(big.area() == Cyc(Rational(9, 4)));

  auto [sign, t] = S.gluing_transform(0, 0);
  CHECK(sign == +1);
  CHECK(t == Vec(Rational(0), Rational(1)));
}

TEST_CASE("hexagonal torus fixture") {
  Surface S = make_hex_torus();
  CHECK(S.genus() == 1);
  CHECK(S.classes.size() == 2);
  for (const auto& cls : S.classes) {
    CHECK(cls.cone_angle == Angle(2, 1));
    CHECK(cls.corners.size() == 3);
  }
  // area of the regular hexagon with unit circumradius: 3 sin(pi/3)
  CHECK(S.area() == sin_of(Angle(1, 3)) * Rational(3));
  CHECK(stratum_of(S).str() == "H(0^2)");
}

TEST_CASE("staircase fixtures live in H(2)") {
  for (long m : {1L, 2L}) {
    Surface S = make_staircase(m);
    CHECK(S.genus() == 2);
    CHECK(S.classes.size() == 1);
    CHECK(S.classes[0].cone_angle == Angle(6, 1));
    CHECK(S.classes[0].corners.size() == 8);
    CHECK(S.area() == Cyc(2 + m));
    StratumSignature sig = stratum_of(S);
    CHECK(sig.abelian);
    CHECK(sig.orders == std::vector<long>{2});
    CHECK(sig.str() == "H(2)");
  }
}

TEST_CASE("cone angles certified without labels") {
  Surface S = make_staircase(1);
  S.copies[0].angles.clear();
  S.compute_classes();
  CHECK(S.classes.size() == 1);
  CHECK(S.classes[0].cone_angle == Angle(6, 1));
  S.check();
}

TEST_CASE("structural checks reject broken gluings") {
  Surface S = make_square_torus();
  Surface bad = S;
  bad.gluings[0][0] = {0, 1, +1};  // wrong partner: involution breaks
  CHECK_THROWS_AS(bad.check(), domain_error);

  bad = S;
  bad.gluings[0][0].sign = -1;
  bad.gluings[0][2].sign = -1;  // flip gluing, but edge vectors are opposite
  CHECK_THROWS_AS(bad.check(), domain_error);

  bad = S;
  bad.kind = SurfaceKind::half_translation;
  bad.gluings[0][0].sign = 0;  // reflection gluing outside a doubled polygon
  bad.gluings[0][2].sign = 0;
  CHECK_THROWS_AS(bad.check(), domain_error);
}

TEST_CASE("corner class lookup") {
  Surface S = make_staircase(2);
  for (int v = 0; v < 8; ++v) CHECK(S.corner_class(0, v) == 0);
  CHECK(S.euler_characteristic() == -2);
}
