#include "flatbill/svconstants.hpp"

#include <doctest.h>

using namespace flatbill;

namespace {

// independent oracle: plain product definition of the double factorial
mpz_class dfact_oracle(long k) {
  mpz_class r = 1;
  while (k > 0) {
    r *= k;
    k -= 2;
  }
  return r;
}

mpz_class fact(long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

PiRational pr(long num, long den, long pow) {
  return {Rational(num, den), pow};
}

}  // namespace

TEST_CASE("double factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(6) == 48);
  for (long k = -1; k <= 25; ++k) CHECK(double_factorial(k) == dfact_oracle(k));
  for (long k = 1; k <= 25; ++k)
    CHECK(double_factorial(k) * double_factorial(k - 1) == fact(k));
  CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
}

TEST_CASE("saddle connection constants") {
  CHECK(c_saddle(0, 0) == pr(1, 1, 0));
  CHECK(c_saddle(-1, 0) == pr(1, 2, 0));
  CHECK(c_saddle(1, -1) == pr(8, 1, -2));
  CHECK_THROWS_AS(c_saddle(-1, -1), std::domain_error);
  CHECK_THROWS_AS(c_saddle(-2, 0), std::domain_error);
  for (long d1 = -1; d1 <= 8; ++d1)
    for (long d2 = -1; d2 <= 8; ++d2) {
      if (d1 == -1 && d2 == -1) continue;
      PiRational c = c_saddle(d1, d2);
      CHECK(c == c_saddle(d2, d1));
      CHECK(c.coefficient > 0);
      CHECK(c.pi_power == ((d1 % 2 != 0 && d2 % 2 != 0) ? -2 : 0));
    }
}

TEST_CASE("per-stratum cylinder constants") {
  CHECK(c_env_stratum(1, 3) == pr(14, 1, -2));
  CHECK(c_simp_stratum(1, 3) == pr(28, 15, -2));
  CHECK(c_cyl_stratum(1, 3) == pr(238, 15, -2));
  CHECK_THROWS_AS(c_env_stratum(0, 1), std::domain_error);
  for (long k1 = 1; k1 <= 10; ++k1)
    for (long k2 = 1; k2 <= 10; ++k2) {
      CHECK(c_cyl_stratum(k1, k2) ==
            c_env_stratum(k1, k2) + c_simp_stratum(k1, k2));
      CHECK(c_cyl_stratum(k1, k2) == c_cyl_stratum(k2, k1));
      CHECK(c_env_stratum(k1, k2).coefficient > 0);
      CHECK(c_simp_stratum(k1, k2).coefficient > 0);
    }
}

TEST_CASE("double cover cylinder constants") {
  CHECK(c_cyl_abelian_double(1, 3) == pr(266, 15, -2));
  CHECK(c_cyl_hyp_double(1, 3) == pr(217, 15, -2));
  CHECK(c_cyl_abelian_double(1, 1) == pr(65, 6, -2));
  for (long k1 = 1; k1 <= 10; ++k1)
    for (long k2 = 1; k2 <= 10; ++k2) {
      CHECK(c_cyl_abelian_double(k1, k2) == c_cyl_abelian_double(k2, k1));
      CHECK(c_cyl_hyp_double(k1, k2) == c_cyl_hyp_double(k2, k1));
      // both covers carry at least the downstairs cylinders
      CHECK(c_cyl_abelian_double(k1, k2).coefficient >
            c_env_stratum(k1, k2).coefficient);
      CHECK(c_cyl_hyp_double(k1, k2).coefficient >
            c_env_stratum(k1, k2).coefficient);
    }
}

TEST_CASE("billiard band constants") {
  CHECK(c_right_triangle(3, 8) == pr(119, 1920, -1));
  CHECK(c_isosceles(2, 3, 7) == pr(1, 7, -1));
  CHECK(c_parallelogram(2, 3, 5) == pr(21, 40, -1));
  CHECK(c_right_trapezoid(3, 5, 8) == pr(119, 480, -1));

  CHECK_THROWS_AS(c_right_triangle(1, 5), std::domain_error);   // exceptional
  CHECK_THROWS_AS(c_right_triangle(3, 5), std::domain_error);   // n - a = 2
  CHECK_THROWS_AS(c_right_triangle(2, 5), std::domain_error);   // gcd
  CHECK_THROWS_AS(c_isosceles(1, 5, 7), std::domain_error);     // a = 1
  CHECK_THROWS_AS(c_isosceles(3, 4, 10), std::domain_error);    // b = 4
  CHECK_THROWS_AS(c_isosceles(2, 2, 6), std::domain_error);     // gcd
  CHECK_THROWS_AS(c_parallelogram(1, 2, 3), std::domain_error); // min = 1
  CHECK_THROWS_AS(c_parallelogram(1, 1, 2), std::domain_error); // n = 2
  CHECK_THROWS_AS(c_right_trapezoid(1, 7, 8), std::domain_error);

  // symmetry where the formulas are symmetric
  CHECK(c_isosceles(3, 5, 11) == c_isosceles(3, 5, 11));
  CHECK(c_parallelogram(2, 3, 5) == c_parallelogram(3, 2, 5));
  CHECK(c_right_trapezoid(3, 5, 8) == c_right_trapezoid(5, 3, 8));
}

TEST_CASE("generalized diagonal constants") {
  Polygon P = realize(make_right_triangle(3, 8));
  // locate the three vertices by their angles
  size_t v_small = 99, v_large = 99, v_right = 99;
  for (size_t i = 0; i < 3; ++i) {
    if (P.angles[i] == Angle(3, 16)) v_small = i;
    if (P.angles[i] == Angle(5, 16)) v_large = i;
    if (P.angles[i] == Angle(1, 2)) v_right = i;
  }
  REQUIRE(v_small < 3);
  REQUIRE(v_large < 3);
  REQUIRE(v_right < 3);

  // vertex of angle 3pi/16 against the right-angle vertex
  DiagConstant d = c_diag_right_triangle(3, 8, PointSpec::vertex(v_small),
                                         PointSpec::vertex(v_right));
  CHECK(d.general == pr(1, 4, -1));

  // two interior points: the two normalizations disagree by a factor of 2
  DiagConstant di = c_diag_right_triangle(
      3, 8, PointSpec::barycenter(),
      PointSpec::interior(Rational(1, 8), Rational(1, 16)));
  CHECK(di.general == pr(1, 1, 1));
  CHECK(di.angle_product == pr(2, 1, 1));

  // interior against a vertex of angle 5pi/16: d = 3, n2 = 2n
  DiagConstant dv = c_diag_right_triangle(3, 8, PointSpec::vertex(v_large),
                                          PointSpec::barycenter());
  // c_saddle(3, 0) = (5!! 4!! 1!!)/(4!! 3!! 0!!) / 2 = 5/2
  CHECK(dv.general == PiRational(Rational(1 * 16, 4 * 64) * Rational(5, 2), 1));

  CHECK_THROWS_AS(c_diag_right_triangle(3, 8, PointSpec::barycenter(),
                                        PointSpec::barycenter()),
                  std::domain_error);  // same point
  CHECK_THROWS_AS(c_diag_right_triangle(3, 8, PointSpec::edge_midpoint(0),
                                        PointSpec::edge_midpoint(1)),
                  std::domain_error);  // two poles
  CHECK_THROWS_AS(c_diag_right_triangle(1, 4, PointSpec::barycenter(),
                                        PointSpec::vertex(0)),
                  std::domain_error);  // exceptional triangle
}

TEST_CASE("PiRational rendering") {
  CHECK(c_cyl_stratum(1, 3).str() == "238/15 · π^-2");
  CHECK(pr(1, 4, -1).str() == "1/4 · π^-1");
  CHECK(pr(2, 1, 1).str() == "2 · π");
  CHECK(pr(3, 2, 0).str() == "3/2");
  CHECK(pr(1, 4, -1).approx() == doctest::Approx(0.25 / 3.14159265358979).epsilon(1e-9));
  CHECK_THROWS_AS(pr(1, 1, 0) + pr(1, 1, 1), std::domain_error);
}

TEST_CASE("point specs resolve on polygons") {
  Polygon P = realize(make_right_triangle(1, 2, Rational(1)));  // legs 1
  CHECK(PointSpec::vertex(0).resolve(P) == P.vertex(0));
  CHECK(PointSpec::edge_midpoint(0).resolve(P) ==
        P.vertex(0) + P.edge(0) * Rational(1, 2));
  CHECK(PointSpec::boundary(0, Rational(1, 2)).resolve(P) ==
        PointSpec::edge_midpoint(0).resolve(P));
  CHECK_THROWS_AS(PointSpec::vertex(7).resolve(P), std::domain_error);
  CHECK_THROWS_AS(PointSpec::boundary(0, Rational(3, 2)).resolve(P),
                  std::domain_error);
  CHECK_THROWS_AS(PointSpec::interior(Rational(5), Rational(5)).resolve(P),
                  std::domain_error);
  CHECK(PointSpec::barycenter().str() == "barycenter");
  CHECK(PointSpec::vertex(1) == PointSpec::vertex(1));
  CHECK_FALSE(PointSpec::vertex(1) == PointSpec::vertex(2));
}
