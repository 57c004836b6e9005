#include <doctest.h>

#include "flatbill/cyclotomic.hpp"
#include "flatbill/plane.hpp"

#include <cmath>
#include <random>

using namespace flatbill;

TEST_CASE("roots of unity satisfy their defining relations") {
  CHECK(Cyc::zeta(4) * Cyc::zeta(4) == Cyc(-1));
  CHECK(Cyc(1) + Cyc::zeta(3) + Cyc::zeta(3, 2) == Cyc(0));
  CHECK(Cyc::zeta(8).conj() * Cyc::zeta(8) == Cyc(1));
  CHECK(Cyc::zeta(8, 8) == Cyc(1));
  CHECK(Cyc::zeta(12, 6) == Cyc(-1));
}

TEST_CASE("mixed-order arithmetic lifts to the compositum") {
  // zeta_6 = 1 + zeta_3
  CHECK(Cyc::zeta(6) == Cyc(1) + Cyc::zeta(3));
  Cyc x = Cyc::zeta(3) + Cyc::zeta(4);
  CHECK(x.order() == 12);
  CHECK(x - Cyc::zeta(4) == Cyc::zeta(3));
}

TEST_CASE("certified signs of real combinations") {
  Cyc sqrt2 = Cyc::zeta(8) + Cyc::zeta(8, 7);  // 2 cos(pi/4)
  CHECK(sqrt2.sign_real() == Sign::positive);
  CHECK((sqrt2 * sqrt2) == Cyc(2));
  CHECK((sqrt2 - Cyc(2)).sign_real() == Sign::negative);

  Cyc c72 = Cyc::zeta(5) + Cyc::zeta(5, 4);  // 2 cos(72 deg) = 0.618...
  CHECK((c72 - Cyc(Rational(1, 2))).sign_real() == Sign::positive);
  CHECK((c72 - Cyc(Rational(2, 3))).sign_real() == Sign::negative);
  // golden ratio relation makes it an exact zero
  CHECK((c72 * c72 + c72 - Cyc(1)).sign_real() == Sign::zero);
  // numeric oracle
  CHECK(std::abs(c72.real_approx() - 2 * std::cos(2 * M_PI / 5)) < 1e-12);
}

TEST_CASE("sign_real rejects non-real input") {
  CHECK_THROWS_AS((void)Cyc::zeta(8).sign_real(), domain_error);
}

TEST_CASE("sign negation symmetry") {
  Cyc v = Cyc::zeta(7) + Cyc::zeta(7, 6) - Cyc(Rational(5, 4));
  REQUIRE(v.sign_real() != Sign::zero);
  CHECK(static_cast<int>((-v).sign_real()) == -static_cast<int>(v.sign_real()));
}

TEST_CASE("division is exact field division") {
  Cyc a = Cyc(3) + Cyc::zeta(5) * Rational(2) - Cyc::zeta(5, 3);
  Cyc b = Cyc(1) - Cyc::zeta(5, 2);
  Cyc q = a / b;
  CHECK(q * b == a);
  CHECK((Cyc(1) / Cyc::zeta(12)) == Cyc::zeta(12, 11));
  CHECK_THROWS_AS((void)(a / Cyc(0)), domain_error);
}

TEST_CASE("field axioms on pseudo-random triples") {
  std::mt19937 rng(20260826);
  auto frac = [](long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
  };
  auto rand_val = [&](long order) {
    Cyc v(Rational(long(rng() % 7) - 3));
    long d = euler_phi(order);
    for (long k = 1; k < d; k += 1 + long(rng() % 2))
      v += Cyc::zeta(order, k) * frac(long(rng() % 9) - 4, 1 + long(rng() % 5));
    return v;
  };
  for (long order : {5L, 8L, 12L, 16L}) {
    for (int trial = 0; trial < 8; ++trial) {
      Cyc a = rand_val(order), b = rand_val(order), c = rand_val(order);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      if (!b.is_zero()) CHECK((a / b) * b == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
}

TEST_CASE("enclosures are nested and consistent") {
  Cyc x = Cyc::zeta(9) + Cyc::zeta(9, 2) * Rational(3, 7) - Cyc(Rational(1, 3));
  auto wide = x.enclosure(64);
  auto tight = x.enclosure(512);
  CHECK(wide.re_lo <= tight.re_lo);
  CHECK(tight.re_hi <= wide.re_hi);
  CHECK(wide.im_lo <= tight.im_lo);
  CHECK(tight.im_hi <= wide.im_hi);
  CHECK(tight.re_hi - tight.re_lo < 1e-15);  // double output: one ulp floor
  double ref = std::cos(2 * M_PI / 9) + (3.0 / 7) * std::cos(4 * M_PI / 9) - 1.0 / 3;
  CHECK(wide.re_lo <= ref);
  CHECK(ref <= wide.re_hi);
}

TEST_CASE("rational detection and extraction") {
  Cyc x = Cyc::zeta(5) * Rational(0) + Cyc(Rational(22, 7));
  CHECK(x.is_rational());
  CHECK(x.rational_value() == Rational(22, 7));
  CHECK_FALSE(Cyc::zeta(5).is_rational());
}

TEST_CASE("plane vectors: exact predicates") {
  Vec e1(Rational(1), Rational(0));
  Vec e2(Rational(0), Rational(1));
  CHECK(cross_sign(e1, e2) == Sign::positive);
  CHECK(cross_sign(e2, e1) == Sign::negative);
  CHECK(dot_sign(e1, e1) == Sign::positive);
  CHECK(dot_sign(e1, e2) == Sign::zero);
  CHECK(cross(e1, e2) == Cyc(1));
  CHECK(dot(e1 + e2, e1 - e2) == Cyc(0));

  Vec d = e1.rotated(Cyc::zeta(8));  // direction at 45 degrees
  CHECK(d.norm2() == Cyc(1));
  CHECK(parallel(d, d * Rational(-3)));
  CHECK_FALSE(parallel(d, e1));
  CHECK(compare_norm(d, e1) == std::strong_ordering::equal);
  CHECK(compare_norm2_to(d + e1, Rational(4)) == std::strong_ordering::less);
  CHECK(compare_norm(d + e1, e2) == std::strong_ordering::greater);

  // re/im round trip
  Vec v(Rational(3, 4), Rational(-2, 5));
  CHECK(v.re() == Cyc(Rational(3, 4)));
  CHECK(v.im() == Cyc(Rational(-2, 5)));
}

TEST_CASE("precision cap is honored and restorable") {
  unsigned old_cap = Cyc::precision_cap();
  Cyc::set_precision_cap(old_cap / 2);
  CHECK(Cyc::precision_cap() == old_cap / 2);
  Cyc::set_precision_cap(old_cap);
}
