#include "flatbill/svconstants.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatbill {

double PiRational::approx() const {
  return coefficient.get_d() * std::pow(M_PI, static_cast<double>(pi_power));
}

std::string PiRational::str() const {
  std::ostringstream os;
  os << coefficient.get_str();
  if (pi_power == 1)
    os << " · π";
  else if (pi_power != 0)
    os << " · π^" << pi_power;
  return os.str();
}

PiRational PiRational::operator+(const PiRational& o) const {
  if (coefficient == 0) return o;
  if (o.coefficient == 0) return *this;
  if (pi_power != o.pi_power)
    throw std::domain_error("PiRational: adding different powers of pi");
  return {coefficient + o.coefficient, pi_power};
}

mpz_class double_factorial(long k) {
  if (k < -1) throw std::domain_error("double_factorial: k < -1");
  mpz_class r = 1;
  for (long i = k; i > 1; i -= 2) r *= i;
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

PiRational c_saddle(long d1, long d2) {
  if (d1 < -1 || d2 < -1) throw std::domain_error("c_saddle: order below -1");
  if (d1 == -1 && d2 == -1)
    throw std::domain_error("c_saddle: configuration of two poles");
  Rational m(double_factorial(d1 + d2 + 2) * double_factorial(d1 + 1) *
                 double_factorial(d2 + 1),
             double_factorial(d1 + d2 + 1) * double_factorial(d1) *
                 double_factorial(d2));
  m.canonicalize();
  bool both_odd = (d1 % 2 != 0) && (d2 % 2 != 0);
  if (both_odd) return {m * 2, -2};
  return {m / 2, 0};
}

static void check_stratum_params(long k1, long k2) {
  if (k1 <= 0 || k2 <= 0)
    throw std::domain_error("cylinder constant: orders must be positive");
}

PiRational c_env_stratum(long k1, long k2) {
  check_stratum_params(k1, k2);
  return {Rational(binomial(k1 + k2 + 4, 2), 2), -2};
}

PiRational c_simp_stratum(long k1, long k2) {
  check_stratum_params(k1, k2);
  return c_env_stratum(k1, k2) * Rational(2, (k1 + 2) * (k2 + 2));
}

PiRational c_cyl_stratum(long k1, long k2) {
  return c_env_stratum(k1, k2) + c_simp_stratum(k1, k2);
}

PiRational c_cyl_abelian_double(long k1, long k2) {
  check_stratum_params(k1, k2);
  Rational f = 1 + Rational(4, (k1 + 2) * (k2 + 2));
  f.canonicalize();
  return c_env_stratum(k1, k2) * f;
}

PiRational c_cyl_hyp_double(long k1, long k2) {
  check_stratum_params(k1, k2);
  Rational f = 1 + Rational(1, 2 * (k1 + 2) * (k2 + 2));
  f.canonicalize();
  return c_env_stratum(k1, k2) * f;
}

PiRational c_right_triangle(long a, long n) {
  if (n < 2 || a <= 0 || a >= n || std::gcd(a, 2 * n) != 1)
    throw std::domain_error("c_right_triangle: invalid parameters");
  if (std::min(a, n - a) <= 2)
    throw std::domain_error(
        "c_right_triangle: exceptional triangle, see the classify module");
  Rational r = Rational(1, 16) * (1 - Rational(1, n)) *
               (1 + Rational(2, a * (n - a)));
  r.canonicalize();
  return {r, -1};
}

PiRational c_isosceles(long a, long b, long n) {
  if (a <= 0 || b <= 0 || 2 * a + b != n || std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("c_isosceles: invalid parameters");
  if (a == 1 || b == 1 || b == 2 || b == 4)
    throw std::domain_error(
        "c_isosceles: exceptional triangle, see the classify module");
  long g = std::gcd(n, 2L);
  Rational r = Rational(1, 8) * (1 - Rational(g, n)) *
               (1 + Rational(2, a * b * g));
  r.canonicalize();
  return {r, -1};
}

PiRational c_parallelogram(long a, long b, long n) {
  if (a <= 0 || b <= 0 || a + b != n || std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("c_parallelogram: invalid parameters");
  if (n == 2 || std::min(a, b) == 1)
    throw std::domain_error(
        "c_parallelogram: excluded parameters, see the classify module");
  long g = std::gcd(n, 2L);
  Rational r = Rational(1, 2) * (1 - Rational(g, 2 * n)) *
               (1 + Rational(1, a * b * g));
  r.canonicalize();
  return {r, -1};
}

PiRational c_right_trapezoid(long a, long b, long n) {
  if (a <= 0 || b <= 0 || a + b != n || std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("c_right_trapezoid: invalid parameters");
  if (n == 2 || std::min(a, b) == 1)
    throw std::domain_error(
        "c_right_trapezoid: excluded parameters, see the classify module");
  long g = std::gcd(n, 2L);
  Rational r = Rational(1, 4) * (1 - Rational(g, 2 * n)) *
               (1 + Rational(g * g, 2 * a * b));
  r.canonicalize();
  return {r, -1};
}

namespace {

// singularity data of a marked point on the quotient of the unfolding:
// order d of the induced singularity, multiplicity n_i of preimages in the
// triangle's reflection orbit, and the angle at the point in units of pi
struct DiagPointData {
  long d;
  long mult;
  Rational theta;  // units of pi
};

DiagPointData diag_point_data(const Polygon& P, long a, long n,
                              const PointSpec& p) {
  Vec z = p.resolve(P);
  LocatedPoint loc = locate_point(P, z);
  switch (loc.where) {
    case PointLocation::vertex: {
      Angle ang = P.angles[loc.index];
      if (ang.is_right_multiple())  // the right angle: a boundary pole
        return {-1, n, ang.value()};
      if (ang.value() == Rational(a, 2 * n)) return {a - 2, 1, ang.value()};
      return {n - a - 2, 1, ang.value()};
    }
    case PointLocation::edge:
      return {-1, n, Rational(1)};
    case PointLocation::interior:
      return {0, 2 * n, Rational(2)};
    case PointLocation::outside:
      break;
  }
  throw std::domain_error("c_diag_right_triangle: point not on the triangle");
}

}  // namespace

DiagConstant c_diag_right_triangle(long a, long n, const PointSpec& p1,
                                   const PointSpec& p2) {
  if (n < 2 || a <= 0 || a >= n || std::gcd(a, 2 * n) != 1)
    throw std::domain_error("c_diag_right_triangle: invalid parameters");
  if (std::min(a, n - a) <= 2)
    throw std::domain_error(
        "c_diag_right_triangle: exceptional triangle, see the classify module");
  Polygon P = realize(make_right_triangle(a, n));
  Vec z1 = p1.resolve(P), z2 = p2.resolve(P);
  if (z1 == z2)
    throw std::domain_error("c_diag_right_triangle: points must be distinct");
  DiagPointData q1 = diag_point_data(P, a, n, p1);
  DiagPointData q2 = diag_point_data(P, a, n, p2);

  PiRational cs = c_saddle(q1.d, q2.d);
  Rational scale(q1.mult * q2.mult, 4 * n * n);
  scale.canonicalize();
  DiagConstant out;
  out.general = cs * PiRational(scale, 1);
  // theta_i pi * theta_j pi / 2 pi
  Rational ap = q1.theta * q2.theta / 2;
  ap.canonicalize();
  out.angle_product = {ap, 1};
  return out;
}

}  // namespace flatbill
