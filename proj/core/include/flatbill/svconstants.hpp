#pragma once

#include "flatbill/points.hpp"

namespace flatbill {

/// Exact constant of the form coefficient * pi^pi_power.
struct PiRational {
  Rational coefficient = Rational(0);
  long pi_power = 0;

  PiRational() = default;
  PiRational(Rational c, long p) : coefficient(std::move(c)), pi_power(p) {
    coefficient.canonicalize();
  }

  double approx() const;
  std::string str() const;  // "238/15 · π^-2"

  bool operator==(const PiRational& o) const {
    return (coefficient == 0 && o.coefficient == 0) ||
           (coefficient == o.coefficient && pi_power == o.pi_power);
  }
  PiRational operator*(const Rational& r) const { return {coefficient * r, pi_power}; }
  PiRational operator*(const PiRational& o) const {
    return {coefficient * o.coefficient, pi_power + o.pi_power};
  }
  PiRational operator+(const PiRational& o) const;  // requires equal pi_power
};

/// (-1)!! = 0!! = 1, k!! = k (k-2)!!; throws for k < -1
mpz_class double_factorial(long k);

mpz_class binomial(long n, long k);

/// constant for saddle connections joining two singularities of orders d1, d2
/// on a genus-zero quadratic double; undefined (throws) for two poles
PiRational c_saddle(long d1, long d2);

// per-stratum cylinder constants for Q(k1, k2, -1^{k1+k2+4}), k1, k2 > 0
PiRational c_env_stratum(long k1, long k2);
PiRational c_simp_stratum(long k1, long k2);
PiRational c_cyl_stratum(long k1, long k2);

// cylinder constants upstairs: holonomy double cover, and the double cover
// bearing the hyperelliptic-component marking
PiRational c_cyl_abelian_double(long k1, long k2);
PiRational c_cyl_hyp_double(long k1, long k2);

// billiard band counting constants; exceptional parameters (Veech cases)
// throw, the classify module handles those families
PiRational c_right_triangle(long a, long n);
PiRational c_isosceles(long a, long b, long n);
PiRational c_parallelogram(long a, long b, long n);
PiRational c_right_trapezoid(long a, long b, long n);

/// Generalized-diagonal constant between two points of the right triangle
/// with angles (a/2n, (n-a)/2n, 1/2)pi. Two normalizations are in
/// circulation: `general` is (n1 n2 c_saddle / 4n^2) pi, `angle_product` is
/// theta1 theta2 / 2pi. They disagree by a factor of 2 at a pair of interior
/// points; the counting tests decide empirically which one matches orbits.
struct DiagConstant {
  PiRational general;
  PiRational angle_product;
};
DiagConstant c_diag_right_triangle(long a, long n, const PointSpec& p1,
                                   const PointSpec& p2);

}  // namespace flatbill
