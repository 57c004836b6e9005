#pragma once

#include "flatbill/plane.hpp"

#include <string>
#include <vector>

namespace flatbill {

/// Angle p*pi/q in lowest terms. Interior polygon angles satisfy 0 < p/q < 2;
/// p/q = 1 is a marked boundary point, kept as a first-class vertex.
struct Angle {
  long p = 0, q = 1;

  Angle() = default;
  Angle(long p_, long q_);
  static Angle of(const Rational& multiple_of_pi);

  Rational value() const { return Rational(p, q); }  // in units of pi
  bool operator==(const Angle& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Angle& o) const { return !(*this == o); }
  bool operator<(const Angle& o) const { return value() < o.value(); }
  Angle operator+(const Angle& o) const { return of(value() + o.value()); }
  Angle operator-(const Angle& o) const { return of(value() - o.value()); }
  Angle operator*(long k) const { return of(value() * k); }

  bool is_right_multiple() const { return q == 1 || q == 2; }  // multiple of pi/2
  bool is_straight() const { return p == 1 && q == 1; }
  std::string str() const;  // "3pi/16"
};

/// rotation by the angle as a unit field element e^{i p pi / q}
Cyc rotation_of(const Angle& a);
Cyc cos_of(const Angle& a);
Cyc sin_of(const Angle& a);
Cyc tan_of(const Angle& a);

enum class Family {
  right_triangle,
  isosceles,
  parallelogram,
  isosceles_trapezoid,
  right_trapezoid,
  almost_right,
  generic,
};

struct PolySpec {
  Family family = Family::generic;
  long a = 0, b = 0, n = 0;
  Rational scale = Rational(1);
  Rational t = Rational(0);          // quadrilateral free parameter
  std::vector<Angle> angles;         // cyclic, one per vertex
  std::string str() const;
};

/// Realized generalized polygon: a closed immersed piecewise-linear loop,
/// vertices counterclockwise, exact interior angle stored per vertex.
struct Polygon {
  std::vector<Vec> vertices;
  std::vector<Angle> angles;

  size_t size() const { return vertices.size(); }
  Vec vertex(size_t i) const { return vertices[i % size()]; }
  Vec edge(size_t i) const { return vertices[(i + 1) % size()] - vertices[i % size()]; }
  Cyc area() const;  // exact, positive for counterclockwise boundary
  Polygon scaled(const Rational& r) const;

  /// verifies closure, positive area and that edge turning matches the
  /// stored angles exactly; throws domain_error otherwise
  void validate() const;
};

// Lemma-normal form for right triangles: angles (a/e)pi, (b/e)pi summing to
// pi/2 become (a' pi/2n, (n-a')pi/2n) with a' odd and gcd(a', 2n) = 1.
std::pair<long, long> normalize_right(long a, long b, long e);

PolySpec make_right_triangle(long a, long n, const Rational& scale = Rational(1));
PolySpec make_isosceles(long a, long b, long n);
PolySpec make_parallelogram(long a, long b, long n, const Rational& t);
PolySpec make_isosceles_trapezoid(long a, long b, long n, const Rational& t);
PolySpec make_right_trapezoid(long a, long b, long n, const Rational& t);

Polygon realize(const PolySpec& spec);

/// Glue a square onto the given edge (outside the polygon). The edge must
/// join a pi/2 vertex to some vertex p; the polygon must be almost-right
/// (exactly two angles that are not multiples of pi/2). Both endpoint angles
/// grow by pi/2 and two new pi/2 corners appear.
Polygon glue_square(const Polygon& P, size_t edge_index);

/// Realize an almost-right polygon with the given angle multiset by seeding
/// a right triangle on the two non-right angles and gluing squares. The
/// gluing order is deterministic (see docs/); the construction is not unique.
Polygon build_almost_right(std::vector<Angle> signature);

/// CLI text syntax: right:a=3,n=8  iso:a=2,b=3,n=7  para:a=1,b=2,n=3,t=1/2
/// rtrap:a=3,b=5,n=8,t=1/2  itrap:...  almost:[3/16,5/16,1/2,1/2,3/2]
PolySpec parse_polygon_spec(const std::string& text);

enum class PointLocation { vertex, edge, interior, outside };

struct LocatedPoint {
  PointLocation where = PointLocation::outside;
  size_t index = 0;  // vertex or edge index when on the boundary
};

/// Exact point location against a (possibly non-convex) simple polygon,
/// via boundary tests plus a certified crossing-number count.
LocatedPoint locate_point(const Polygon& P, const Vec& p);

}  // namespace flatbill
