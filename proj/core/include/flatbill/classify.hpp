#pragma once

#include "flatbill/polygon.hpp"
#include "flatbill/surface.hpp"

#include <string>
#include <vector>

namespace flatbill {

/// GL(2,R)-orbit closure of the unfolding of a rational polygon.
struct OrbitClosureDescription {
  enum class Kind {
    torus_cover,
    regular_ngon,
    double_regular_ngon,
    double_cover_of_double_regular_ngon,
    quadratic_double_of_stratum,
    quadratic_double_of_hyp_component,
    full_hyperelliptic_locus,
  };

  Kind kind = Kind::full_hyperelliptic_locus;
  long m = 0;               // polygon order for the lattice (Veech) kinds
  StratumSignature base;    // underlying stratum for the quadratic-double kinds
  bool rank_one = false;    // rank 1 when true, rank >= 2 otherwise
  bool generic_member = false;  // describes almost every member of the family
  std::string notes;

  std::string str() const;
};

// triangle with angles (a/2n, (n-a)/2n, 1/2)pi; requires gcd(a,2n)=1, 0<a<n
OrbitClosureDescription classify_right(long a, long n);
// triangle with angles (a/n, a/n, b/n)pi; requires 2a+b=n, gcd(a,b,n)=1
OrbitClosureDescription classify_isosceles(long a, long b, long n);
// quadrilaterals with angles (a/n, b/n, a/n, b/n)pi resp.
// (1/2, 1/2, a/n, b/n)pi; requires a+b=n, gcd(a,b,n)=1
OrbitClosureDescription classify_parallelogram(long a, long b, long n);
OrbitClosureDescription classify_right_trapezoid(long a, long b, long n);

/// Polygons with at most two angles off the lattice of pi/2 multiples.
/// Straight angles are erased; the triangle and quadrilateral shapes are
/// routed to their dedicated classifiers, everything larger is generic in
/// the hyperelliptic locus containing its unfolding.
OrbitClosureDescription classify_almost_right(const std::vector<Angle>& signature);

/// dimension (0 or 1) of the l-th eigenspace of the deck rotation acting on
/// holomorphic one-forms of the unfolding of the right triangle (a, n);
/// computed by two independent formulas that must agree
int eigenspace_dim(long a, long n, long ell);

/// rank of the orbit closure of the right-triangle unfolding: true means 1
bool rank_one_right(long a, long n);

struct CoverDegree {
  bool torus_cover = false;
  long degree = 0;  // 2 or 4; unused when torus_cover
  std::string str() const;
};

/// minimal degree of a translation covering from the unfolding down to a
/// lower-genus quotient; right and isosceles triangles only
CoverDegree minimal_cover_degree(const PolySpec& P);

}  // namespace flatbill
