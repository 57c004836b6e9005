#pragma once

#include "flatbill/polygon.hpp"

namespace flatbill {

/// A point of a realized polygon named symbolically, so counting constants
/// and blocking verdicts can talk about vertices and midpoints without
/// committing to coordinates up front.
struct PointSpec {
  enum class Kind { vertex, edge_midpoint, boundary, interior, barycenter };

  Kind kind = Kind::barycenter;
  size_t index = 0;              // vertex or edge index
  Rational t = Rational(0);      // boundary parameter in [0, 1]
  Rational x = Rational(0), y = Rational(0);  // interior coordinates

  static PointSpec vertex(size_t i);
  static PointSpec edge_midpoint(size_t e);
  static PointSpec boundary(size_t e, const Rational& t);
  static PointSpec interior(const Rational& x, const Rational& y);
  static PointSpec barycenter();

  /// exact coordinates on the realized polygon; throws domain_error when the
  /// spec does not resolve to a point of P (bad index, parameter outside
  /// [0,1], interior coordinates outside P)
  Vec resolve(const Polygon& P) const;

  bool operator==(const PointSpec& o) const;
  std::string str() const;
};

}  // namespace flatbill
