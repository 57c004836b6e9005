#pragma once

#include "flatbill/surface.hpp"

namespace flatbill {

/// Finite group generated by the linear parts of the edge reflections of P,
/// in deterministic BFS order starting at the identity.
struct ReflectionGroup {
  std::vector<CopyTag> elements;
  int index_of(const CopyTag& g) const;  // -1 when absent
  bool contains_minus_id() const;
};

ReflectionGroup edge_reflection_group(const Polygon& P, size_t cap = 4096);

/// Two mirror copies of P glued edge to edge: a flat sphere with cone angle
/// twice the polygon angle at each vertex class.
Surface pillowcase_double(const Polygon& P);

/// Full unfolding: one copy per group element, all gluings translations.
/// Throws when the group order exceeds the cap.
Surface unfold(const Polygon& P, size_t cap = 4096);

/// Smallest unfolding with holonomy in {+-1}. Quotients the full unfolding
/// by -id when the group contains it; otherwise cuts to a fundamental
/// domain (right half of an isosceles triangle, half of a centrally
/// symmetric polygon) before unfolding. Falls back to the full unfolding
/// when no reduction applies.
Surface partial_unfold(const Polygon& P, size_t cap = 4096);

/// Marks every preimage of the given base-polygon points: vertex classes
/// are flagged, edge points split the carrying edges (consistently on both
/// sides of each gluing), interior points become interior marks. Returns
/// the number of surface preimages per input point.
std::vector<long> mark_billiard_points(Surface& S, const std::vector<Vec>& points);

/// Genus the full unfolding must have, by Riemann-Hurwitz over the sphere
/// quotient: an independent check against stratum_of(unfold(P)).
long riemann_hurwitz_genus(const Polygon& P);

}  // namespace flatbill
