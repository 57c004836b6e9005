#pragma once

#include "flatbill/surface.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace flatbill {

/// Endpoint of a saddle connection: a cone/marked vertex class or one
/// interior marked point instance.
struct SiteRef {
  enum class Type { cone, mark };
  Type type = Type::cone;
  int id = -1;
  bool operator==(const SiteRef& o) const { return type == o.type && id == o.id; }
  bool operator<(const SiteRef& o) const {
    return type != o.type ? type < o.type : id < o.id;
  }
};

struct SaddleConnection {
  Vec hol;   // canonical unoriented representative (upper half plane)
  Cyc len2;  // |hol|^2, exact
  SiteRef src, dst;
  std::vector<std::pair<int, int>> path;  // polygon edge crossings (copy, edge)

  // instance-level endpoints, sorted: {copy, vertex, orient} for a corner,
  // {-1, mark_id, orient} for an interior mark; the corner is normalized to
  // the angular sector the connection leaves through and orient records
  // whether it leaves along +hol or -hol in that copy's chart. Distinct
  // connections can share hol, endpoint classes and crossing path (parallel
  // translates), so this is the duplicate-free identity.
  std::array<std::array<int, 3>, 2> ends{};

  // discovery-orientation anchor, kept so the exact chord through every
  // crossed copy can be replayed later
  int rep_copy = -1;
  int rep_vertex = -1;  // anchor corner; -1 when the source is an interior mark
  int rep_mark = -1;
  Vec rep_hol;
  std::vector<std::pair<int, int>> rep_path;
};

struct EnumOptions {
  /// when false, marked regular points are transparent: they are neither
  /// endpoints nor obstacles (closed trajectories mode); when true they are
  /// full singularities (marked-point counting mode)
  bool treat_marked_as_singular = true;
  /// restrict to connections joining the two site sets (unoriented)
  std::optional<std::pair<std::vector<SiteRef>, std::vector<SiteRef>>>
      endpoint_filter;
  /// restrict to connections parallel to this direction; the search then
  /// follows single separatrices instead of sweeping whole sectors
  std::optional<Vec> direction;
};

/// All unoriented saddle connections of length <= L, complete and duplicate
/// free, in canonical (length^2, direction, endpoints, path) order.
std::vector<SaddleConnection> enumerate_saddle_connections(
    const Surface& S, const Rational& L, const EnumOptions& opt = {});

struct Cylinder {
  Vec direction;       // canonical projective direction
  Cyc circumference2;  // exact squared circumference
  Cyc height2;
  Cyc area;
  // boundary saddle connection indices with multiplicity (folded boundaries
  // list the same connection twice)
  std::vector<int> boundary_top, boundary_bottom;
  enum class Kind { simple, envelope, complex, other };
  Kind kind = Kind::simple;
};

struct CylinderSet {
  std::vector<SaddleConnection> connections;
  std::vector<Cylinder> cylinders;
};

/// All maximal cylinders of circumference <= L.
CylinderSet cylinders_up_to(const Surface& S, const Rational& L,
                            bool treat_marked_as_singular = true);

struct CylinderGraph {
  Vec direction;
  std::vector<SaddleConnection> connections;
  std::vector<Cylinder> cylinders;
  // (i, j) when the top boundary of cylinder i shares a saddle connection
  // with the bottom boundary of cylinder j
  std::vector<std::pair<int, int>> edges;
};

/// Full cylinder decomposition of a completely periodic direction; throws
/// naming a non-cylinder component otherwise.
CylinderGraph cylinder_graph(const Surface& S, const Vec& direction);

/// True iff the direction decomposes into cylinders whose areas sum to the
/// surface area exactly.
bool area_partition_check(const Surface& S, const Vec& direction);

/// Developed sub-segments of a saddle connection, one per polygon copy it
/// crosses, as (copy, from, to) in that copy's own chart. Zero-length
/// pieces at pass-through vertices are omitted.
std::vector<std::tuple<int, Vec, Vec>> trace_segments(
    const Surface& S, const SaddleConnection& sc);

}  // namespace flatbill
