#pragma once

#include "flatbill/polygon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatbill {

enum class SurfaceKind {
  translation,       // all gluings pure translations, cone angles multiples of 2pi
  half_translation,  // gluings z -> +-z + t, cone angles multiples of pi
  cone,              // doubled-polygon flat sphere; reflection gluings allowed
};

/// Gluing of one directed polygon edge to another. sign = +1 for a
/// translation (edge vectors opposite), -1 for a point reflection (edge
/// vectors equal), 0 for the reflection gluings of a doubled polygon
/// (lengths equal; such surfaces are not enumerated, only measured).
struct Gluing {
  int copy = -1;
  int edge = -1;
  int sign = +1;
};

/// Plane isometry tag for a copy: z -> rot * z or rot * conj(z).
struct CopyTag {
  Cyc rot = Cyc(1);
  bool reflect = false;
  Vec apply(const Vec& v) const {
    return reflect ? Vec(rot * v.value().conj()) : Vec(rot * v.value());
  }
  CopyTag then(const CopyTag& inner) const {  // composition: this after inner
    CopyTag r;
    r.rot = rot * (reflect ? inner.rot.conj() : inner.rot);
    r.reflect = reflect != inner.reflect;
    return r;
  }
  bool operator==(const CopyTag& o) const {
    return reflect == o.reflect && rot == o.rot;
  }
};

struct PointClass {
  Angle cone_angle = Angle(2, 1);
  std::vector<std::pair<int, int>> corners;  // (copy, vertex)
  bool marked = false;
};

struct InteriorMark {
  int copy = -1;
  Vec pos;
  int point_id = -1;  // which input point this instance came from
};

struct Surface {
  SurfaceKind kind = SurfaceKind::translation;
  std::vector<Polygon> copies;  // angle labels optional (may be empty)
  std::vector<CopyTag> tags;    // may be empty for hand-built fixtures
  std::vector<std::vector<Gluing>> gluings;  // [copy][edge]
  std::vector<PointClass> classes;
  std::vector<InteriorMark> interior_marks;
  Polygon base;  // the polygon the copy tags act on; may be empty for fixtures
  Rational degree_over_double = Rational(0);  // area / (2 * area(base)), if set

  size_t copy_count() const { return copies.size(); }
  const Gluing& glued(int c, int e) const { return gluings[c][e]; }
  int corner_class(int c, int v) const;  // class id of corner (copy, vertex)

  Cyc area() const;
  long edge_pair_count() const;
  long euler_characteristic() const;  // V - E + F of the polygon complex
  long genus() const;

  /// Corner walk: partitions corners into vertex classes and certifies each
  /// cone angle exactly (rational label sums when available, otherwise an
  /// integer multiple of pi certified against the exact rotation product).
  void compute_classes();

  /// Exact structural checks: gluing involution is fixed-point free, edge
  /// holonomies match per sign, Gauss-Bonnet. Throws domain_error on failure.
  void check() const;

  /// Gluing transform across edge (c, e): z -> sign * z + t mapping the
  /// source edge onto its partner (start of source -> end of target).
  /// Only valid for sign in {+1, -1}.
  std::pair<int, Vec> gluing_transform(int c, int e) const;

 private:
  std::vector<std::vector<int>> corner_class_;
  friend struct SurfaceBuilder;
};

struct StratumSignature {
  bool abelian = true;
  std::vector<long> orders;   // descending; -1 allowed when quadratic
  long marked_regular = 0;
  std::string str() const;    // "H(2,4)" / "Q(1,3,-1^8)"
  bool operator==(const StratumSignature& o) const {
    return abelian == o.abelian && orders == o.orders &&
           marked_regular == o.marked_regular;
  }
};

/// Cone-angle bookkeeping; asserts Gauss-Bonnet. Throws if the surface kind
/// does not carry a stratum (cone angles not multiples of pi).
StratumSignature stratum_of(const Surface& S);

// ---- fixtures -------------------------------------------------------------

Surface make_square_torus(const Rational& side = Rational(1));
Surface make_hex_torus();
/// L-shaped square-tiled surface in H(2): a 2-square bottom row plus a
/// column of m squares; two horizontal cylinders for every m >= 1.
Surface make_staircase(long m);

}  // namespace flatbill
