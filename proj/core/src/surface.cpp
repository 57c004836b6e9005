#include "flatbill/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace flatbill {

namespace {

// interior angle of corner v of copy P, as (0,2pi) double plus the exact
// rotation-times-positive-scale witness C * conj(A)
struct CornerTurn {
  Cyc witness;
  double approx;
};

CornerTurn corner_turn(const Polygon& P, size_t v) {
  size_t k = P.size();
  Vec A = P.edge(v);
  Vec C = -P.edge((v + k - 1) % k);
  Cyc u = C.value() * A.value().conj();
  double th = std::atan2(u.imag_approx(), u.real_approx());
  if (th <= 0) th += 2 * std::numbers::pi;
  return {std::move(u), th};
}

}  // namespace

int Surface::corner_class(int c, int v) const {
  return corner_class_[static_cast<size_t>(c)][static_cast<size_t>(v)];
}

Cyc Surface::area() const {
  Cyc total;
  for (const Polygon& P : copies) total += P.area();
  return total;
}

long Surface::edge_pair_count() const {
  long e = 0;
  for (const Polygon& P : copies) e += static_cast<long>(P.size());
  return e / 2;
}

long Surface::euler_characteristic() const {
  return static_cast<long>(classes.size()) - edge_pair_count() +
         static_cast<long>(copies.size());
}

long Surface::genus() const { return (2 - euler_characteristic()) / 2; }

void Surface::compute_classes() {
  classes.clear();
  corner_class_.clear();
  corner_class_.reserve(copies.size());
  for (const Polygon& P : copies)
    corner_class_.emplace_back(P.size(), -1);

  for (size_t c0 = 0; c0 < copies.size(); ++c0) {
    for (size_t v0 = 0; v0 < copies[c0].size(); ++v0) {
      if (corner_class_[c0][v0] >= 0) continue;
      int id = static_cast<int>(classes.size());
      PointClass cls;
      Cyc product(1);
      double approx = 0;
      Rational label_sum(0);
      bool labeled = true;

      size_t c = c0, v = v0;
      do {
        corner_class_[c][v] = id;
        cls.corners.emplace_back(static_cast<int>(c), static_cast<int>(v));
        CornerTurn t = corner_turn(copies[c], v);
        product = product * t.witness;
        approx += t.approx;
        if (copies[c].angles.empty())
          labeled = false;
        else
          label_sum += copies[c].angles[v].value();
        // rotate about the vertex: cross the outgoing edge; we land at the
        // far end of the partner edge
        const Gluing& g = gluings[c][v];
        c = static_cast<size_t>(g.copy);
        v = (static_cast<size_t>(g.edge) + 1) % copies[c].size();
      } while (!(c == c0 && v == v0));

      if (labeled) {
        cls.cone_angle = Angle::of(label_sum);
      } else {
        // cone angles of unlabeled (cut-and-fold) surfaces are integer
        // multiples of pi; pick the candidate from the float sum and certify
        // it below against the exact rotation product
        long k = std::lround(approx / std::numbers::pi);
        if (k <= 0) throw domain_error("surface: degenerate cone angle");
        cls.cone_angle = Angle(k, 1);
      }

      // certify: rotation by cone_angle equals the witness product up to a
      // positive real scale
      Rational m = cls.cone_angle.value();
      long whole = mpz_class(m.get_num() / m.get_den()).get_si();
      Rational frac = m - whole;
      frac.canonicalize();
      Cyc rot = (sgn(frac) == 0)
                    ? Cyc((whole % 2 == 0) ? 1 : -1)
                    : rotation_of(Angle::of((whole % 2 == 0) ? frac : frac + 1));
      if (!parallel(Vec(rot), Vec(product)) ||
          dot_sign(Vec(rot), Vec(product)) != Sign::positive)
        throw domain_error("surface: cone angle certification failed");

      classes.push_back(std::move(cls));
    }
  }
}

void Surface::check() const {
  if (copies.size() != gluings.size())
    throw domain_error("surface: gluing table size mismatch");
  for (size_t c = 0; c < copies.size(); ++c) {
    if (copies[c].size() != gluings[c].size())
      throw domain_error("surface: gluing row size mismatch");
    for (size_t e = 0; e < gluings[c].size(); ++e) {
      const Gluing& g = gluings[c][e];
      if (g.copy < 0 || static_cast<size_t>(g.copy) >= copies.size() ||
          g.edge < 0 ||
          static_cast<size_t>(g.edge) >= copies[static_cast<size_t>(g.copy)].size())
        throw domain_error("surface: gluing out of range");
      if (static_cast<size_t>(g.copy) == c && static_cast<size_t>(g.edge) == e)
        throw domain_error("surface: edge glued to itself");
      const Gluing& back = gluings[static_cast<size_t>(g.copy)][static_cast<size_t>(g.edge)];
      if (static_cast<size_t>(back.copy) != c || static_cast<size_t>(back.edge) != e ||
          back.sign != g.sign)
        throw domain_error("surface: gluing not an involution");
      Vec src = copies[c].edge(e);
      Vec dst = copies[static_cast<size_t>(g.copy)].edge(static_cast<size_t>(g.edge));
      switch (g.sign) {
        case +1:
          if (src != -dst) throw domain_error("surface: translation gluing holonomy");
          break;
        case -1:
          if (src != dst) throw domain_error("surface: flip gluing holonomy");
          if (kind == SurfaceKind::translation)
            throw domain_error("surface: flip gluing on a translation surface");
          break;
        case 0:
          if (kind != SurfaceKind::cone)
            throw domain_error("surface: reflection gluing outside doubled polygon");
          if (src.norm2() != dst.norm2())
            throw domain_error("surface: reflection gluing length");
          break;
        default:
          throw domain_error("surface: bad gluing sign");
      }
    }
  }
  if (classes.empty())
    throw domain_error("surface: classes not computed");

  // combinatorial Gauss-Bonnet: sum(2pi - cone) = 2pi * chi
  Rational deficit(0);
  for (const PointClass& cls : classes) deficit += Rational(2) - cls.cone_angle.value();
  Rational chi(euler_characteristic());
  if (deficit != chi * 2)
    throw domain_error("surface: Gauss-Bonnet violated");

  for (const PointClass& cls : classes) {
    const Angle& a = cls.cone_angle;
    if (kind == SurfaceKind::translation && !(a.q == 1 && a.p % 2 == 0))
      throw domain_error("surface: cone angle not a multiple of 2pi");
    if (kind == SurfaceKind::half_translation && a.q != 1)
      throw domain_error("surface: cone angle not a multiple of pi");
  }
}

StratumSignature stratum_of(const Surface& S) {
  if (S.classes.empty())
    throw domain_error("stratum_of: classes not computed");
  StratumSignature sig;
  sig.abelian = (S.kind == SurfaceKind::translation);
  long order_sum = 0;
  for (const PointClass& cls : S.classes) {
    const Angle& a = cls.cone_angle;
    if (a.q != 1 || (sig.abelian && a.p % 2 != 0))
      throw domain_error("stratum_of: surface kind carries no stratum");
    long k = sig.abelian ? a.p / 2 - 1 : a.p - 2;
    if (k == 0) {
      // regular points count only while explicitly marked; unmarked 2pi
      // vertex classes are erased from the signature
      if (cls.marked) sig.marked_regular += 1;
    } else {
      sig.orders.push_back(k);
    }
    order_sum += k;
  }
  std::sort(sig.orders.rbegin(), sig.orders.rend());
  long expect = sig.abelian ? 2 * S.genus() - 2 : 4 * S.genus() - 4;
  if (order_sum != expect)
    throw domain_error("stratum_of: order sum inconsistent with genus");
  return sig;
}

std::string StratumSignature::str() const {
  std::ostringstream os;
  os << (abelian ? "H(" : "Q(");
  bool first = true;
  size_t i = 0;
  while (i < orders.size()) {
    size_t j = i;
    while (j < orders.size() && orders[j] == orders[i]) ++j;
    if (!first) os << ",";
    first = false;
    os << orders[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  if (marked_regular > 0) {
    if (!first) os << ",";
    first = false;
    os << "0";
    if (marked_regular > 1) os << "^" << marked_regular;
  }
  if (first) os << "0^0";  // torus with no marked point (not produced here)
  os << ")";
  return os.str();
}

namespace {

Polygon rectangle_path(const std::vector<std::pair<Rational, Rational>>& pts,
                       const std::vector<Angle>& angles) {
  Polygon P;
  for (const auto& [x, y] : pts) P.vertices.emplace_back(x, y);
  P.angles = angles;
  P.validate();
  return P;
}

}  // namespace

Surface make_square_torus(const Rational& side) {
  if (sgn(side) <= 0) throw domain_error("make_square_torus: side must be positive");
  Rational z(0), s = side;
  Surface S;
  S.kind = SurfaceKind::translation;
  S.copies.push_back(rectangle_path({{z, z}, {s, z}, {s, s}, {z, s}},
                                    std::vector<Angle>(4, Angle(1, 2))));
  S.tags.push_back(CopyTag{});
  S.gluings = {{{0, 2, +1}, {0, 3, +1}, {0, 0, +1}, {0, 1, +1}}};
  S.compute_classes();
  S.classes[0].marked = true;  // the single 2pi vertex, kept as a marked point
  S.check();
  return S;
}

Surface make_hex_torus() {
  Polygon P;
  for (long k = 0; k < 6; ++k) P.vertices.emplace_back(Vec(Cyc::zeta(6, k)));
  P.angles.assign(6, Angle(2, 3));
  P.validate();
  Surface S;
  S.kind = SurfaceKind::translation;
  S.copies.push_back(std::move(P));
  S.tags.push_back(CopyTag{});
  S.gluings = {{{0, 3, +1}, {0, 4, +1}, {0, 5, +1}, {0, 0, +1}, {0, 1, +1}, {0, 2, +1}}};
  S.compute_classes();
  for (PointClass& cls : S.classes) cls.marked = true;
  S.check();
  return S;
}

Surface make_staircase(long m) {
  if (m < 1) throw domain_error("make_staircase: column height must be >= 1");
  Rational h(m + 1);
  Polygon P = rectangle_path(
      {{0, 0}, {1, 0}, {2, 0}, {Rational(2), Rational(1)}, {1, 1}, {1, h}, {0, h}, {0, 1}},
      {Angle(1, 2), Angle(1, 1), Angle(1, 2), Angle(1, 2), Angle(3, 2), Angle(1, 2),
       Angle(1, 2), Angle(1, 1)});
  Surface S;
  S.kind = SurfaceKind::translation;
  S.copies.push_back(std::move(P));
  S.tags.push_back(CopyTag{});
  // edges: 0 bottom-left, 1 bottom-right, 2 right, 3 step top, 4 column right,
  // 5 column top, 6 left-upper, 7 left-lower
  S.gluings = {{{0, 5, +1}, {0, 3, +1}, {0, 7, +1}, {0, 1, +1}, {0, 6, +1}, {0, 0, +1},
                {0, 4, +1}, {0, 2, +1}}};
  S.compute_classes();
  S.check();
  return S;
}

std::pair<int, Vec> Surface::gluing_transform(int c, int e) const {
  const Gluing& g = gluings[static_cast<size_t>(c)][static_cast<size_t>(e)];
  if (g.sign == 0) throw domain_error("surface: reflection gluing has no affine chart");
  Vec src_start = copies[static_cast<size_t>(c)].vertex(static_cast<size_t>(e));
  Vec dst_end = copies[static_cast<size_t>(g.copy)].vertex(static_cast<size_t>(g.edge) + 1);
  Vec t = dst_end - src_start * Rational(g.sign);
  return {g.sign, t};
}

}  // namespace flatbill
