#include "flatbill/polygon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flatbill {

Angle::Angle(long p_, long q_) {
  if (q_ <= 0 || p_ <= 0) throw domain_error("Angle: requires positive p, q");
  long g = std::gcd(p_, q_);
  p = p_ / g;
  q = q_ / g;
}

Angle Angle::of(const Rational& multiple_of_pi) {
  Rational r = multiple_of_pi;
  r.canonicalize();
  if (sgn(r) <= 0) throw domain_error("Angle: must be positive");
  if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
    throw domain_error("Angle: numerator/denominator overflow");
  Angle a;
  a.p = r.get_num().get_si();
  a.q = r.get_den().get_si();
  return a;
}

std::string Angle::str() const {
  std::ostringstream os;
  if (p != 1) os << p;
  os << "pi";
  if (q != 1) os << "/" << q;
  return os.str();
}

Cyc rotation_of(const Angle& a) { return Cyc::zeta(2 * a.q, a.p); }

Cyc cos_of(const Angle& a) {
  return (Cyc::zeta(2 * a.q, a.p) + Cyc::zeta(2 * a.q, -a.p)) * Rational(1, 2);
}

Cyc sin_of(const Angle& a) {
  // (z - z^-1) / (2i), with 1/i = zeta_4^3
  return (Cyc::zeta(2 * a.q, a.p) - Cyc::zeta(2 * a.q, -a.p)) * Cyc::zeta(4, 3) *
         Rational(1, 2);
}

Cyc tan_of(const Angle& a) { return sin_of(a) / cos_of(a); }

std::string PolySpec::str() const {
  std::ostringstream os;
  switch (family) {
    case Family::right_triangle: os << "right:a=" << a << ",n=" << n; break;
    case Family::isosceles: os << "iso:a=" << a << ",b=" << b << ",n=" << n; break;
    case Family::parallelogram:
      os << "para:a=" << a << ",b=" << b << ",n=" << n << ",t=" << t.get_str();
      break;
    case Family::isosceles_trapezoid:
      os << "itrap:a=" << a << ",b=" << b << ",n=" << n << ",t=" << t.get_str();
      break;
    case Family::right_trapezoid:
      os << "rtrap:a=" << a << ",b=" << b << ",n=" << n << ",t=" << t.get_str();
      break;
    case Family::almost_right: {
      os << "almost:[";
      for (size_t i = 0; i < angles.size(); ++i) {
        if (i) os << ",";
        os << angles[i].p << "/" << angles[i].q;
      }
      os << "]";
      break;
    }
    default: os << "generic"; break;
  }
  return os.str();
}

Cyc Polygon::area() const {
  Cyc two_area;
  for (size_t i = 0; i < size(); ++i) two_area += cross(vertex(i), vertex(i + 1));
  return two_area * Rational(1, 2);
}

Polygon Polygon::scaled(const Rational& r) const {
  if (sgn(r) <= 0) throw domain_error("scale must be positive");
  Polygon out = *this;
  for (auto& v : out.vertices) v = v * r;
  return out;
}

void Polygon::validate() const {
  size_t k = size();
  if (k < 3 || angles.size() != k) throw domain_error("polygon: malformed");
  Rational sum(0);
  for (const auto& a : angles) {
    if (a.value() >= 2) throw domain_error("polygon: angle must be < 2pi");
    sum += a.value();
  }
  if (sum != Rational(k - 2)) throw domain_error("polygon: angle sum != (k-2)pi");
  if (area().sign_real_unchecked() != Sign::positive)
    throw domain_error("polygon: non-positive area (orientation?)");
  for (size_t i = 0; i < k; ++i) {
    Vec in = edge((i + k - 1) % k), out_e = edge(i);
    if (in.is_zero() || out_e.is_zero()) throw domain_error("polygon: zero edge");
    // exterior turn is pi - theta_i: out == in rotated by (pi - theta)
    Rational turn = Rational(1) - angles[i].value();  // may be negative (reflex)
    Cyc rot = turn == 0 ? Cyc(1)
              : turn > 0 ? rotation_of(Angle::of(turn))
                         : Cyc(1) / rotation_of(Angle::of(-turn));
    Vec expect = in.rotated(rot);
    if (!parallel(expect, out_e) || dot_sign(expect, out_e) != Sign::positive)
      throw domain_error("polygon: turning angle mismatch at vertex " + std::to_string(i));
  }
}

std::pair<long, long> normalize_right(long a, long b, long e) {
  if (a <= 0 || b <= 0 || e <= 0) throw domain_error("normalize_right: positive input");
  if (std::gcd(std::gcd(a, b), e) != 1)
    throw domain_error("normalize_right: gcd(a,b,e) != 1");
  if (Rational(a, e) + Rational(b, e) != Rational(1, 2))
    throw domain_error("normalize_right: angles do not sum to pi/2");
  // a + b = e/2; gcd(a,b,e) = 1 forces... reduce each angle and rebuild
  // common denominator 2n with a' odd, gcd(a', 2n) = 1 after a possible swap.
  if (e % 2 != 0) throw domain_error("normalize_right: e must be even");
  long n = e / 2;
  if (a % 2 == 0) std::swap(a, b);
  if (a % 2 == 0) throw domain_error("normalize_right: both numerators even");
  if (std::gcd(a, 2 * n) != 1)
    throw domain_error("normalize_right: gcd(a, 2n) != 1 after swap");
  return {a, n};
}

static void check_triangle_params(long a, long n) {
  if (!(0 < a && a < n)) throw domain_error("right triangle: need 0 < a < n");
  if (std::gcd(a, 2 * n) != 1) throw domain_error("right triangle: gcd(a, 2n) != 1");
}

PolySpec make_right_triangle(long a, long n, const Rational& scale) {
  check_triangle_params(a, n);
  if (sgn(scale) <= 0) throw domain_error("right triangle: scale must be positive");
  PolySpec s;
  s.family = Family::right_triangle;
  s.a = a;
  s.b = n - a;
  s.n = n;
  s.scale = scale;
  s.angles = {Angle(1, 2), Angle(a, 2 * n), Angle(n - a, 2 * n)};
  return s;
}

PolySpec make_isosceles(long a, long b, long n) {
  if (a <= 0 || b <= 0 || 2 * a + b != n) throw domain_error("isosceles: need 2a+b=n");
  if (std::gcd(std::gcd(a, b), n) != 1) throw domain_error("isosceles: gcd(a,b,n) != 1");
  PolySpec s;
  s.family = Family::isosceles;
  s.a = a;
  s.b = b;
  s.n = n;
  s.angles = {Angle(a, n), Angle(a, n), Angle(b, n)};
  return s;
}

static void check_quad_params(long a, long b, long n) {
  if (a <= 0 || b <= 0 || a + b != n) throw domain_error("quadrilateral: need a+b=n");
  if (std::gcd(std::gcd(a, b), n) != 1)
    throw domain_error("quadrilateral: gcd(a,b,n) != 1");
}

PolySpec make_parallelogram(long a, long b, long n, const Rational& t) {
  check_quad_params(a, b, n);
  if (sgn(t) <= 0) throw domain_error("parallelogram: free parameter must be > 0");
  PolySpec s;
  s.family = Family::parallelogram;
  s.a = a;
  s.b = b;
  s.n = n;
  s.t = t;
  s.angles = {Angle(a, n), Angle(b, n), Angle(a, n), Angle(b, n)};
  return s;
}

PolySpec make_isosceles_trapezoid(long a, long b, long n, const Rational& t) {
  check_quad_params(a, b, n);
  if (2 * a == n) throw domain_error("isosceles trapezoid: a = n/2 degenerates");
  if (sgn(t) <= 0) throw domain_error("isosceles trapezoid: free parameter must be > 0");
  PolySpec s;
  s.family = Family::isosceles_trapezoid;
  s.a = a;
  s.b = b;
  s.n = n;
  s.t = t;
  s.angles = {Angle(a, n), Angle(a, n), Angle(b, n), Angle(b, n)};
  return s;
}

PolySpec make_right_trapezoid(long a, long b, long n, const Rational& t) {
  check_quad_params(a, b, n);
  if (2 * a == n) throw domain_error("right trapezoid: a = n/2 degenerates");
  bool acute = Rational(a, n) < Rational(1, 2);
  if (acute ? !(t > 0 && t < 1) : !(t > 1))
    throw domain_error("right trapezoid: free parameter outside valid open range");
  PolySpec s;
  s.family = Family::right_trapezoid;
  s.a = a;
  s.b = b;
  s.n = n;
  s.t = t;
  s.angles = {Angle(a, n), Angle(b, n), Angle(1, 2), Angle(1, 2)};
  return s;
}

Polygon realize(const PolySpec& spec) {
  Polygon P;
  switch (spec.family) {
    case Family::right_triangle: {
      // right angle at origin, horizontal leg of length scale
      Rational s = spec.scale;
      Cyc h = tan_of(Angle(spec.a, 2 * spec.n)) * s;
      P.vertices = {Vec(Rational(0), Rational(0)), Vec(Rational(s), Rational(0)),
                    Vec(Cyc::zeta(4) * h)};
      P.angles = {Angle(1, 2), Angle(spec.a, 2 * spec.n), Angle(spec.b, 2 * spec.n)};
      break;
    }
    case Family::isosceles: {
      // unit base, apex above its midpoint
      Cyc h = tan_of(Angle(spec.a, spec.n)) * Rational(1, 2);
      P.vertices = {Vec(Rational(0), Rational(0)), Vec(Rational(1), Rational(0)),
                    Vec(Vec(Rational(1, 2), Rational(0)).value() + Cyc::zeta(4) * h)};
      P.angles = spec.angles;
      break;
    }
    case Family::parallelogram: {
      Vec u(rotation_of(Angle(spec.a, spec.n)));
      Vec e1(Rational(1), Rational(0));
      P.vertices = {Vec(Rational(0), Rational(0)), e1, e1 + u * spec.t, u * spec.t};
      P.angles = spec.angles;
      break;
    }
    case Family::isosceles_trapezoid: {
      // base w = t + 2 cos(alpha), unit slant sides, top t
      Angle alpha(spec.a, spec.n);
      Cyc w = Cyc(spec.t) + cos_of(alpha) * Rational(2);
      if (w.sign_real_unchecked() != Sign::positive)
        throw domain_error("isosceles trapezoid: degenerate (base collapses)");
      Vec u(rotation_of(alpha));
      Vec A(Rational(0), Rational(0)), B((Cyc)w);
      P.vertices = {A, B, B - u.conj(), A + u};
      P.angles = spec.angles;
      break;
    }
    case Family::right_trapezoid: {
      Angle alpha(spec.a, spec.n);
      Cyc ca = cos_of(alpha), ta = tan_of(alpha);
      Rational t = spec.t;
      // parallel sides 1 and t along e^{i alpha}; slant (1-t)/cos horizontal
      Cyc l0 = Cyc(Rational(1) - t) / ca;
      Cyc l2 = ta * (Rational(1) - t);
      Vec u(rotation_of(alpha)), iu(rotation_of(alpha) * Cyc::zeta(4));
      Vec A(Rational(0), Rational(0));
      Vec B(l0);
      Vec C(B + u.rotated(Cyc(t)));
      Vec D(C + iu.rotated(l2));
      P.vertices = {A, B, C, D};
      P.angles = spec.angles;
      break;
    }
    case Family::almost_right:
      return build_almost_right(spec.angles);
    default:
      throw domain_error("realize: unsupported family");
  }
  P.validate();
  return P;
}

Polygon glue_square(const Polygon& P, size_t edge_index) {
  size_t k = P.size();
  if (edge_index >= k) throw domain_error("glue_square: edge index out of range");
  int non_right = 0;
  for (const auto& a : P.angles) non_right += !a.is_right_multiple();
  if (non_right != 2) throw domain_error("glue_square: polygon is not almost-right");
  size_t i = edge_index, j = (edge_index + 1) % k;
  bool i_right = P.angles[i] == Angle(1, 2);
  bool j_right = P.angles[j] == Angle(1, 2);
  if (!i_right && !j_right)
    throw domain_error("glue_square: edge not incident to a pi/2 vertex");
  Vec e = P.edge(i);
  Vec nu = e.rotated(Cyc::zeta(4, 3));  // outward normal, length = |edge|
  Polygon out;
  Angle half(1, 2);
  for (size_t v = 0; v < k; ++v) {
    out.vertices.push_back(P.vertices[v]);
    out.angles.push_back(v == i || v == j ? P.angles[v] + half : P.angles[v]);
    if (v == i) {
      out.vertices.push_back(P.vertices[i] + nu);
      out.angles.push_back(half);
      out.vertices.push_back(P.vertices[j] + nu);
      out.angles.push_back(half);
    }
  }
  out.validate();
  return out;
}

namespace {

// drop angle-pi vertices, fusing their collinear edges
Polygon unmarked(const Polygon& P) {
  Polygon out;
  for (size_t v = 0; v < P.size(); ++v) {
    if (P.angles[v].is_straight()) continue;
    out.vertices.push_back(P.vertices[v]);
    out.angles.push_back(P.angles[v]);
  }
  return out;
}

// split edge i at its midpoint, inserting an angle-pi vertex
Polygon split_edge_midpoint(const Polygon& P, size_t i) {
  Polygon out;
  for (size_t v = 0; v < P.size(); ++v) {
    out.vertices.push_back(P.vertices[v]);
    out.angles.push_back(P.angles[v]);
    if (v == i) {
      out.vertices.push_back(P.vertices[v] + P.edge(i) * Rational(1, 2));
      out.angles.push_back(Angle(1, 1));
    }
  }
  return out;
}

// raise the angle at the vertex currently holding `target_partial` to
// `target` by repeated square gluings on an incident edge with a pi/2 end
Polygon raise_vertex(Polygon P, const Angle& from, const Angle& to) {
  Rational steps4 = (to.value() - from.value()) / Rational(1, 2);
  long steps = (long)steps4.get_num().get_si();
  Angle cur = from;
  for (long s = 0; s < steps; ++s) {
    // locate the vertex with angle `cur` (unique: it is one of the two
    // non-right angles, and the other one differs mod pi/2 bookkeeping below)
    size_t k = P.size(), vi = k;
    for (size_t v = 0; v < k; ++v)
      if (P.angles[v] == cur) { vi = v; break; }
    if (vi == k) throw domain_error("build: lost track of a raised vertex");
    size_t prev = (vi + k - 1) % k, next = (vi + 1) % k;
    size_t e;
    if (P.angles[prev] == Angle(1, 2)) e = prev;         // edge prev -> vi
    else if (P.angles[next] == Angle(1, 2)) e = vi;      // edge vi -> next
    else throw domain_error("build: no pi/2 neighbor available for gluing");
    P = unmarked(glue_square(P, e));
    cur = cur + Angle(1, 2);
  }
  return P;
}

}  // namespace

Polygon build_almost_right(std::vector<Angle> signature) {
  size_t k = signature.size();
  if (k < 3) throw domain_error("build_almost_right: need at least 3 angles");
  Rational sum(0);
  for (const auto& a : signature) sum += a.value();
  if (sum != Rational((long)k - 2))
    throw domain_error("build_almost_right: angle sum != (k-2)pi");
  std::vector<Angle> irregular;
  long count_three_half = 0, count_pi = 0;
  for (const auto& a : signature) {
    if (!a.is_right_multiple()) irregular.push_back(a);
    else if (a.value() == Rational(3, 2)) ++count_three_half;
    else if (a.is_straight()) ++count_pi;
  }
  if (irregular.size() != 2)
    throw domain_error("build_almost_right: need exactly two non-right angles");
  std::sort(irregular.begin(), irregular.end());
  Angle a1 = irregular[0], a2 = irregular[1];
  auto mod_half = [](const Angle& a) {
    Rational v = a.value();
    mpz_class f = (2 * v.get_num()) / v.get_den();  // floor(v / (1/2)), v > 0
    Rational r = v - Rational(f) / 2;
    return Angle::of(r);
  };
  Angle b1 = mod_half(a1), b2 = mod_half(a2);
  if (b1.value() + b2.value() != Rational(1, 2))
    throw domain_error("build_almost_right: residues do not seed a right triangle");

  // seed triangle with angles (b1, b2, pi/2): unit base, apex solved exactly
  Polygon P;
  {
    Vec A(Rational(0), Rational(0)), B(Rational(1), Rational(0));
    Vec d1(rotation_of(b1));
    Vec d2(rotation_of(b2).conj() * Cyc(-1));  // heading pi - b2 from B
    // C = A + r d1 with cross(d1, d2) r = cross(B - A, d2)
    Cyc r = cross(B - A, d2) / cross(d1, d2);
    P.vertices = {A, B, A + d1.rotated(r)};
    P.angles = {b1, b2, Angle(1, 2)};
    P.validate();
  }

  if (a1 != b1) P = raise_vertex(P, b1, a1);
  if (a2 != b2) {
    // disambiguate when b1 == b2: raise_vertex finds the first matching
    // angle; after the first raise a1 != b2 unless a1 == b2 stayed put,
    // in which case the remaining b2-vertex is the right one anyway.
    P = raise_vertex(P, b2, a2);
  }

  for (long c = 0; c < count_three_half; ++c) {
    // find a pi/2 vertex, split an incident edge, glue on the half between
    size_t kk = P.size(), vi = kk;
    for (size_t v = 0; v < kk; ++v)
      if (P.angles[v] == Angle(1, 2)) { vi = v; break; }
    if (vi == kk) throw domain_error("build: no pi/2 vertex to seed a 3pi/2 corner");
    P = split_edge_midpoint(P, vi);  // edge vi -> next becomes vi -> m -> next
    P = unmarked(glue_square(P, vi));  // m gains pi/2 -> 3pi/2; vi -> pi, dropped
  }

  for (long c = 0; c < count_pi; ++c) P = split_edge_midpoint(P, 0);

  P.validate();
  std::vector<Angle> got = P.angles, want = signature;
  auto lt = [](const Angle& x, const Angle& y) {
    return x.value() < y.value();
  };
  std::sort(got.begin(), got.end(), lt);
  std::sort(want.begin(), want.end(), lt);
  if (got != want)
    throw domain_error("build_almost_right: constructed signature mismatch");
  return P;
}

PolySpec parse_polygon_spec(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw domain_error("polygon spec: missing ':'");
  std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
  auto parse_rat = [](const std::string& s) {
    if (s.empty()) throw domain_error("polygon spec: empty number");
    Rational r(s);
    r.canonicalize();
    return r;
  };
  if (head == "almost") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw domain_error("polygon spec: almost:[...] expected");
    PolySpec s;
    s.family = Family::almost_right;
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(ss, item, ','))
      s.angles.push_back(Angle::of(parse_rat(item)));
    if (s.angles.empty()) throw domain_error("polygon spec: empty angle list");
    return s;
  }
  long a = -1, b = -1, n = -1;
  Rational t(0), scale(1);
  bool has_t = false;
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw domain_error("polygon spec: expected key=value");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "a") a = std::stol(val);
    else if (key == "b") b = std::stol(val);
    else if (key == "n") n = std::stol(val);
    else if (key == "t") { t = parse_rat(val); has_t = true; }
    else if (key == "scale") scale = parse_rat(val);
    else throw domain_error("polygon spec: unknown key '" + key + "'");
  }
  if (head == "right") {
    if (a < 0 || n < 0) throw domain_error("polygon spec: right needs a, n");
    return make_right_triangle(a, n, scale);
  }
  if (head == "iso") {
    if (a < 0 || b < 0 || n < 0) throw domain_error("polygon spec: iso needs a, b, n");
    return make_isosceles(a, b, n);
  }
  if (a < 0 || b < 0 || n < 0 || !has_t)
    throw domain_error("polygon spec: quadrilateral needs a, b, n, t");
  if (head == "para") return make_parallelogram(a, b, n, t);
  if (head == "itrap") return make_isosceles_trapezoid(a, b, n, t);
  if (head == "rtrap") return make_right_trapezoid(a, b, n, t);
  throw domain_error("polygon spec: unknown family '" + head + "'");
}

LocatedPoint locate_point(const Polygon& P, const Vec& p) {
  size_t k = P.size();
  for (size_t i = 0; i < k; ++i)
    if (P.vertex(i) == p) return {PointLocation::vertex, i};
  for (size_t i = 0; i < k; ++i) {
    Vec e = P.edge(i), d = p - P.vertex(i);
    if (parallel(e, d) && dot_sign(e, d) == Sign::positive &&
        compare_norm(d, e) == std::strong_ordering::less)
      return {PointLocation::edge, i};
  }
  // crossing number of a rightward horizontal ray from p; boundary cases
  // are excluded above, so only transversal and vertex-on-ray cases remain,
  // and the half-open rule (count an edge when ay <= py < by or vice versa,
  // i.e. lower endpoint inclusive) handles vertices consistently
  long crossings = 0;
  for (size_t i = 0; i < k; ++i) {
    Vec a = P.vertex(i), b = P.vertex(i + 1);
    Sign sa = (a - p).im().sign_real();
    Sign sb = (b - p).im().sign_real();
    bool a_above = sa == Sign::positive;
    bool b_above = sb == Sign::positive;
    if (a_above == b_above) continue;
    // p strictly to the left of the directed edge line counts for upward
    // edges, strictly right for downward ones
    Sign orient = cross_sign(b - a, p - a);
    if (b_above && orient == Sign::positive) ++crossings;
    if (a_above && orient == Sign::negative) ++crossings;
  }
  return {crossings % 2 == 1 ? PointLocation::interior : PointLocation::outside, 0};
}

}  // namespace flatbill
