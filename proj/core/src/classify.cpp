#include "flatbill/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatbill {

namespace {

// genus-zero quadratic stratum signature: the given orders plus `poles`
// simple poles; zero orders become marked regular points
StratumSignature quad_sig(std::vector<long> orders, long poles) {
  StratumSignature s;
  s.abelian = false;
  for (long o : orders)
    if (o == 0)
      ++s.marked_regular;
    else
      s.orders.push_back(o);
  for (long i = 0; i < poles; ++i) s.orders.push_back(-1);
  std::sort(s.orders.begin(), s.orders.end(), std::greater<long>());
  return s;
}

OrbitClosureDescription veech(OrbitClosureDescription::Kind kind, long m) {
  OrbitClosureDescription d;
  d.kind = kind;
  d.m = m;
  d.rank_one = true;
  return d;
}

OrbitClosureDescription quad_double(OrbitClosureDescription::Kind kind,
                                    StratumSignature base) {
  OrbitClosureDescription d;
  d.kind = kind;
  d.base = std::move(base);
  d.rank_one = false;
  return d;
}

const char* kGenericNote =
    "generic member of the family; non-generic orbit closures form a "
    "discrete exceptional set when n is outside {2,3,4,6}";

}  // namespace

std::string OrbitClosureDescription::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::torus_cover:
      os << "torus cover";
      break;
    case Kind::regular_ngon:
      os << "regular " << m << "-gon locus";
      break;
    case Kind::double_regular_ngon:
      os << "double regular " << m << "-gon locus";
      break;
    case Kind::double_cover_of_double_regular_ngon:
      os << "double cover of the double regular " << m << "-gon locus";
      break;
    case Kind::quadratic_double_of_stratum:
      os << "quadratic double of " << base.str();
      break;
    case Kind::quadratic_double_of_hyp_component:
      os << "quadratic double of the hyperelliptic component of " << base.str();
      break;
    case Kind::full_hyperelliptic_locus:
      os << "dense in the full hyperelliptic locus";
      break;
  }
  os << (rank_one ? "; rank 1" : "; rank >= 2");
  if (generic_member) os << " (generic member)";
  return os.str();
}

OrbitClosureDescription classify_right(long a, long n) {
  if (n < 2 || a <= 0 || a >= n || std::gcd(a, 2 * n) != 1)
    throw std::domain_error("classify_right: invalid parameters");
  long mn = std::min(a, n - a);
  if (mn <= 2) {
    long m = 2 * n / mn;  // smallest angle is pi/m
    return veech(m % 2 == 0
                     ? OrbitClosureDescription::Kind::regular_ngon
                     : OrbitClosureDescription::Kind::double_regular_ngon,
                 m);
  }
  return quad_double(OrbitClosureDescription::Kind::quadratic_double_of_stratum,
                     quad_sig({a - 2, n - a - 2}, n));
}

OrbitClosureDescription classify_isosceles(long a, long b, long n) {
  if (a <= 0 || b <= 0 || 2 * a + b != n ||
      std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("classify_isosceles: invalid parameters");
  if (n % 2 == 1) {
    if (a == 1)
      return veech(OrbitClosureDescription::Kind::double_regular_ngon, n);
    if (b == 1)
      return veech(OrbitClosureDescription::Kind::regular_ngon, 2 * n);
    return quad_double(
        OrbitClosureDescription::Kind::quadratic_double_of_stratum,
        quad_sig({2 * a - 2, b - 2}, n));
  }
  if (std::min(a, b / 2) == 1)
    return veech(OrbitClosureDescription::Kind::double_regular_ngon, n);
  if (b == 4)
    return veech(
        OrbitClosureDescription::Kind::double_cover_of_double_regular_ngon,
        n / 2);
  return quad_double(
      OrbitClosureDescription::Kind::quadratic_double_of_hyp_component,
      quad_sig({a - 2, b / 2 - 2}, n / 2));
}

OrbitClosureDescription classify_parallelogram(long a, long b, long n) {
  if (a <= 0 || b <= 0 || a + b != n || std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("classify_parallelogram: invalid parameters");
  OrbitClosureDescription d;
  if (n % 2 == 1)
    d = quad_double(OrbitClosureDescription::Kind::quadratic_double_of_stratum,
                    quad_sig({2 * a - 2, 2 * b - 2}, 2 * n));
  else
    d = quad_double(
        OrbitClosureDescription::Kind::quadratic_double_of_hyp_component,
        quad_sig({a - 2, a - 2, b - 2, b - 2}, 0));
  d.generic_member = true;
  d.notes = kGenericNote;
  return d;
}

OrbitClosureDescription classify_right_trapezoid(long a, long b, long n) {
  if (a <= 0 || b <= 0 || a + b != n || std::gcd(std::gcd(a, b), n) != 1)
    throw std::domain_error("classify_right_trapezoid: invalid parameters");
  OrbitClosureDescription d;
  if (n % 2 == 1)
    d = quad_double(OrbitClosureDescription::Kind::quadratic_double_of_stratum,
                    quad_sig({2 * a - 2, 2 * b - 2}, 2 * n));
  else
    d = quad_double(OrbitClosureDescription::Kind::quadratic_double_of_stratum,
                    quad_sig({a - 2, b - 2}, n));
  d.generic_member = true;
  d.notes = kGenericNote;
  return d;
}

namespace {

// fraction p/q in lowest terms from an Angle value
std::pair<long, long> frac_of(const Angle& a) { return {a.p, a.q}; }

// common-denominator numerators (a1, a2, n) for two angles a1/n, a2/n pi
std::tuple<long, long, long> common_denominator(const Angle& x, const Angle& y) {
  auto [p1, q1] = frac_of(x);
  auto [p2, q2] = frac_of(y);
  long n = std::lcm(q1, q2);
  return {p1 * (n / q1), p2 * (n / q2), n};
}

}  // namespace

OrbitClosureDescription classify_almost_right(
    const std::vector<Angle>& signature) {
  const long k = static_cast<long>(signature.size());
  if (k < 3) throw std::domain_error("classify_almost_right: need >= 3 angles");
  Rational sum(0);
  for (const Angle& a : signature) {
    if (a.value() <= 0 || a.value() >= 2)
      throw std::domain_error("classify_almost_right: angle outside (0, 2pi)");
    sum += a.value();
  }
  if (sum != k - 2)
    throw std::domain_error("classify_almost_right: angle sum mismatch");

  // erase straight angles: they are marked regular boundary points and do
  // not affect the unfolding's orbit closure
  std::vector<Angle> F;
  for (const Angle& a : signature)
    if (!a.is_straight()) F.push_back(a);
  std::sort(F.begin(), F.end());

  long non_right = 0;
  for (const Angle& a : F)
    if (!a.is_right_multiple()) ++non_right;

  const Angle right(1, 2);
  if (F.size() == 3) {
    auto it = std::find(F.begin(), F.end(), right);
    if (it != F.end()) {
      std::vector<Angle> rest;
      for (const Angle& a : F)
        if (&a != &*it) rest.push_back(a);
      auto [p1, p2, e] = common_denominator(rest[0], rest[1]);
      auto [a0, n0] = normalize_right(p1, p2, e);
      return classify_right(a0, n0);
    }
    if (F[0] == F[1] || F[1] == F[2]) {
      Angle apex = (F[0] == F[1]) ? F[2] : F[0];
      Angle base = (F[0] == F[1]) ? F[0] : F[1];
      auto [a0, b0, n0] = common_denominator(base, apex);
      long g = std::gcd(std::gcd(a0, b0), n0);
      return classify_isosceles(a0 / g, b0 / g, n0 / g);
    }
    throw std::domain_error("classify_almost_right: triangle is not almost-right");
  }
  if (F.size() == 4) {
    long rights = static_cast<long>(std::count(F.begin(), F.end(), right));
    if (rights == 2) {
      std::vector<Angle> rest;
      for (const Angle& a : F)
        if (!(a == right)) rest.push_back(a);
      auto [a0, b0, n0] = common_denominator(rest[0], rest[1]);
      long g = std::gcd(std::gcd(a0, b0), n0);
      return classify_right_trapezoid(a0 / g, b0 / g, n0 / g);
    }
    if (F[0] == F[1] && F[2] == F[3]) {
      auto [a0, b0, n0] = common_denominator(F[0], F[2]);
      long g = std::gcd(std::gcd(a0, b0), n0);
      return classify_parallelogram(a0 / g, b0 / g, n0 / g);
    }
    throw std::domain_error(
        "classify_almost_right: quadrilateral is not almost-right");
  }
  if (non_right > 2)
    throw std::domain_error("classify_almost_right: more than two angles off "
                            "the pi/2 lattice");
  OrbitClosureDescription d;
  d.kind = OrbitClosureDescription::Kind::full_hyperelliptic_locus;
  d.rank_one = false;
  d.generic_member = true;
  d.notes = "dense orbit for almost every polygon with this signature";
  return d;
}

namespace {

Rational frac_part(Rational r) {
  r.canonicalize();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return r - Rational(f);
}

}  // namespace

int eigenspace_dim(long a, long n, long ell) {
  if (n < 2 || a <= 0 || a >= n || std::gcd(a, 2 * n) != 1)
    throw std::domain_error("eigenspace_dim: invalid parameters");
  const long N = 2 * n;
  long l = ((ell % N) + N) % N;
  if (l == 0) return 0;

  // membership criterion: l a odd and congruent to an element of {1..n-1}
  long r = (l * a) % N;
  int by_criterion = (r % 2 == 1 && r <= n - 1) ? 1 : 0;

  // fractional-part formula t(-l) - 1
  Rational t = frac_part(Rational(-l, 2)) + frac_part(Rational(-l * a, N)) +
               frac_part(Rational(-l * (n - a), N));
  t.canonicalize();
  Rational dim = t - 1;
  if (dim.get_den() != 1 || (dim != 0 && dim != 1))
    throw std::logic_error("eigenspace_dim: fractional formula out of range");
  int by_formula = static_cast<int>(dim.get_num().get_si());

  if (by_criterion != by_formula)
    throw std::logic_error("eigenspace_dim: the two formulas disagree");
  return by_criterion;
}

bool rank_one_right(long a, long n) {
  if (n < 2 || a <= 0 || a >= n || std::gcd(a, 2 * n) != 1)
    throw std::domain_error("rank_one_right: invalid parameters");
  return a == 1 || a == n - 1 || a == n - 2;
}

std::string CoverDegree::str() const {
  return torus_cover ? "torus cover" : std::to_string(degree);
}

CoverDegree minimal_cover_degree(const PolySpec& P) {
  if (P.family == Family::right_triangle) {
    if ((P.a == 1 && P.n == 2) || (P.a == 1 && P.n == 3))
      return {true, 0};
    return {false, 2};
  }
  if (P.family == Family::isosceles) {
    if ((P.a == 1 && P.b == 1 && P.n == 3) ||
        (P.a == 1 && P.b == 2 && P.n == 4) ||
        (P.a == 1 && P.b == 4 && P.n == 6))
      return {true, 0};
    return {false, P.n % 2 == 1 ? 2L : 4L};
  }
  throw std::domain_error("minimal_cover_degree: right and isosceles triangles only");
}

}  // namespace flatbill
