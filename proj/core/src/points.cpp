#include "flatbill/points.hpp"

#include <sstream>
#include <stdexcept>

namespace flatbill {

PointSpec PointSpec::vertex(size_t i) {
  PointSpec p;
  p.kind = Kind::vertex;
  p.index = i;
  return p;
}

PointSpec PointSpec::edge_midpoint(size_t e) {
  PointSpec p;
  p.kind = Kind::edge_midpoint;
  p.index = e;
  return p;
}

PointSpec PointSpec::boundary(size_t e, const Rational& t) {
  PointSpec p;
  p.kind = Kind::boundary;
  p.index = e;
  p.t = t;
  return p;
}

PointSpec PointSpec::interior(const Rational& x, const Rational& y) {
  PointSpec p;
  p.kind = Kind::interior;
  p.x = x;
  p.y = y;
  return p;
}

PointSpec PointSpec::barycenter() {
  PointSpec p;
  p.kind = Kind::barycenter;
  return p;
}

Vec PointSpec::resolve(const Polygon& P) const {
  const size_t k = P.size();
  switch (kind) {
    case Kind::vertex:
      if (index >= k) throw std::domain_error("PointSpec: vertex index out of range");
      return P.vertex(index);
    case Kind::edge_midpoint:
      if (index >= k) throw std::domain_error("PointSpec: edge index out of range");
      return P.vertex(index) + P.edge(index) * Rational(1, 2);
    case Kind::boundary: {
      if (index >= k) throw std::domain_error("PointSpec: edge index out of range");
      if (t < 0 || t > 1) throw std::domain_error("PointSpec: boundary parameter outside [0,1]");
      return P.vertex(index) + P.edge(index) * t;
    }
    case Kind::interior: {
      Vec p(x, y);
      if (locate_point(P, p).where == PointLocation::outside)
        throw std::domain_error("PointSpec: interior coordinates outside the polygon");
      return p;
    }
    case Kind::barycenter: {
      Vec s;
      for (size_t i = 0; i < k; ++i) s = s + P.vertex(i);
      return s * Rational(1, static_cast<long>(k));
    }
  }
  throw std::logic_error("PointSpec: unknown kind");
}

bool PointSpec::operator==(const PointSpec& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::vertex:
    case Kind::edge_midpoint:
      return index == o.index;
    case Kind::boundary:
      return index == o.index && t == o.t;
    case Kind::interior:
      return x == o.x && y == o.y;
    case Kind::barycenter:
      return true;
  }
  return false;
}

std::string PointSpec::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::vertex: os << "vertex(" << index << ")"; break;
    case Kind::edge_midpoint: os << "edge_midpoint(" << index << ")"; break;
    case Kind::boundary: os << "boundary(" << index << ", " << t.get_str() << ")"; break;
    case Kind::interior: os << "interior(" << x.get_str() << ", " << y.get_str() << ")"; break;
    case Kind::barycenter: os << "barycenter"; break;
  }
  return os.str();
}

}  // namespace flatbill
