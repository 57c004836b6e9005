#include "flatbill/counting.hpp"

#include "flatbill/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace flatbill {

namespace {

// inverse of CopyTag::apply (rot is a unit, so its inverse is the conjugate)
Vec to_base(const CopyTag& g, const Vec& w) {
  return g.reflect ? Vec(w.value().conj() * g.rot)
                   : Vec(w.value() * g.rot.conj());
}

// the same value can carry different power-basis representations out of
// different copies, so keys are formed after lifting into one common field
std::string cyc_key(const Cyc& z, long order) {
  Cyc w = z.lifted(order);
  std::string s;
  for (const auto& c : w.coeffs()) {
    s += ',';
    s += c.get_str();
  }
  return s;
}

// unordered exact segment in the table chart
std::string seg_key(const Vec& a, const Vec& b, long order) {
  std::string ka = cyc_key(a.value(), order);
  std::string kb = cyc_key(b.value(), order);
  if (kb < ka) std::swap(ka, kb);
  ka += '|';
  ka += kb;
  return ka;
}

using Footprint = std::vector<std::pair<Vec, Vec>>;

Footprint footprint_of(const Surface& S, const SaddleConnection& sc) {
  Footprint out;
  for (const auto& [c, a, b] : trace_segments(S, sc))
    out.emplace_back(to_base(S.tags[c], a), to_base(S.tags[c], b));
  return out;
}

long common_order(long acc, const Footprint& f) {
  for (const auto& [a, b] : f) {
    acc = std::lcm(acc, std::lcm(a.value().order(), b.value().order()));
  }
  return acc;
}

std::string footprint_key(const Footprint& f, long order) {
  std::vector<std::string> segs;
  for (const auto& [a, b] : f) segs.push_back(seg_key(a, b, order));
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());
  std::string out;
  for (const auto& s : segs) {
    out += s;
    out += ';';
  }
  return out;
}

// degree of the unfolding over the doubled table; integral for any
// rational polygon
long covering_degree(const Surface& S, const Polygon& P) {
  Cyc q = S.area() / (P.area() * Cyc(2));
  if (!q.is_rational())
    throw domain_error("covering degree is not rational");
  Rational r = q.rational_value();
  if (r.get_den() != 1 || r <= 0)
    throw domain_error("covering degree is not a positive integer");
  return r.get_num().get_si();
}

// one symmetry orbit of cylinders or connections, keyed by its exact
// footprint on the table
struct Orbit {
  Cyc len2;
  long size = 0;
};

CountSeries assemble(const Polygon& P, long d, CountSeries::Mode mode,
                     const std::map<std::string, Orbit>& groups, long order) {
  CountSeries out;
  out.mode = mode;
  out.table_area = P.area();
  out.degree = d;
  const long full = 2 * d;
  std::map<std::string, CountEvent> ev;
  for (const auto& [key, g] : groups) {
    CountEvent& e = ev[cyc_key(g.len2, order)];
    e.length2 = g.len2;
    e.multiplicity += (g.size + full - 1) / full;
    // a short orbit is fixed by the orientation-reversing symmetry
    if (g.size % full != 0) e.degenerate = true;
  }
  for (auto& [key, e] : ev) {
    e.length = std::sqrt(e.length2.real_approx());
    out.events.push_back(e);
  }
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const CountEvent& a, const CountEvent& b) {
                     return a.length < b.length;
                   });
  return out;
}

}  // namespace

long CountSeries::total() const {
  long t = 0;
  for (const auto& e : events) t += e.multiplicity;
  return t;
}

long CountSeries::count_up_to(double L) const {
  long t = 0;
  for (const auto& e : events) {
    if (e.length > L) break;
    t += e.multiplicity;
  }
  return t;
}

CountSeries count_periodic_billiards(const Polygon& P, const Rational& L) {
  if (L <= 0) throw domain_error("count_periodic_billiards: L must be positive");
  Surface S = unfold(P);
  std::vector<Vec> pts;
  for (size_t i = 0; i < P.size(); ++i) pts.push_back(P.vertex(i));
  mark_billiard_points(S, pts);
  long d = covering_degree(S, P);

  CylinderSet R = cylinders_up_to(S, L);
  std::vector<Footprint> fps(R.cylinders.size());
  long order = 1;
  for (size_t i = 0; i < R.cylinders.size(); ++i) {
    const Cylinder& C = R.cylinders[i];
    std::vector<int> ids = C.boundary_top;
    ids.insert(ids.end(), C.boundary_bottom.begin(), C.boundary_bottom.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
      Footprint f = footprint_of(S, R.connections[id]);
      fps[i].insert(fps[i].end(), f.begin(), f.end());
    }
    order = common_order(order, fps[i]);
    order = std::lcm(order, C.circumference2.order());
  }
  std::map<std::string, Orbit> groups;
  for (size_t i = 0; i < R.cylinders.size(); ++i) {
    std::string key = cyc_key(R.cylinders[i].circumference2, order);
    key += '#';
    key += footprint_key(fps[i], order);
    Orbit& g = groups[key];
    g.len2 = R.cylinders[i].circumference2;
    g.size += 1;
  }
  return assemble(P, d, CountSeries::Mode::periodic_bands, groups, order);
}

CountSeries count_generalized_diagonals(const Polygon& P, const Vec& p1,
                                        const Vec& p2, const Rational& L) {
  if (L <= 0)
    throw domain_error("count_generalized_diagonals: L must be positive");
  LocatedPoint l1 = locate_point(P, p1);
  LocatedPoint l2 = locate_point(P, p2);
  if (l1.where == PointLocation::outside || l2.where == PointLocation::outside)
    throw domain_error("count_generalized_diagonals: point outside the table");
  bool same = p1 == p2;

  Surface S = unfold(P);
  std::vector<Vec> pts;
  for (size_t i = 0; i < P.size(); ++i) pts.push_back(P.vertex(i));
  int pid1 = -1, pid2 = -1;
  if (l1.where == PointLocation::interior) pid1 = static_cast<int>(pts.size());
  if (l1.where != PointLocation::vertex) pts.push_back(p1);
  if (!same) {
    if (l2.where == PointLocation::interior)
      pid2 = static_cast<int>(pts.size());
    if (l2.where != PointLocation::vertex) pts.push_back(p2);
  }
  mark_billiard_points(S, pts);
  long d = covering_degree(S, P);

  auto sites_of = [&](const Vec& p, PointLocation wh, int pid) {
    std::vector<SiteRef> out;
    if (wh == PointLocation::interior) {
      for (size_t m = 0; m < S.interior_marks.size(); ++m)
        if (S.interior_marks[m].point_id == pid)
          out.push_back({SiteRef::Type::mark, static_cast<int>(m)});
    } else {
      for (size_t k = 0; k < S.classes.size(); ++k) {
        auto [c, v] = S.classes[k].corners.front();
        if (to_base(S.tags[c], S.copies[c].vertex(v)) == p)
          out.push_back({SiteRef::Type::cone, static_cast<int>(k)});
      }
    }
    return out;
  };
  EnumOptions opt;
  opt.endpoint_filter = {
      sites_of(p1, l1.where, pid1),
      same ? sites_of(p1, l1.where, pid1) : sites_of(p2, l2.where, pid2)};

  auto scs = enumerate_saddle_connections(S, L, opt);
  std::vector<Footprint> fps(scs.size());
  long order = 1;
  for (size_t i = 0; i < scs.size(); ++i) {
    fps[i] = footprint_of(S, scs[i]);
    order = common_order(order, fps[i]);
    order = std::lcm(order, scs[i].len2.order());
  }
  std::map<std::string, Orbit> groups;
  for (size_t i = 0; i < scs.size(); ++i) {
    std::string key = cyc_key(scs[i].len2, order);
    key += '#';
    key += footprint_key(fps[i], order);
    Orbit& g = groups[key];
    g.len2 = scs[i].len2;
    g.size += 1;
  }
  return assemble(P, d, CountSeries::Mode::generalized_diagonals, groups, order);
}

double weak_asymptotic_estimate(const CountSeries& s, double L) {
  if (!(L > 1))
    throw domain_error("weak_asymptotic_estimate: L must exceed 1");
  double T = std::log(L);
  double acc = 0;
  double prev = 0;
  long N = 0;
  for (const auto& e : s.events) {
    double t = e.length <= 1 ? 0 : std::log(e.length);
    if (t >= T) break;
    if (t > prev) {
      acc += N * (std::exp(-2 * prev) - std::exp(-2 * t)) / 2;
      prev = t;
    }
    N += e.multiplicity;
  }
  acc += N * (std::exp(-2 * prev) - std::exp(-2 * T)) / 2;
  return acc / T;
}

EstimateReport compare_to_prediction(const CountSeries& s, double c_pred,
                                     double area) {
  if (s.events.empty())
    throw domain_error("compare_to_prediction: empty series");
  EstimateReport r;
  r.L_max = s.events.back().length;
  r.c_pred = c_pred;
  double L = r.L_max;
  for (int i = 0; i < 4 && L > 1; ++i, L /= 2)
    r.trace.emplace_back(L, weak_asymptotic_estimate(s, L) * area);
  if (r.trace.empty())
    throw domain_error("compare_to_prediction: series too short");
  r.c_hat = r.trace.front().second;
  r.deviation = c_pred == 0 ? std::abs(r.c_hat)
                            : std::abs(r.c_hat - c_pred) / std::abs(c_pred);
  return r;
}

}  // namespace flatbill
