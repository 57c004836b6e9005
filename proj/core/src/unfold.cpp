#include "flatbill/unfold.hpp"

#include <algorithm>
#include <set>

namespace flatbill {

namespace {

// linear part of the reflection across the direction of d: z -> (d/conj(d)) conj(z)
CopyTag edge_reflection(const Vec& d) {
  CopyTag s;
  s.rot = d.value() / d.value().conj();
  s.reflect = true;
  return s;
}

int base_edge_of(const CopyTag& g, size_t k, size_t j) {
  return g.reflect ? static_cast<int>(k - 1 - j) : static_cast<int>(j);
}

// copy polygon for a group element; reflected copies are re-indexed to keep
// the boundary counterclockwise
Polygon copy_polygon(const Polygon& base, const CopyTag& g) {
  size_t k = base.size();
  Polygon C;
  C.vertices.reserve(k);
  for (size_t j = 0; j < k; ++j) {
    size_t src = g.reflect ? (k - j) % k : j;
    C.vertices.push_back(g.apply(base.vertices[src]));
    if (!base.angles.empty()) C.angles.push_back(base.angles[src]);
  }
  return C;
}

CopyTag minus(const CopyTag& g) { return CopyTag{-g.rot, g.reflect}; }

bool is_minus_id(const CopyTag& g) { return !g.reflect && g.rot == Cyc(-1); }

}  // namespace

int ReflectionGroup::index_of(const CopyTag& g) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == g) return static_cast<int>(i);
  return -1;
}

bool ReflectionGroup::contains_minus_id() const {
  return index_of(CopyTag{Cyc(-1), false}) >= 0;
}

ReflectionGroup edge_reflection_group(const Polygon& P, size_t cap) {
  size_t k = P.size();
  std::vector<CopyTag> gens;
  gens.reserve(k);
  for (size_t e = 0; e < k; ++e) gens.push_back(edge_reflection(P.edge(e)));

  ReflectionGroup G;
  G.elements.push_back(CopyTag{});
  for (size_t head = 0; head < G.elements.size(); ++head) {
    CopyTag g = G.elements[head];
    for (const CopyTag& s : gens) {
      CopyTag h = g.then(s);
      if (G.index_of(h) < 0) {
        G.elements.push_back(std::move(h));
        if (G.elements.size() > cap)
          throw domain_error("unfold: reflection group exceeds the configured cap");
      }
    }
  }
  return G;
}

Surface pillowcase_double(const Polygon& P) {
  size_t k = P.size();
  Surface S;
  S.kind = SurfaceKind::cone;
  S.base = P;
  S.tags = {CopyTag{}, CopyTag{Cyc(1), true}};
  S.copies = {copy_polygon(P, S.tags[0]), copy_polygon(P, S.tags[1])};
  S.gluings.assign(2, std::vector<Gluing>(k));
  for (size_t e = 0; e < k; ++e) {
    int m = static_cast<int>(k - 1 - e);
    S.gluings[0][e] = {1, m, 0};
    S.gluings[1][m] = {0, static_cast<int>(e), 0};
  }
  S.degree_over_double = Rational(1);
  S.compute_classes();
  S.check();
  if (S.genus() != 0) throw domain_error("pillowcase_double: not a sphere");
  return S;
}

Surface unfold(const Polygon& P, size_t cap) {
  size_t k = P.size();
  ReflectionGroup G = edge_reflection_group(P, cap);
  Surface S;
  S.kind = SurfaceKind::translation;
  S.base = P;
  S.tags = G.elements;
  for (const CopyTag& g : G.elements) S.copies.push_back(copy_polygon(P, g));
  S.gluings.resize(S.copies.size());
  for (size_t c = 0; c < S.copies.size(); ++c) {
    const CopyTag& g = G.elements[c];
    S.gluings[c].resize(k);
    for (size_t j = 0; j < k; ++j) {
      int E = base_edge_of(g, k, j);
      CopyTag h = g.then(edge_reflection(P.edge(static_cast<size_t>(E))));
      int c2 = G.index_of(h);
      int j2 = h.reflect ? static_cast<int>(k) - 1 - E : E;
      S.gluings[c][j] = {c2, j2, +1};
    }
  }
  S.degree_over_double = Rational(static_cast<long>(G.elements.size()), 2);
  S.degree_over_double.canonicalize();
  S.compute_classes();
  S.check();
  return S;
}

namespace {

// quotient of the full unfolding by -id: one copy per coset representative,
// partners falling on the other representative pick up gluing sign -1
Surface quotient_by_minus_id(const Polygon& P, const ReflectionGroup& G) {
  size_t k = P.size();
  std::vector<int> rep_index(G.elements.size(), -1);  // position among reps
  std::vector<int> rep_of(G.elements.size(), -1);
  std::vector<int> sign_of_el(G.elements.size(), +1);
  std::vector<size_t> reps;
  for (size_t i = 0; i < G.elements.size(); ++i) {
    int mi = G.index_of(minus(G.elements[i]));
    if (mi < 0) throw domain_error("unfold: -id coset structure broken");
    if (static_cast<size_t>(mi) > i) {
      rep_index[i] = static_cast<int>(reps.size());
      rep_of[i] = static_cast<int>(i);
      reps.push_back(i);
    } else {
      rep_of[i] = static_cast<int>(mi);
      sign_of_el[i] = -1;
    }
  }
  for (size_t i = 0; i < G.elements.size(); ++i)
    if (rep_index[i] < 0) rep_index[i] = rep_index[static_cast<size_t>(rep_of[i])];

  Surface S;
  S.kind = SurfaceKind::half_translation;
  S.base = P;
  for (size_t i : reps) {
    S.tags.push_back(G.elements[i]);
    S.copies.push_back(copy_polygon(P, G.elements[i]));
  }
  S.gluings.resize(S.copies.size());
  for (size_t c = 0; c < S.copies.size(); ++c) {
    const CopyTag& g = S.tags[c];
    S.gluings[c].resize(k);
    for (size_t j = 0; j < k; ++j) {
      int E = base_edge_of(g, k, j);
      CopyTag h = g.then(edge_reflection(P.edge(static_cast<size_t>(E))));
      int hi = G.index_of(h);
      const CopyTag& h2 = G.elements[static_cast<size_t>(rep_of[hi])];
      int j2 = h2.reflect ? static_cast<int>(k) - 1 - E : E;
      S.gluings[c][j] = {rep_index[hi], j2, sign_of_el[hi]};
    }
  }
  S.degree_over_double = Rational(static_cast<long>(reps.size()), 2);
  S.degree_over_double.canonicalize();
  S.compute_classes();
  S.check();
  return S;
}

// half of a centrally symmetric polygon, cut along the diagonal v_0 .. v_m
// through the center; the two half-diagonal edges self-glue with sign -1,
// creating one pole per copy
Surface fold_centrally_symmetric(const Polygon& P, const ReflectionGroup& G) {
  size_t k = P.size();
  size_t m = k / 2;
  Vec center = (P.vertices[0] + P.vertices[m]) * Rational(1, 2);
  Polygon H;  // v_0 .. v_m, center; angle labels dropped (splits irrational)
  for (size_t j = 0; j <= m; ++j) H.vertices.push_back(P.vertices[j]);
  H.vertices.push_back(center);
  size_t K = m + 2;  // edges 0..m-1 from P, edge m and m+1 the half diagonals

  Surface S;
  S.kind = SurfaceKind::half_translation;
  S.base = P;
  S.tags = G.elements;
  for (const CopyTag& g : G.elements) S.copies.push_back(copy_polygon(H, g));
  S.gluings.resize(S.copies.size());
  for (size_t c = 0; c < S.copies.size(); ++c) {
    const CopyTag& g = S.tags[c];
    S.gluings[c].resize(K);
    for (size_t j = 0; j < K; ++j) {
      int E = base_edge_of(g, K, j);
      if (static_cast<size_t>(E) < m) {
        CopyTag h = g.then(edge_reflection(P.edge(static_cast<size_t>(E))));
        int c2 = G.index_of(h);
        if (c2 < 0) throw domain_error("unfold: fold partner missing");
        int j2 = h.reflect ? static_cast<int>(K) - 1 - E : E;
        S.gluings[c][j] = {c2, j2, +1};
      } else {
        // other half of the diagonal, same copy, point reflection about the
        // developed center
        int E2 = static_cast<int>(m) + (static_cast<size_t>(E) == m ? 1 : 0);
        int j2 = g.reflect ? static_cast<int>(K) - 1 - E2 : E2;
        S.gluings[c][j] = {static_cast<int>(c), j2, -1};
      }
    }
  }
  S.degree_over_double = Rational(static_cast<long>(G.elements.size()), 4);
  S.degree_over_double.canonicalize();
  S.compute_classes();
  S.check();
  return S;
}

bool centrally_symmetric(const Polygon& P) {
  size_t k = P.size();
  if (k % 2 != 0) return false;
  Vec twice_center = P.vertices[0] + P.vertices[k / 2];
  for (size_t j = 1; j < k / 2; ++j)
    if (P.vertices[j] + P.vertices[j + k / 2] != twice_center) return false;
  return true;
}

// right half of an isosceles triangle: (base vertex, base midpoint, apex)
Polygon right_half_of_isosceles(const Polygon& P) {
  size_t i = 3;
  for (size_t j = 0; j < 3; ++j)
    if (P.angles[j] == P.angles[(j + 1) % 3]) { i = j; break; }
  if (i == 3) throw domain_error("unfold: triangle is not isosceles");
  Vec b0 = P.vertex(i), b1 = P.vertex(i + 1), apex = P.vertex(i + 2);
  Polygon R;
  R.vertices = {b0, (b0 + b1) * Rational(1, 2), apex};
  R.angles = {P.angles[i], Angle(1, 2), Angle::of(P.angles[(i + 2) % 3].value() / 2)};
  R.validate();
  return R;
}

}  // namespace

Surface partial_unfold(const Polygon& P, size_t cap) {
  ReflectionGroup G = edge_reflection_group(P, cap);
  if (G.contains_minus_id()) return quotient_by_minus_id(P, G);
  if (P.size() == 3 && !P.angles.empty() &&
      (P.angles[0] == P.angles[1] || P.angles[1] == P.angles[2] ||
       P.angles[2] == P.angles[0])) {
    Surface S = partial_unfold(right_half_of_isosceles(P), cap);
    S.degree_over_double /= 2;  // relative to the doubled original triangle
    return S;
  }
  if (centrally_symmetric(P)) return fold_centrally_symmetric(P, G);
  // holonomy is already trivial; the full unfolding qualifies (it may not be
  // the minimal such cover for every exotic input)
  return unfold(P, cap);
}

long riemann_hurwitz_genus(const Polygon& P) {
  if (P.angles.empty())
    throw domain_error("riemann_hurwitz_genus: needs angle labels");
  long d = static_cast<long>(edge_reflection_group(P).elements.size()) / 2;
  long chi = 2 * d;
  for (const Angle& a : P.angles) {
    if (d % a.q != 0)
      throw domain_error("riemann_hurwitz_genus: branching does not divide degree");
    chi -= d - d / a.q;
  }
  return 1 - chi / 2;
}

namespace {

void split_gluing_pair(Surface& S, int c, int e, const Vec& q) {
  auto [sgn, t] = S.gluing_transform(c, e);
  Gluing g = S.gluings[static_cast<size_t>(c)][static_cast<size_t>(e)];
  int c2 = g.copy, e2 = g.edge;
  Vec q2 = q * Rational(sgn) + t;

  auto insert_vertex = [&](int copy, int edge, const Vec& v) {
    Polygon& C = S.copies[static_cast<size_t>(copy)];
    C.vertices.insert(C.vertices.begin() + edge + 1, v);
    if (!C.angles.empty()) C.angles.insert(C.angles.begin() + edge + 1, Angle(1, 1));
  };
  if (c == c2) {
    if (e < e2) { insert_vertex(c, e2, q2); insert_vertex(c, e, q); }
    else { insert_vertex(c, e, q); insert_vertex(c2, e2, q2); }
  } else {
    insert_vertex(c, e, q);
    insert_vertex(c2, e2, q2);
  }

  auto shift = [&](int copy, int edge) {
    int ne = edge;
    if (copy == c && edge > e) ++ne;
    if (copy == c2 && edge > e2) ++ne;
    return ne;
  };
  int E1 = e + (c == c2 && e > e2 ? 1 : 0);    // first half of (c,e)
  int F1 = e2 + (c == c2 && e2 > e ? 1 : 0);   // first half of (c2,e2)

  std::vector<std::vector<Gluing>> ng(S.copies.size());
  for (size_t x = 0; x < S.copies.size(); ++x) ng[x].resize(S.copies[x].size());
  for (size_t x = 0; x < S.gluings.size(); ++x) {
    for (size_t y = 0; y < S.gluings[x].size(); ++y) {
      if ((static_cast<int>(x) == c && static_cast<int>(y) == e) ||
          (static_cast<int>(x) == c2 && static_cast<int>(y) == e2))
        continue;
      const Gluing& og = S.gluings[x][y];
      ng[x][static_cast<size_t>(shift(static_cast<int>(x), static_cast<int>(y)))] = {
          og.copy, shift(og.copy, og.edge), og.sign};
    }
  }
  // half edges pair first-to-second across the gluing (start maps to end)
  ng[static_cast<size_t>(c)][static_cast<size_t>(E1)] = {c2, F1 + 1, g.sign};
  ng[static_cast<size_t>(c)][static_cast<size_t>(E1 + 1)] = {c2, F1, g.sign};
  ng[static_cast<size_t>(c2)][static_cast<size_t>(F1)] = {c, E1 + 1, g.sign};
  ng[static_cast<size_t>(c2)][static_cast<size_t>(F1 + 1)] = {c, E1, g.sign};
  S.gluings = std::move(ng);
}

int vertex_index_at(const Polygon& P, const Vec& q) {
  for (size_t j = 0; j < P.size(); ++j)
    if (P.vertices[j] == q) return static_cast<int>(j);
  return -1;
}

}  // namespace

std::vector<long> mark_billiard_points(Surface& S, const std::vector<Vec>& points) {
  if (S.base.vertices.empty() || S.tags.size() != S.copies.size())
    throw domain_error("mark_billiard_points: surface has no base chart");
  if (S.copies.size() > 0 && S.copies[0].size() != S.base.size())
    throw domain_error("mark_billiard_points: copies are not full base images");

  std::vector<LocatedPoint> locs;
  for (const Vec& p : points) {
    LocatedPoint loc = locate_point(S.base, p);
    if (loc.where == PointLocation::outside)
      throw domain_error("mark_billiard_points: point outside the polygon");
    locs.push_back(loc);
  }

  // survive class recomputation: remember one corner position per marked class
  std::vector<std::pair<int, Vec>> marked_corners;
  for (const PointClass& cls : S.classes)
    if (cls.marked && !cls.corners.empty()) {
      auto [mc, mv] = cls.corners.front();
      marked_corners.emplace_back(mc, S.copies[static_cast<size_t>(mc)].vertex(
                                          static_cast<size_t>(mv)));
    }

  // split every edge-interior preimage; vertices of copies stay aligned with
  // tag images because splits only insert exact image points
  for (size_t i = 0; i < points.size(); ++i) {
    if (locs[i].where != PointLocation::edge) continue;
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t c = 0; c < S.copies.size(); ++c) {
        Vec q = S.tags[c].apply(points[i]);
        LocatedPoint lq = locate_point(S.copies[c], q);
        if (lq.where == PointLocation::edge) {
          split_gluing_pair(S, static_cast<int>(c), static_cast<int>(lq.index), q);
          progress = true;
          break;
        }
        if (lq.where != PointLocation::vertex)
          throw domain_error("mark_billiard_points: preimage misses the boundary");
      }
    }
  }

  S.compute_classes();
  for (auto& [mc, pos] : marked_corners) {
    int j = vertex_index_at(S.copies[static_cast<size_t>(mc)], pos);
    if (j >= 0) S.classes[static_cast<size_t>(S.corner_class(mc, j))].marked = true;
  }

  std::vector<long> counts;
  for (size_t i = 0; i < points.size(); ++i) {
    if (locs[i].where == PointLocation::interior) {
      for (size_t c = 0; c < S.copies.size(); ++c)
        S.interior_marks.push_back(
            {static_cast<int>(c), S.tags[c].apply(points[i]), static_cast<int>(i)});
      counts.push_back(static_cast<long>(S.copies.size()));
      continue;
    }
    std::set<int> ids;
    for (size_t c = 0; c < S.copies.size(); ++c) {
      Vec q = S.tags[c].apply(points[i]);
      int j = vertex_index_at(S.copies[c], q);
      if (j < 0)
        throw domain_error("mark_billiard_points: lost a boundary preimage");
      int id = S.corner_class(static_cast<int>(c), j);
      ids.insert(id);
      S.classes[static_cast<size_t>(id)].marked = true;
    }
    counts.push_back(static_cast<long>(ids.size()));
  }
  S.check();
  return counts;
}

}  // namespace flatbill
