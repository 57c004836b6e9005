#include "flatbill/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace flatbill {
namespace {

bool same_ray(const Vec& a, const Vec& b) {
  return parallel(a, b) && dot_sign(a, b) == Sign::positive;
}

bool upper_half(const Vec& v) {
  Vec ex(Cyc(1));
  Sign s = cross_sign(ex, v);
  if (s != Sign::zero) return s == Sign::positive;
  return dot_sign(ex, v) == Sign::positive;
}

// ---- wedges ----------------------------------------------------------------
// Open or half-open direction sectors of angle < pi (cross(lo, hi) > 0), with
// the degenerate single-ray sector lo == hi allowed when both ends are closed.

struct Wedge {
  Vec lo, hi;
  bool lo_c = true, hi_c = true;
};

bool in_wedge(const Wedge& W, const Vec& p) {
  Sign c1 = cross_sign(W.lo, p);
  if (c1 == Sign::negative) return false;
  if (c1 == Sign::zero) {
    if (!W.lo_c || dot_sign(W.lo, p) != Sign::positive) return false;
    Sign c2 = cross_sign(p, W.hi);
    if (c2 == Sign::positive) return true;
    return c2 == Sign::zero && W.hi_c && dot_sign(p, W.hi) == Sign::positive;
  }
  Sign c2 = cross_sign(p, W.hi);
  if (c2 == Sign::negative) return false;
  if (c2 == Sign::zero) return W.hi_c && dot_sign(p, W.hi) == Sign::positive;
  return true;
}

enum class RayLoc { out, inside, on_lo, on_hi };

RayLoc locate_ray(const Wedge& W, const Vec& d) {
  if (same_ray(W.lo, d)) return RayLoc::on_lo;
  if (same_ray(W.hi, d)) return RayLoc::on_hi;
  if (cross_sign(W.lo, d) == Sign::positive &&
      cross_sign(d, W.hi) == Sign::positive)
    return RayLoc::inside;
  return RayLoc::out;
}

std::optional<Wedge> intersect_wedge(const Wedge& A, const Wedge& B) {
  Vec lo, hi;
  bool lo_c, hi_c;
  RayLoc la = locate_ray(B, A.lo), lb = locate_ray(A, B.lo);
  if (la != RayLoc::out) {
    lo = A.lo;
    lo_c = A.lo_c && (la == RayLoc::on_lo   ? B.lo_c
                      : la == RayLoc::on_hi ? B.hi_c
                                            : true);
  } else if (lb != RayLoc::out) {
    lo = B.lo;
    lo_c = B.lo_c && (lb == RayLoc::on_lo   ? A.lo_c
                      : lb == RayLoc::on_hi ? A.hi_c
                                            : true);
  } else {
    return std::nullopt;
  }
  RayLoc ha = locate_ray(B, A.hi), hb = locate_ray(A, B.hi);
  if (ha != RayLoc::out) {
    hi = A.hi;
    hi_c = A.hi_c && (ha == RayLoc::on_lo   ? B.lo_c
                      : ha == RayLoc::on_hi ? B.hi_c
                                            : true);
  } else if (hb != RayLoc::out) {
    hi = B.hi;
    hi_c = B.hi_c && (hb == RayLoc::on_lo   ? A.lo_c
                      : hb == RayLoc::on_hi ? A.hi_c
                                            : true);
  } else {
    return std::nullopt;
  }
  Sign s = cross_sign(lo, hi);
  if (s == Sign::positive) return Wedge{lo, hi, lo_c, hi_c};
  if (s == Sign::zero && dot_sign(lo, hi) == Sign::positive && lo_c && hi_c)
    return Wedge{lo, hi, true, true};
  return std::nullopt;
}

// splits W at the obstacle directions, excluding the obstacle rays themselves
std::vector<Wedge> split_wedge(const Wedge& W, const std::vector<Vec>& dirs) {
  Wedge base = W;
  std::vector<Vec> inner;
  for (const Vec& d : dirs) {
    if (same_ray(base.lo, d))
      base.lo_c = false;
    else if (same_ray(base.hi, d))
      base.hi_c = false;
    else
      inner.push_back(d);
  }
  std::sort(inner.begin(), inner.end(), [](const Vec& a, const Vec& b) {
    return cross_sign(a, b) == Sign::positive;
  });
  std::vector<Wedge> out;
  Vec cur = base.lo;
  bool cur_c = base.lo_c;
  for (const Vec& d : inner) {
    if (cross_sign(cur, d) == Sign::positive)
      out.push_back(Wedge{cur, d, cur_c, false});
    cur = d;
    cur_c = false;
  }
  if (cross_sign(cur, base.hi) == Sign::positive)
    out.push_back(Wedge{cur, base.hi, cur_c, base.hi_c});
  else if (same_ray(cur, base.hi) && cur_c && base.hi_c)
    out.push_back(Wedge{cur, base.hi, true, true});
  return out;
}

// does the ray from the origin along d hit segment UV within distance sqrt(L2)?
bool ray_hits_within(const Vec& d, const Vec& U, const Vec& V,
                     const Rational& L2) {
  Vec E = V - U;
  Cyc cdE = cross(d, E);
  if (cdE.is_zero()) return false;
  if (cross_sign(U, d) == Sign::negative || cross_sign(d, V) == Sign::negative)
    return false;
  Cyc a = cross(U, E);
  Cyc diff = cdE * cdE * L2 - a * a * d.norm2();
  return diff.sign_real() != Sign::negative;
}

// is any point of segment UV (cross(U, V) > 0, origin strictly behind it)
// visible through W at distance <= sqrt(L2)?  Conservative on boundary rays.
bool segment_reachable(const Wedge& W, const Vec& U, const Vec& V,
                       const Rational& L2) {
  if (in_wedge(W, U) && compare_norm2_to(U, L2) != std::strong_ordering::greater)
    return true;
  if (in_wedge(W, V) && compare_norm2_to(V, L2) != std::strong_ordering::greater)
    return true;
  Vec E = V - U;
  Cyc n2 = E.norm2();
  Cyc dU = dot(U, E);
  if ((-dU).sign_real() == Sign::positive &&
      (n2 + dU).sign_real() == Sign::positive) {
    // foot of the perpendicular lies strictly inside the segment
    Vec F = U.rotated(n2) - E.rotated(dU);  // positive multiple of the foot
    if (in_wedge(W, F)) {
      Cyc c = cross(U, E);
      if ((n2 * L2 - c * c).sign_real() != Sign::negative) return true;
    }
  }
  if (ray_hits_within(W.lo, U, V, L2)) return true;
  if (ray_hits_within(W.hi, U, V, L2)) return true;
  return false;
}

// ---- triangulated copies ---------------------------------------------------

struct DevMap {
  int s = 1;
  Vec t;
  Vec apply(const Vec& v) const { return (s == 1 ? v : -v) + t; }
  Vec apply_inv(const Vec& v) const {
    Vec w = v - t;
    return s == 1 ? w : -w;
  }
};

struct TriSide {
  int nb = -1, nb_side = -1;  // internal diagonal neighbor
  int surf_edge = -1;         // polygon edge index when on the boundary
};

struct Tri {
  int copy = -1;
  int v[3];
  TriSide side[3];
};

struct TriMesh {
  std::vector<Tri> tris;
  std::vector<std::vector<std::pair<int, int>>> edge_tri;  // [copy][edge]
  std::vector<std::vector<int>> copy_tris;
  std::vector<std::vector<std::pair<int, Vec>>> trans;  // cached gluing_transform
  std::vector<std::vector<int>> tri_marks;              // mark ids per triangle
};

void triangulate_copy(const Surface& S, int c, TriMesh& M) {
  const Polygon& P = S.copies[c];
  int k = (int)P.size();
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::map<std::pair<int, int>, std::pair<int, int>> open_diag;
  auto emit = [&](int a, int b, int d) {
    int id = (int)M.tris.size();
    Tri T;
    T.copy = c;
    T.v[0] = a;
    T.v[1] = b;
    T.v[2] = d;
    M.tris.push_back(T);
    M.copy_tris[c].push_back(id);
    for (int s = 0; s < 3; ++s) {
      int x = M.tris[id].v[s], y = M.tris[id].v[(s + 1) % 3];
      if ((x + 1) % k == y) {
        M.tris[id].side[s].surf_edge = x;
        M.edge_tri[c][x] = {id, s};
      } else {
        auto it = open_diag.find({y, x});
        if (it != open_diag.end()) {
          auto [t2, s2] = it->second;
          M.tris[id].side[s].nb = t2;
          M.tris[id].side[s].nb_side = s2;
          M.tris[t2].side[s2].nb = id;
          M.tris[t2].side[s2].nb_side = s;
          open_diag.erase(it);
        } else {
          open_diag[{x, y}] = {id, s};
        }
      }
    }
  };
  while ((int)idx.size() > 3) {
    int m = (int)idx.size();
    bool found = false;
    for (int i = 0; i < m && !found; ++i) {
      int a = idx[(i + m - 1) % m], b = idx[i], d = idx[(i + 1) % m];
      Vec A = P.vertex(a), B = P.vertex(b), D = P.vertex(d);
      if (cross_sign(B - A, D - B) != Sign::positive) continue;
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        int w = idx[j];
        if (w == a || w == b || w == d) continue;
        Vec Q = P.vertex(w);
        if (cross_sign(B - A, Q - A) != Sign::negative &&
            cross_sign(D - B, Q - B) != Sign::negative &&
            cross_sign(A - D, Q - D) != Sign::negative)
          ok = false;
      }
      if (!ok) continue;
      emit(a, b, d);
      idx.erase(idx.begin() + i);
      found = true;
    }
    if (!found) throw domain_error("triangulation failed: no ear found");
  }
  emit(idx[0], idx[1], idx[2]);
}

// -2 outside, -1 strictly inside, else the side the point lies on
int locate_in_tri(const Polygon& P, const Tri& T, const Vec& p) {
  Sign s[3];
  for (int i = 0; i < 3; ++i) {
    Vec A = P.vertex(T.v[i]), B = P.vertex(T.v[(i + 1) % 3]);
    s[i] = cross_sign(B - A, p - A);
    if (s[i] == Sign::negative) return -2;
  }
  int zeros = 0, side = -1;
  for (int i = 0; i < 3; ++i)
    if (s[i] == Sign::zero) {
      ++zeros;
      side = i;
    }
  if (zeros == 0) return -1;
  if (zeros == 1) return side;
  return -2;  // a triangle vertex; interior marks never sit on copy vertices
}

TriMesh build_mesh(const Surface& S) {
  TriMesh M;
  size_t nc = S.copy_count();
  M.edge_tri.resize(nc);
  M.copy_tris.resize(nc);
  M.trans.resize(nc);
  for (size_t c = 0; c < nc; ++c) {
    M.edge_tri[c].assign(S.copies[c].size(), {-1, -1});
    M.trans[c].resize(S.copies[c].size());
    for (size_t e = 0; e < S.copies[c].size(); ++e)
      M.trans[c][e] = S.gluing_transform((int)c, (int)e);
    triangulate_copy(S, (int)c, M);
  }
  M.tri_marks.resize(M.tris.size());
  for (size_t m = 0; m < S.interior_marks.size(); ++m) {
    const InteriorMark& im = S.interior_marks[m];
    for (int t : M.copy_tris[im.copy])
      if (locate_in_tri(S.copies[im.copy], M.tris[t], im.pos) != -2)
        M.tri_marks[t].push_back((int)m);
  }
  return M;
}

// ---- enumeration -----------------------------------------------------------

struct State {
  int tri = -1;
  DevMap dev;
  Wedge W;
  uint8_t allowed = 0;
  std::vector<std::pair<int, int>> path;
};

struct EnumCtx {
  const Surface& S;
  const TriMesh& M;
  Rational L2;
  bool marked;
  const std::vector<bool>& sing;
  const EnumOptions& opt;
  std::vector<SaddleConnection>& out;
  SiteRef src;
  int src_copy = -1, src_vertex = -1, src_mark = -1;
};

bool site_in(const std::vector<SiteRef>& v, const SiteRef& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool filter_pass(const EnumOptions& opt, const SiteRef& a, const SiteRef& b) {
  if (!opt.endpoint_filter) return true;
  const auto& [A, B] = *opt.endpoint_filter;
  return (site_in(A, a) && site_in(B, b)) || (site_in(A, b) && site_in(B, a));
}

// corner instance whose half-open angular sector [lo, hi) contains the
// chart direction d, reached by rotating across gluings from (c, v); also
// returns the accumulated chart sign applied to d along the way
std::array<int, 3> sector_anchor(const Surface& S, int c, int v, Vec d) {
  int acc = 1;
  for (int guard = 0; guard < 65536; ++guard) {
    const Polygon& P = S.copies[c];
    long n = P.size();
    Vec lo = P.vertex((v + 1) % n) - P.vertex(v);
    Vec hi = P.vertex((v + n - 1) % n) - P.vertex(v);
    bool in;
    if (same_ray(lo, d))
      in = true;
    else if (same_ray(hi, d))
      in = false;
    else if (cross_sign(lo, hi) == Sign::positive)
      in = cross_sign(lo, d) == Sign::positive &&
           cross_sign(d, hi) == Sign::positive;
    else
      in = !(cross_sign(hi, d) == Sign::positive &&
             cross_sign(d, lo) == Sign::positive);
    if (in) return {c, v, acc};
    int e = (int)((v + n - 1) % n);
    auto [s, t] = S.gluing_transform(c, e);
    (void)t;
    const Gluing& g = S.glued(c, e);
    c = g.copy;
    v = g.edge;  // edge e starts at vertex e
    if (s < 0) d = -d;
    acc *= s;
  }
  throw domain_error("sector rotation failed to close");
}

void record(EnumCtx& C, const SiteRef& dst, const Vec& hol,
            const std::vector<std::pair<int, int>>& path, int dev_s,
            int arr_copy, int arr_vertex) {
  if (!filter_pass(C.opt, C.src, dst)) return;
  SaddleConnection sc;
  sc.rep_copy = C.src_copy;
  sc.rep_vertex = C.src_vertex;
  sc.rep_mark = C.src_mark;
  sc.rep_hol = hol;
  sc.rep_path = path;
  if (upper_half(hol)) {
    sc.hol = hol;
    sc.src = C.src;
    sc.dst = dst;
    sc.path = path;
  } else {
    sc.hol = -hol;
    sc.src = dst;
    sc.dst = C.src;
    sc.path.reserve(path.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Gluing& g = C.S.glued(it->first, it->second);
      sc.path.emplace_back(g.copy, g.edge);
    }
  }
  sc.len2 = sc.hol.norm2();
  int s_src = upper_half(hol) ? 1 : -1;  // hol == s_src * canonical
  std::array<int, 3> ea, eb;
  if (C.src_mark >= 0)
    ea = {-1, C.src_mark, s_src};
  else
    ea = {C.src_copy, C.src_vertex, s_src};
  if (dst.type == SiteRef::Type::mark) {
    eb = {-1, arr_vertex, -dev_s * s_src};
  } else {
    Vec dr = dev_s < 0 ? hol : -hol;  // outgoing chart direction at arrival
    eb = sector_anchor(C.S, arr_copy, arr_vertex, dr);
    eb[2] *= -dev_s * s_src;
  }
  sc.ends = ea < eb ? std::array<std::array<int, 3>, 2>{ea, eb}
                    : std::array<std::array<int, 3>, 2>{eb, ea};
  C.out.push_back(std::move(sc));
}

// A ray that hits a non-singular vertex continues straight through it: rotate
// around the vertex class to the corner whose sector contains the
// continuation direction and restart there with a single-ray wedge.
void spawn_through(EnumCtx& C, std::vector<State>& stack, const State& st,
                   int corner_slot, const Vec& p) {
  const Vec& d = p;
  int tri = st.tri, slot = corner_slot;
  DevMap D = st.dev;
  std::vector<std::pair<int, int>> path = st.path;
  int cap = 16 + 4 * (int)C.M.tris.size();
  for (int guard = 0; guard < cap; ++guard) {
    const Tri& T = C.M.tris[tri];
    int s = (slot + 2) % 3;  // the counterclockwise side at this corner
    const TriSide& ts = T.side[s];
    if (ts.surf_edge >= 0) {
      int e = ts.surf_edge;
      const Gluing& g = C.S.glued(T.copy, e);
      const auto& [gs, gt] = C.M.trans[g.copy][g.edge];
      D = DevMap{D.s * gs, D.apply(gt)};
      path.emplace_back(T.copy, e);
      auto [t2, s2] = C.M.edge_tri[g.copy][g.edge];
      tri = t2;
      slot = s2;
    } else {
      tri = ts.nb;
      slot = ts.nb_side;
    }
    const Tri& T2 = C.M.tris[tri];
    const Polygon& P2 = C.S.copies[T2.copy];
    Vec B = D.apply(P2.vertex(T2.v[(slot + 1) % 3])) - p;
    Vec Cv = D.apply(P2.vertex(T2.v[(slot + 2) % 3])) - p;
    Sign lo = cross_sign(B, d);
    bool on_lo = lo == Sign::zero && dot_sign(B, d) == Sign::positive;
    if ((lo == Sign::positive || on_lo) &&
        cross_sign(d, Cv) == Sign::positive) {
      State ns;
      ns.tri = tri;
      ns.dev = D;
      ns.W = Wedge{d, d, true, true};
      ns.allowed = (uint8_t)(1u << ((slot + 1) % 3));
      ns.path = std::move(path);
      stack.push_back(std::move(ns));
      return;
    }
  }
  throw domain_error("pass-through rotation failed to close");
}

void run_states(EnumCtx& C, std::vector<State> stack) {
  if (C.opt.direction) {
    std::vector<State> keep;
    for (State& st : stack) {
      for (const Vec& d : {*C.opt.direction, -*C.opt.direction}) {
        auto w = intersect_wedge(st.W, Wedge{d, d, true, true});
        if (!w) continue;
        State ns = st;
        ns.W = *w;
        keep.push_back(std::move(ns));
      }
    }
    stack = std::move(keep);
  }
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    const Tri& T = C.M.tris[st.tri];
    const Polygon& P = C.S.copies[T.copy];
    Vec pv[3];
    for (int i = 0; i < 3; ++i) pv[i] = st.dev.apply(P.vertex(T.v[i]));

    struct Cand {
      Vec p;
      bool mark;
      int id;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < 3; ++i)
      if (!pv[i].is_zero() && in_wedge(st.W, pv[i]))
        cands.push_back({pv[i], false, i});
    if (C.marked)
      for (int mid : C.M.tri_marks[st.tri]) {
        Vec mp = st.dev.apply(C.S.interior_marks[mid].pos);
        if (!mp.is_zero() && in_wedge(st.W, mp))
          cands.push_back({mp, true, mid});
      }

    // keep only the nearest candidate on each ray: collinear points within
    // one triangle shadow everything behind them
    std::vector<Cand> kept;
    std::vector<bool> dead(cands.size(), false);
    for (size_t i = 0; i < cands.size(); ++i) {
      if (dead[i]) continue;
      size_t best = i;
      for (size_t j = i + 1; j < cands.size(); ++j) {
        if (dead[j]) continue;
        if (same_ray(cands[best].p, cands[j].p)) {
          if (compare_norm(cands[j].p, cands[best].p) ==
              std::strong_ordering::less) {
            dead[best] = true;
            best = j;
          } else {
            dead[j] = true;
          }
        }
      }
      dead[best] = true;
      kept.push_back(cands[best]);
    }

    std::vector<Vec> obstacles;
    for (const Cand& cd : kept) {
      bool within =
          compare_norm2_to(cd.p, C.L2) != std::strong_ordering::greater;
      obstacles.push_back(cd.p);
      if (cd.mark) {
        if (within)
          record(C, SiteRef{SiteRef::Type::mark, cd.id}, cd.p, st.path,
                 st.dev.s, -1, cd.id);
        continue;
      }
      int cls = C.S.corner_class(T.copy, T.v[cd.id]);
      if (C.sing[cls]) {
        if (within)
          record(C, SiteRef{SiteRef::Type::cone, cls}, cd.p, st.path, st.dev.s,
                 T.copy, T.v[cd.id]);
      } else if (within) {
        spawn_through(C, stack, st, cd.id, cd.p);
      }
    }

    std::vector<Wedge> subs = split_wedge(st.W, obstacles);
    for (const Wedge& sub : subs) {
      for (int s = 0; s < 3; ++s) {
        if (!(st.allowed & (1u << s))) continue;
        const Vec& U = pv[s];
        const Vec& V = pv[(s + 1) % 3];
        if (cross_sign(U, V) != Sign::positive) continue;
        auto cw = intersect_wedge(sub, Wedge{U, V, false, false});
        if (!cw) continue;
        if (!segment_reachable(*cw, U, V, C.L2)) continue;
        State ch;
        ch.W = *cw;
        const TriSide& ts = T.side[s];
        if (ts.surf_edge >= 0) {
          int e = ts.surf_edge;
          const Gluing& g = C.S.glued(T.copy, e);
          const auto& [gs, gt] = C.M.trans[g.copy][g.edge];
          ch.dev.s = st.dev.s * gs;
          ch.dev.t = st.dev.apply(gt);
          auto [t2, s2] = C.M.edge_tri[g.copy][g.edge];
          ch.tri = t2;
          ch.allowed = (uint8_t)(0x7u & ~(1u << s2));
          ch.path = st.path;
          ch.path.emplace_back(T.copy, e);
        } else {
          ch.dev = st.dev;
          ch.tri = ts.nb;
          ch.allowed = (uint8_t)(0x7u & ~(1u << ts.nb_side));
          ch.path = st.path;
        }
        stack.push_back(std::move(ch));
      }
    }
  }
}

void run_from_corner(EnumCtx& C, int c, int v) {
  C.src_copy = c;
  C.src_vertex = v;
  C.src_mark = -1;
  const Polygon& P = C.S.copies[c];
  std::vector<State> init;
  for (int t : C.M.copy_tris[c]) {
    const Tri& T = C.M.tris[t];
    for (int i = 0; i < 3; ++i) {
      if (T.v[i] != v) continue;
      State st;
      st.tri = t;
      st.dev = DevMap{1, -P.vertex(v)};
      Vec a = st.dev.apply(P.vertex(T.v[(i + 1) % 3]));
      Vec b = st.dev.apply(P.vertex(T.v[(i + 2) % 3]));
      st.W = Wedge{a, b, true, true};
      // polygon corner sectors are half-open [lo, hi): a ray along the
      // incoming boundary edge belongs to the sector on its other side
      if (T.side[(i + 2) % 3].surf_edge >= 0) st.W.hi_c = false;
      st.allowed = (uint8_t)(1u << ((i + 1) % 3));
      init.push_back(std::move(st));
    }
  }
  run_states(C, std::move(init));
}

void run_from_mark(EnumCtx& C, int m) {
  const InteriorMark& im = C.S.interior_marks[m];
  C.src_copy = im.copy;
  C.src_vertex = -1;
  C.src_mark = m;
  const Polygon& P = C.S.copies[im.copy];
  std::vector<State> init;
  for (int t : C.M.copy_tris[im.copy]) {
    const Tri& T = C.M.tris[t];
    int loc = locate_in_tri(P, T, im.pos);
    if (loc == -2) continue;
    DevMap D{1, -im.pos};
    Vec d[3];
    for (int i = 0; i < 3; ++i) d[i] = D.apply(P.vertex(T.v[i]));
    auto push = [&](int side) {
      State st;
      st.tri = t;
      st.dev = D;
      st.W = Wedge{d[side], d[(side + 1) % 3], true, true};
      st.allowed = (uint8_t)(1u << side);
      init.push_back(std::move(st));
    };
    if (loc == -1) {
      push(0);
      push(1);
      push(2);
    } else {
      push((loc + 1) % 3);
      push((loc + 2) % 3);
    }
  }
  run_states(C, std::move(init));
}

bool sc_less(const SaddleConnection& a, const SaddleConnection& b) {
  if (a.len2 != b.len2) return (a.len2 - b.len2).sign_real() == Sign::negative;
  if (a.hol != b.hol) return cross_sign(a.hol, b.hol) == Sign::positive;
  if (!(a.src == b.src)) return a.src < b.src;
  if (!(a.dst == b.dst)) return a.dst < b.dst;
  if (a.ends != b.ends) return a.ends < b.ends;
  return a.path < b.path;
}

bool sc_eq(const SaddleConnection& a, const SaddleConnection& b) {
  return a.hol == b.hol && a.src == b.src && a.dst == b.dst &&
         a.ends == b.ends && a.path == b.path;
}

std::vector<bool> singular_classes(const Surface& S, bool marked_mode) {
  std::vector<bool> sing(S.classes.size());
  for (size_t i = 0; i < S.classes.size(); ++i)
    sing[i] = !(S.classes[i].cone_angle == Angle(2, 1)) ||
              (marked_mode && S.classes[i].marked);
  return sing;
}

// ---- cylinders -------------------------------------------------------------

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct Chord {
  int sc = -1;
  int copy = -1;
  Vec a, b;
  int dsign = 1;  // sign of (b - a) against the canonical direction
};

std::vector<Chord> replay_chords(const Surface& S,
                                 const std::vector<SaddleConnection>& scs,
                                 const std::vector<int>& ids) {
  std::vector<Chord> out;
  for (int id : ids) {
    const SaddleConnection& sc = scs[id];
    int flip = same_ray(sc.rep_hol, sc.hol) ? 1 : -1;
    int c = sc.rep_copy;
    Vec anchor = sc.rep_vertex >= 0 ? S.copies[c].vertex(sc.rep_vertex)
                                    : S.interior_marks[sc.rep_mark].pos;
    DevMap D{1, -anchor};
    Vec prev;
    for (const auto& [cc, e] : sc.rep_path) {
      Vec A = D.apply(S.copies[cc].vertex(e));
      Vec B = D.apply(S.copies[cc].vertex(e + 1));
      Cyc t = cross(A, B - A) / cross(sc.rep_hol, B - A);
      Vec x = sc.rep_hol.rotated(t);
      out.push_back({id, cc, D.apply_inv(prev), D.apply_inv(x), D.s * flip});
      const Gluing& g = S.glued(cc, e);
      auto [gs, gt] = S.gluing_transform(g.copy, g.edge);
      D = DevMap{D.s * gs, D.apply(gt)};
      prev = x;
      c = g.copy;
    }
    out.push_back(
        {id, c, D.apply_inv(prev), D.apply_inv(sc.rep_hol), D.s * flip});
  }
  return out;
}

struct FE {
  int kind = 0;  // 0 polygon sub-edge, 1 chord, 2 cut-edge bank
  int id = -1;   // poly edge / chord index / cut index
};

struct Face {
  int copy = -1;
  std::vector<int> nodes;
  std::vector<FE> edges;  // edges[i]: nodes[i] -> nodes[i+1 mod n]
};

struct Cut {
  int copy = -1, edge = -1, sc = -1, dsign = 1;
};

struct Component {
  bool cylinder = false;
  std::string reason;
  long faces = 0;
  Cylinder cyl;
};

struct CutComplex {
  std::vector<std::vector<Vec>> npos;    // per copy
  std::vector<std::vector<int>> nvert;   // polygon vertex id or -1
  std::vector<Chord> chords;
  std::vector<Cut> cuts;
  std::vector<Face> faces;
  std::vector<std::vector<std::pair<int, int>>> partner;  // (-1,-1) = boundary
  std::vector<std::vector<int>> cross_s;                  // gluing linear sign
};

// corner membership test for a sector from a counterclockwise to b,
// interior angle in (0, 2pi)
bool dir_in_corner(const Vec& a, const Vec& b, const Vec& d) {
  Sign s = cross_sign(a, b);
  if (s == Sign::positive)
    return cross_sign(a, d) == Sign::positive &&
           cross_sign(d, b) == Sign::positive;
  if (s == Sign::negative)
    return cross_sign(a, d) == Sign::positive ||
           cross_sign(d, b) == Sign::positive;
  if (dot_sign(a, b) == Sign::negative)
    return cross_sign(a, d) == Sign::positive;
  return false;
}

int find_face_pos(const Face& f, const std::vector<Vec>& NP, int node,
                  const Vec& dir) {
  int n = (int)f.nodes.size();
  int only = -1, count = 0;
  for (int j = 0; j < n; ++j)
    if (f.nodes[j] == node) {
      only = j;
      ++count;
    }
  if (count == 1) return only;
  for (int j = 0; j < n; ++j) {
    if (f.nodes[j] != node) continue;
    Vec a = NP[f.nodes[(j + 1) % n]] - NP[f.nodes[j]];
    Vec b = NP[f.nodes[(j + n - 1) % n]] - NP[f.nodes[j]];
    if (dir_in_corner(a, b, dir)) return j;
  }
  throw domain_error("face corner lookup failed");
}

void split_faces(const std::vector<Vec>& NP, Face face,
                 std::vector<std::tuple<int, int, int>> chords,  // (u, v, chord)
                 std::vector<Face>& out) {
  if (chords.empty()) {
    out.push_back(std::move(face));
    return;
  }
  auto [u, v, cid] = chords.back();
  chords.pop_back();
  int n = (int)face.nodes.size();
  int pu = find_face_pos(face, NP, u, NP[v] - NP[u]);
  int pv = find_face_pos(face, NP, v, NP[u] - NP[v]);
  Face f1, f2;
  f1.copy = f2.copy = face.copy;
  for (int j = pu;; j = (j + 1) % n) {
    f1.nodes.push_back(face.nodes[j]);
    if (j == pv) break;
    f1.edges.push_back(face.edges[j]);
  }
  f1.edges.push_back(FE{1, cid});
  for (int j = pv;; j = (j + 1) % n) {
    f2.nodes.push_back(face.nodes[j]);
    if (j == pu) break;
    f2.edges.push_back(face.edges[j]);
  }
  f2.edges.push_back(FE{1, cid});
  std::vector<std::tuple<int, int, int>> c1, c2;
  auto contains = [](const Face& f, int node) {
    return std::find(f.nodes.begin(), f.nodes.end(), node) != f.nodes.end();
  };
  for (const auto& q : chords) {
    auto [r, s, id2] = q;
    int probe = (r != u && r != v) ? r : s;
    // probe is an endpoint not duplicated by this split, so it lies in
    // exactly one side
    if (contains(f1, probe) && !(probe == u || probe == v))
      c1.push_back(q);
    else if (contains(f2, probe))
      c2.push_back(q);
    else
      c1.push_back(q);
  }
  split_faces(NP, std::move(f1), std::move(c1), out);
  split_faces(NP, std::move(f2), std::move(c2), out);
}

CutComplex build_cut_complex(const Surface& S,
                             const std::vector<SaddleConnection>& scs,
                             const std::vector<int>& ids) {
  CutComplex X;
  size_t nc = S.copy_count();
  X.npos.resize(nc);
  X.nvert.resize(nc);
  for (size_t c = 0; c < nc; ++c) {
    for (size_t v = 0; v < S.copies[c].size(); ++v) {
      X.npos[c].push_back(S.copies[c].vertex(v));
      X.nvert[c].push_back((int)v);
    }
  }

  std::map<std::pair<int, int>, int> cut_of;
  std::vector<Chord> raw = replay_chords(S, scs, ids);
  for (const Chord& ch : raw) {
    if (ch.a == ch.b) continue;  // zero-length piece at a pass-through vertex
    const Polygon& P = S.copies[ch.copy];
    int k = (int)P.size(), hit = -1;
    bool fwd = true;
    for (int e = 0; e < k; ++e) {
      if (ch.a == P.vertex(e) && ch.b == P.vertex(e + 1)) {
        hit = e;
        fwd = true;
        break;
      }
      if (ch.b == P.vertex(e) && ch.a == P.vertex(e + 1)) {
        hit = e;
        fwd = false;
        break;
      }
    }
    if (hit >= 0) {
      if (cut_of.count({ch.copy, hit})) continue;
      int ds = fwd ? ch.dsign : -ch.dsign;
      const Gluing& g = S.glued(ch.copy, hit);
      cut_of[{ch.copy, hit}] = (int)X.cuts.size();
      X.cuts.push_back({ch.copy, hit, ch.sc, ds});
      cut_of[{g.copy, g.edge}] = (int)X.cuts.size();
      X.cuts.push_back({g.copy, g.edge, ch.sc, -ds});
      continue;
    }
    bool dup = false;
    for (const Chord& o : X.chords)
      if (o.copy == ch.copy &&
          ((o.a == ch.a && o.b == ch.b) || (o.a == ch.b && o.b == ch.a))) {
        dup = true;
        break;
      }
    if (!dup) X.chords.push_back(ch);
  }

  auto node_of = [&](int c, const Vec& p) -> int {
    auto& NP = X.npos[c];
    for (int i = 0; i < (int)NP.size(); ++i)
      if (NP[i] == p) return i;
    NP.push_back(p);
    X.nvert[c].push_back(-1);
    return (int)NP.size() - 1;
  };

  // chord endpoints per copy and the face chords
  std::vector<std::vector<std::tuple<int, int, int>>> copy_chords(nc);
  for (size_t q = 0; q < X.chords.size(); ++q) {
    const Chord& ch = X.chords[q];
    int u = node_of(ch.copy, ch.a), v = node_of(ch.copy, ch.b);
    bool dup = false;
    for (const auto& [ou, ov, oc] : copy_chords[ch.copy])
      if ((ou == u && ov == v) || (ou == v && ov == u)) dup = true;
    if (!dup) copy_chords[ch.copy].emplace_back(u, v, (int)q);
  }

  // route every non-vertex node to the polygon edge it subdivides
  std::vector<std::vector<std::vector<int>>> edge_nodes(nc);
  for (size_t c = 0; c < nc; ++c) {
    const Polygon& P = S.copies[c];
    edge_nodes[c].resize(P.size());
    for (int i = (int)P.size(); i < (int)X.npos[c].size(); ++i) {
      const Vec& p = X.npos[c][i];
      int hit = -1;
      for (size_t e = 0; e < P.size(); ++e) {
        Vec A = P.vertex(e), B = P.vertex(e + 1);
        if (cross_sign(B - A, p - A) == Sign::zero &&
            dot_sign(p - A, B - A) == Sign::positive &&
            dot_sign(p - B, A - B) == Sign::positive) {
          hit = (int)e;
          break;
        }
      }
      if (hit < 0)
        throw domain_error(
            "cylinder decomposition: a cut endpoint is not on the boundary "
            "(interior marked points are not supported here)");
      edge_nodes[c][hit].push_back(i);
    }
    for (size_t e = 0; e < P.size(); ++e) {
      Vec A = P.vertex(e);
      std::sort(edge_nodes[c][e].begin(), edge_nodes[c][e].end(),
                [&](int i, int j) {
                  return compare_norm(X.npos[c][i] - A, X.npos[c][j] - A) ==
                         std::strong_ordering::less;
                });
    }
    // initial face: the full boundary cycle
    Face f0;
    f0.copy = (int)c;
    for (size_t e = 0; e < P.size(); ++e) {
      f0.nodes.push_back((int)e);
      f0.edges.push_back(FE{0, (int)e});
      for (int nd : edge_nodes[c][e]) {
        f0.nodes.push_back(nd);
        f0.edges.push_back(FE{0, (int)e});
      }
    }
    split_faces(X.npos[c], std::move(f0), copy_chords[c], X.faces);
  }

  // glue polygon sub-edges (skipping cut banks)
  X.partner.resize(X.faces.size());
  X.cross_s.resize(X.faces.size());
  std::map<std::tuple<int, int, int>, std::pair<int, int>> sub_index;
  for (size_t f = 0; f < X.faces.size(); ++f) {
    const Face& F = X.faces[f];
    X.partner[f].assign(F.nodes.size(), {-1, -1});
    X.cross_s[f].assign(F.nodes.size(), 1);
    for (size_t i = 0; i < F.edges.size(); ++i)
      if (F.edges[i].kind == 0)
        sub_index[{F.copy, F.edges[i].id, F.nodes[i]}] = {(int)f, (int)i};
  }
  for (size_t f = 0; f < X.faces.size(); ++f) {
    Face& F = X.faces[f];
    for (size_t i = 0; i < F.edges.size(); ++i) {
      if (F.edges[i].kind != 0) continue;
      int e = F.edges[i].id;
      auto ct = cut_of.find({F.copy, e});
      if (ct != cut_of.end()) {
        F.edges[i] = FE{2, ct->second};
        continue;
      }
      const Gluing& g = S.glued(F.copy, e);
      auto [s, t] = S.gluing_transform(F.copy, e);
      Vec b = X.npos[F.copy][F.nodes[(i + 1) % F.nodes.size()]];
      Vec bi = (s == 1 ? b : -b) + t;
      int bnode = -1;
      for (int j = 0; j < (int)X.npos[g.copy].size(); ++j)
        if (X.npos[g.copy][j] == bi) {
          bnode = j;
          break;
        }
      auto it = sub_index.find({g.copy, g.edge, bnode});
      if (bnode < 0 || it == sub_index.end())
        throw domain_error("cylinder decomposition: sub-edge match failed");
      X.partner[f][i] = it->second;
      X.cross_s[f][i] = s;
    }
  }
  return X;
}

std::vector<Component> decompose_direction(
    const Surface& S, const std::vector<SaddleConnection>& scs,
    const std::vector<int>& ids, const Vec& dir,
    const std::vector<bool>& sing) {
  CutComplex X = build_cut_complex(S, scs, ids);

  UnionFind uf(X.faces.size());
  for (size_t f = 0; f < X.faces.size(); ++f)
    for (size_t i = 0; i < X.partner[f].size(); ++i)
      if (X.partner[f][i].first >= 0) uf.unite((int)f, X.partner[f][i].first);

  // global boundary node set: everything incident to a cut
  std::set<std::pair<int, int>> gbnodes;
  for (size_t f = 0; f < X.faces.size(); ++f) {
    const Face& F = X.faces[f];
    size_t n = F.nodes.size();
    for (size_t i = 0; i < n; ++i)
      if (X.partner[f][i].first < 0) {
        gbnodes.insert({F.copy, F.nodes[i]});
        gbnodes.insert({F.copy, F.nodes[(i + 1) % n]});
      }
  }

  std::map<int, std::vector<int>> comps;
  for (size_t f = 0; f < X.faces.size(); ++f)
    comps[uf.find((int)f)].push_back((int)f);

  // pieces per saddle connection (for boundary traversal multiplicities);
  // cut edges appear as two banks of one underlying piece
  std::map<int, int> pieces;
  for (const Chord& ch : X.chords) pieces[ch.sc] += 1;
  std::map<int, int> cut_banks;
  for (const Cut& cu : X.cuts) cut_banks[cu.sc] += 1;
  for (const auto& [sc, k] : cut_banks) pieces[sc] += k / 2;

  std::vector<Component> out;
  for (auto& [root, faces] : comps) {
    Component K;
    K.faces = (long)faces.size();
    std::set<int> fset(faces.begin(), faces.end());

    // interior singularity check
    bool interior_sing = false;
    for (size_t cls = 0; cls < S.classes.size() && !interior_sing; ++cls) {
      if (!sing[cls]) continue;
      bool touches = false, on_boundary = false;
      for (const auto& [c, v] : S.classes[cls].corners) {
        if (gbnodes.count({c, v})) on_boundary = true;
        if (!touches)
          for (int f : faces) {
            const Face& F = X.faces[f];
            if (F.copy == c &&
                std::find(F.nodes.begin(), F.nodes.end(), v) != F.nodes.end()) {
              touches = true;
              break;
            }
          }
      }
      if (touches && !on_boundary) interior_sing = true;
    }
    if (interior_sing) {
      K.reason = "contains a singular point in its interior";
      out.push_back(std::move(K));
      continue;
    }

    // boundary circles
    std::set<std::pair<int, int>> visited;
    struct Circle {
      std::vector<std::pair<int, int>> fedges;
      std::vector<int> sigma;  // developed linear sign per fedge
    };
    std::vector<Circle> circles;
    bool angles_ok = true;
    std::string angle_why;
    for (int f0 : faces) {
      const Face& F0 = X.faces[f0];
      for (size_t i0 = 0; i0 < F0.nodes.size(); ++i0) {
        if (X.partner[f0][i0].first >= 0) continue;
        if (visited.count({f0, (int)i0})) continue;
        Circle cir;
        int f = f0, i = (int)i0, sigma = 1;
        do {
          visited.insert({f, i});
          cir.fedges.emplace_back(f, i);
          cir.sigma.push_back(sigma);
          // rotate around the head node to the next boundary edge,
          // certifying that the node is flat (angle exactly pi)
          int p = (i + 1) % (int)X.faces[f].nodes.size();
          Cyc witness(1);
          double approx = 0;
          while (true) {
            const Face& F = X.faces[f];
            int n = (int)F.nodes.size();
            Vec P0 = X.npos[F.copy][F.nodes[p]];
            Vec A = X.npos[F.copy][F.nodes[(p + 1) % n]] - P0;
            Vec Cc = X.npos[F.copy][F.nodes[(p + n - 1) % n]] - P0;
            Cyc w = Cc.value() * A.value().conj();
            double ang = std::atan2(w.imag_approx(), w.real_approx());
            if (ang <= 1e-12) ang += 2 * M_PI;
            approx += ang;
            witness *= w;
            if (X.partner[f][p].first < 0) break;
            sigma *= X.cross_s[f][p];
            auto [f2, j2] = X.partner[f][p];
            f = f2;
            p = (j2 + 1) % (int)X.faces[f2].nodes.size();
          }
          long mult = std::lround(approx / M_PI);
          if (mult != 1 || !witness.is_self_conjugate() ||
              witness.sign_real() != Sign::negative) {
            angles_ok = false;
            std::ostringstream os;
            os << "boundary sector of angle " << approx / M_PI
               << " pi (want exactly pi)";
            angle_why = os.str();
          }
          i = p;
        } while (!(f == f0 && i == (int)i0));
        circles.push_back(std::move(cir));
        if (!angles_ok) break;
      }
      if (!angles_ok) break;
    }
    if (!angles_ok) {
      K.reason = angle_why;
      out.push_back(std::move(K));
      continue;
    }
    if (circles.size() != 2) {
      std::ostringstream os;
      os << circles.size() << " boundary circles (want 2)";
      K.reason = os.str();
      out.push_back(std::move(K));
      continue;
    }

    // per-circle data: total length ratio, saddle connection sequence, side
    bool fail = false;
    Cyc circ2;
    std::vector<std::vector<int>> blist(2);
    int circle_type[2];   // 0 plain, 1 folded, 2 multi
    int circle_side[2];   // +1 bottom, -1 top, 0 mixed
    Cyc totals[2];
    for (int ci = 0; ci < 2 && !fail; ++ci) {
      const Circle& cir = circles[ci];
      Vec v0;
      Cyc total(0);
      std::map<int, int> count;
      std::vector<int> order;
      int side = 0;
      bool side_set = false, mixed = false;
      for (size_t k = 0; k < cir.fedges.size(); ++k) {
        auto [f, i] = cir.fedges[k];
        const Face& F = X.faces[f];
        int n = (int)F.nodes.size();
        Vec vvec = X.npos[F.copy][F.nodes[(i + 1) % n]] -
                   X.npos[F.copy][F.nodes[i]];
        const FE& fe = F.edges[i];
        int sc_id, verdict;
        if (fe.kind == 1) {
          const Chord& ch = X.chords[fe.id];
          sc_id = ch.sc;
          verdict = (vvec == ch.b - ch.a) ? ch.dsign : -ch.dsign;
        } else {
          const Cut& cu = X.cuts[fe.id];
          sc_id = cu.sc;
          verdict = cu.dsign;
        }
        if (!count.count(sc_id)) order.push_back(sc_id);
        count[sc_id] += 1;
        if (!side_set) {
          side = verdict;
          side_set = true;
        } else if (side != verdict) {
          mixed = true;
        }
        Vec dv = cir.sigma[k] == 1 ? vvec : -vvec;
        if (k == 0) {
          v0 = dv;
          total = Cyc(1);
        } else {
          Cyc rho = dv.value() / v0.value();
          if (!rho.is_self_conjugate()) {
            fail = true;
            break;
          }
          total += rho.sign_real() == Sign::negative ? -rho : rho;
        }
      }
      if (fail) break;
      circle_side[ci] = mixed ? 0 : side;
      totals[ci] = total * total * v0.norm2();
      int distinct = (int)order.size(), travs = 0;
      for (int sc_id : order) {
        int pc = pieces[sc_id];
        if (pc <= 0 || count[sc_id] % pc != 0) {
          fail = true;
          break;
        }
        int mult = count[sc_id] / pc;
        travs += mult;
        for (int r = 0; r < mult; ++r) blist[ci].push_back(sc_id);
      }
      if (fail) break;
      circle_type[ci] = (distinct == 1 && travs == 1)   ? 0
                        : (distinct == 1 && travs == 2) ? 1
                                                        : 2;
    }
    if (fail || !(totals[0] == totals[1])) {
      K.reason = "boundary circles are not parallel translates";
      out.push_back(std::move(K));
      continue;
    }
    circ2 = totals[0];

    Cyc area2(0);  // twice the component area
    for (int f : fset) {
      const Face& F = X.faces[f];
      int n = (int)F.nodes.size();
      for (int i = 0; i < n; ++i)
        area2 += cross(X.npos[F.copy][F.nodes[i]],
                       X.npos[F.copy][F.nodes[(i + 1) % n]]);
    }
    Cyc area = area2 / Rational(2);

    K.cylinder = true;
    K.cyl.direction = dir;
    K.cyl.circumference2 = circ2;
    K.cyl.area = area;
    K.cyl.height2 = (area * area) / circ2;
    int bottom;
    if (circle_side[0] == 1 && circle_side[1] != 1)
      bottom = 0;
    else if (circle_side[1] == 1 && circle_side[0] != 1)
      bottom = 1;
    else if (circle_side[0] == -1)
      bottom = 1;
    else
      bottom = 0;
    K.cyl.boundary_bottom = blist[bottom];
    K.cyl.boundary_top = blist[1 - bottom];
    if (circle_type[0] == 2 || circle_type[1] == 2)
      K.cyl.kind = Cylinder::Kind::complex;
    else if (circle_type[0] == 0 && circle_type[1] == 0)
      K.cyl.kind = Cylinder::Kind::simple;
    else if (circle_type[0] == 1 && circle_type[1] == 1)
      K.cyl.kind = Cylinder::Kind::other;
    else
      K.cyl.kind = Cylinder::Kind::envelope;
    out.push_back(std::move(K));
  }
  return out;
}

Vec canonical_direction(const Vec& d) {
  if (d.is_zero()) throw domain_error("zero direction");
  return upper_half(d) ? d : -d;
}

}  // namespace

std::vector<SaddleConnection> enumerate_saddle_connections(
    const Surface& S, const Rational& L, const EnumOptions& opt) {
  if (sgn(L) <= 0) throw domain_error("enumeration bound must be positive");
  if (opt.direction && opt.direction->is_zero())
    throw domain_error("zero direction");
  if (S.kind == SurfaceKind::cone)
    throw domain_error(
        "saddle connection enumeration needs a translation or "
        "half-translation structure");
  Rational L2 = L * L;
  TriMesh M = build_mesh(S);
  std::vector<bool> sing = singular_classes(S, opt.treat_marked_as_singular);
  std::vector<SaddleConnection> out;
  auto relevant = [&](const SiteRef& s) {
    if (!opt.endpoint_filter) return true;
    return site_in(opt.endpoint_filter->first, s) ||
           site_in(opt.endpoint_filter->second, s);
  };
  EnumCtx C{S, M, L2, opt.treat_marked_as_singular, sing, opt, out, {}};
  for (size_t cls = 0; cls < S.classes.size(); ++cls) {
    if (!sing[cls]) continue;
    SiteRef src{SiteRef::Type::cone, (int)cls};
    if (!relevant(src)) continue;
    C.src = src;
    for (const auto& [c, v] : S.classes[cls].corners) run_from_corner(C, c, v);
  }
  if (opt.treat_marked_as_singular) {
    for (size_t m = 0; m < S.interior_marks.size(); ++m) {
      SiteRef src{SiteRef::Type::mark, (int)m};
      if (!relevant(src)) continue;
      C.src = src;
      run_from_mark(C, (int)m);
    }
  }
  std::sort(out.begin(), out.end(), sc_less);
  out.erase(std::unique(out.begin(), out.end(), sc_eq), out.end());
  return out;
}

CylinderSet cylinders_up_to(const Surface& S, const Rational& L,
                            bool treat_marked_as_singular) {
  if (treat_marked_as_singular && !S.interior_marks.empty())
    throw domain_error(
        "cylinder decomposition does not support interior marked points");
  EnumOptions opt;
  opt.treat_marked_as_singular = treat_marked_as_singular;
  CylinderSet R;
  R.connections = enumerate_saddle_connections(S, L, opt);
  std::vector<bool> sing = singular_classes(S, treat_marked_as_singular);
  Rational L2 = L * L;

  std::vector<std::pair<Vec, std::vector<int>>> groups;
  for (size_t i = 0; i < R.connections.size(); ++i) {
    const Vec& h = R.connections[i].hol;
    bool put = false;
    for (auto& [d, ids] : groups)
      if (parallel(d, h)) {
        ids.push_back((int)i);
        put = true;
        break;
      }
    if (!put) groups.push_back({h, {(int)i}});
  }
  for (const auto& [d, ids] : groups) {
    auto comps = decompose_direction(S, R.connections, ids, d, sing);
    for (auto& K : comps) {
      if (!K.cylinder) continue;
      if (sign_minus(K.cyl.circumference2, L2) == Sign::positive) continue;
      R.cylinders.push_back(std::move(K.cyl));
    }
  }
  return R;
}

CylinderGraph cylinder_graph(const Surface& S, const Vec& direction) {
  if (!S.interior_marks.empty())
    throw domain_error(
        "cylinder decomposition does not support interior marked points");
  Vec dir = canonical_direction(direction);
  double a = S.area().real_approx();
  long l0 = std::max(2L, (long)std::ceil(4.0 * std::sqrt(std::max(a, 1.0))));
  Rational L(l0);
  size_t prev = (size_t)-1;
  std::string last_reason = "no saddle connections in this direction";
  EnumOptions eopt;
  eopt.direction = dir;
  for (int iter = 0; iter < 8; ++iter, L *= 2) {
    auto scs = enumerate_saddle_connections(S, L, eopt);
    std::vector<int> ids;
    for (size_t i = 0; i < scs.size(); ++i)
      if (parallel(scs[i].hol, dir)) ids.push_back((int)i);
    if (!ids.empty()) {
      std::vector<bool> sing = singular_classes(S, true);
      auto comps = decompose_direction(S, scs, ids, dir, sing);
      bool all = true;
      for (size_t k = 0; k < comps.size(); ++k)
        if (!comps[k].cylinder) {
          all = false;
          std::ostringstream os;
          os << "component " << k << " (" << comps[k].faces
             << " faces) is not a cylinder: " << comps[k].reason;
          last_reason = os.str();
        }
      if (all) {
        CylinderGraph G;
        G.direction = dir;
        std::map<int, int> remap;
        for (int id : ids) {
          remap[id] = (int)G.connections.size();
          G.connections.push_back(scs[id]);
        }
        for (auto& K : comps) {
          for (int& b : K.cyl.boundary_top) b = remap.at(b);
          for (int& b : K.cyl.boundary_bottom) b = remap.at(b);
          G.cylinders.push_back(std::move(K.cyl));
        }
        for (size_t i = 0; i < G.cylinders.size(); ++i)
          for (size_t j = 0; j < G.cylinders.size(); ++j) {
            bool shared = false;
            for (int t : G.cylinders[i].boundary_top)
              for (int b : G.cylinders[j].boundary_bottom)
                if (t == b) shared = true;
            if (shared) G.edges.emplace_back((int)i, (int)j);
          }
        return G;
      }
      if (ids.size() == prev)
        throw domain_error("direction is not completely periodic: " +
                           last_reason);
      prev = ids.size();
    }
  }
  throw domain_error("direction is not completely periodic: " + last_reason);
}

std::vector<std::tuple<int, Vec, Vec>> trace_segments(
    const Surface& S, const SaddleConnection& sc) {
  std::vector<SaddleConnection> one{sc};
  std::vector<std::tuple<int, Vec, Vec>> out;
  for (const Chord& ch : replay_chords(S, one, {0}))
    out.emplace_back(ch.copy, ch.a, ch.b);
  return out;
}

bool area_partition_check(const Surface& S, const Vec& direction) {
  try {
    CylinderGraph G = cylinder_graph(S, direction);
    Cyc total(0);
    for (const Cylinder& c : G.cylinders) total += c.area;
    return total == S.area();
  } catch (const domain_error&) {
    return false;
  }
}

}  // namespace flatbill
