#include "flatbill/surface_io.hpp"

#include <json.hpp>

#include <fstream>
#include <numeric>
#include <sstream>

namespace flatbill {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
  return json::array({r.get_num().get_str(), r.get_den().get_str()});
}

Rational rational_from(const json& j) {
  Rational r(mpz_class(j.at(0).get<std::string>()), mpz_class(j.at(1).get<std::string>()));
  r.canonicalize();
  return r;
}

json cyc_json(const Cyc& z) {
  json coeffs = json::array();
  for (const Rational& c : z.coeffs()) coeffs.push_back(rational_json(c));
  return json{{"order", z.order()}, {"coeffs", coeffs}};
}

Cyc cyc_from(const json& j) {
  std::vector<Rational> coeffs;
  for (const json& c : j.at("coeffs")) coeffs.push_back(rational_from(c));
  return Cyc::from_coeffs(j.at("order").get<long>(), std::move(coeffs));
}

// all coordinates are written in one surface-wide cyclotomic order so the
// round trip is bit-exact (reconstruction via x + i y would otherwise lift
// mixed-order coordinates differently on each pass)
json vec_json(const Vec& v, long order) {
  return json::array({cyc_json(v.re().lifted(order)), cyc_json(v.im().lifted(order))});
}

Vec vec_from(const json& j) {
  return Vec(cyc_from(j.at(0)) + cyc_from(j.at(1)) * Cyc::zeta(4, 1));
}

json polygon_json(const Polygon& P, long order) {
  json verts = json::array(), angs = json::array();
  for (const Vec& v : P.vertices) verts.push_back(vec_json(v, order));
  for (const Angle& a : P.angles) angs.push_back(json::array({a.p, a.q}));
  return json{{"vertices", verts}, {"angles", angs}};
}

Polygon polygon_from(const json& j) {
  Polygon P;
  for (const json& v : j.at("vertices")) P.vertices.push_back(vec_from(v));
  for (const json& a : j.at("angles"))
    P.angles.emplace_back(a.at(0).get<long>(), a.at(1).get<long>());
  return P;
}

std::string kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::translation: return "translation";
    case SurfaceKind::half_translation: return "half_translation";
    case SurfaceKind::cone: return "cone";
  }
  throw domain_error("surface_io: bad kind");
}

SurfaceKind kind_from(const std::string& s) {
  if (s == "translation") return SurfaceKind::translation;
  if (s == "half_translation") return SurfaceKind::half_translation;
  if (s == "cone") return SurfaceKind::cone;
  throw domain_error("surface_io: unknown kind '" + s + "'");
}

}  // namespace

std::string surface_to_json(const Surface& S) {
  json j;
  j["format"] = kSurfaceFormat;
  j["kind"] = kind_name(S.kind);

  long order = 4;
  auto absorb = [&order](const Cyc& z) { order = std::lcm(order, z.order()); };
  for (const Polygon& P : S.copies)
    for (const Vec& v : P.vertices) absorb(v.value());
  for (const Vec& v : S.base.vertices) absorb(v.value());
  for (const CopyTag& t : S.tags) absorb(t.rot);
  for (const InteriorMark& m : S.interior_marks) absorb(m.pos.value());

  json polys = json::array();
  for (const Polygon& P : S.copies) polys.push_back(polygon_json(P, order));
  j["cyclotomic_order"] = order;
  j["polygons"] = polys;

  json gl = json::array();
  for (size_t c = 0; c < S.gluings.size(); ++c)
    for (size_t e = 0; e < S.gluings[c].size(); ++e) {
      const Gluing& g = S.gluings[c][e];
      bool first = static_cast<size_t>(g.copy) > c ||
                   (static_cast<size_t>(g.copy) == c && static_cast<size_t>(g.edge) > e);
      if (first) gl.push_back(json::array({c, e, g.copy, g.edge}));
    }
  j["gluings"] = gl;

  json cps = json::array();
  for (const PointClass& cls : S.classes) {
    json corners = json::array();
    for (auto [c, v] : cls.corners) corners.push_back(json::array({c, v}));
    cps.push_back(json{{"cone_angle", json::array({cls.cone_angle.p, cls.cone_angle.q})},
                       {"corners", corners},
                       {"marked", cls.marked}});
  }
  j["cone_points"] = cps;

  json mps = json::array();
  for (const InteriorMark& m : S.interior_marks)
    mps.push_back(json{{"copy", m.copy}, {"pos", vec_json(m.pos, order)}, {"point_id", m.point_id}});
  j["marked_points"] = mps;

  json tags = json::array();
  for (const CopyTag& t : S.tags)
    tags.push_back(json{{"rot", cyc_json(t.rot.lifted(order))}, {"reflect", t.reflect}});
  j["tags"] = tags;
  j["base"] = polygon_json(S.base, order);
  j["degree_over_double"] = rational_json(S.degree_over_double);

  return j.dump(2);
}

Surface surface_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("format").get<std::string>() != kSurfaceFormat)
    throw domain_error("surface_io: unsupported format tag");
  Surface S;
  S.kind = kind_from(j.at("kind").get<std::string>());
  for (const json& p : j.at("polygons")) S.copies.push_back(polygon_from(p));

  S.gluings.resize(S.copies.size());
  for (size_t c = 0; c < S.copies.size(); ++c)
    S.gluings[c].assign(S.copies[c].size(), Gluing{});
  for (const json& g : j.at("gluings")) {
    int ci = g.at(0).get<int>(), ei = g.at(1).get<int>();
    int cj = g.at(2).get<int>(), ej = g.at(3).get<int>();
    if (ci < 0 || static_cast<size_t>(ci) >= S.copies.size() || cj < 0 ||
        static_cast<size_t>(cj) >= S.copies.size())
      throw domain_error("surface_io: gluing copy out of range");
    Vec src = S.copies[static_cast<size_t>(ci)].edge(static_cast<size_t>(ei));
    Vec dst = S.copies[static_cast<size_t>(cj)].edge(static_cast<size_t>(ej));
    int sign;
    if (S.kind == SurfaceKind::cone)
      sign = 0;
    else if (src == -dst)
      sign = +1;
    else if (src == dst)
      sign = -1;
    else
      throw domain_error("surface_io: gluing edges do not match");
    S.gluings[static_cast<size_t>(ci)][static_cast<size_t>(ei)] = {cj, ej, sign};
    S.gluings[static_cast<size_t>(cj)][static_cast<size_t>(ej)] = {ci, ei, sign};
  }

  for (const json& t : j.at("tags"))
    S.tags.push_back(CopyTag{cyc_from(t.at("rot")), t.at("reflect").get<bool>()});
  S.base = polygon_from(j.at("base"));
  S.degree_over_double = rational_from(j.at("degree_over_double"));

  S.compute_classes();
  const json& cps = j.at("cone_points");
  if (cps.size() != S.classes.size())
    throw domain_error("surface_io: cone point count mismatch");
  for (size_t i = 0; i < S.classes.size(); ++i) {
    const json& cp = cps[i];
    if (Angle(cp.at("cone_angle").at(0).get<long>(),
              cp.at("cone_angle").at(1).get<long>()) != S.classes[i].cone_angle)
      throw domain_error("surface_io: cone angle mismatch");
    const json& corners = cp.at("corners");
    if (corners.size() != S.classes[i].corners.size())
      throw domain_error("surface_io: cone corner count mismatch");
    for (size_t k = 0; k < corners.size(); ++k)
      if (corners[k].at(0).get<int>() != S.classes[i].corners[k].first ||
          corners[k].at(1).get<int>() != S.classes[i].corners[k].second)
        throw domain_error("surface_io: cone corner mismatch");
    S.classes[i].marked = cp.at("marked").get<bool>();
  }

  for (const json& m : j.at("marked_points"))
    S.interior_marks.push_back(InteriorMark{m.at("copy").get<int>(),
                                            vec_from(m.at("pos")),
                                            m.at("point_id").get<int>()});
  S.check();
  return S;
}

void save_surface(const Surface& S, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw domain_error("surface_io: cannot open '" + path + "' for writing");
  out << surface_to_json(S) << "\n";
}

Surface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("surface_io: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return surface_from_json(buf.str());
}

}  // namespace flatbill
