#pragma once

#include "flatbill/surface.hpp"

#include <iosfwd>
#include <string>

namespace flatbill {

inline constexpr const char* kSurfaceFormat = "flatbill-surface/1";

/// JSON surface format: {format, kind, cyclotomic_order, polygons (vertices
/// as [x, y] pairs of exact cyclotomic numbers), gluings [[ci,ei,cj,ej]],
/// cone_points, marked_points, base, tags, degree_over_double}. Gluing signs
/// are rederived from edge holonomy on load; the round trip is bit-exact.
std::string surface_to_json(const Surface& S);
Surface surface_from_json(const std::string& text);

void save_surface(const Surface& S, const std::string& path);
Surface load_surface(const std::string& path);

}  // namespace flatbill
