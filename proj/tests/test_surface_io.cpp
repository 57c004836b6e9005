#include "flatbill/surface_io.hpp"
#include "flatbill/unfold.hpp"

#include <doctest.h>

using namespace flatbill;

TEST_CASE("surface JSON round trip is bit-exact") {
  std::vector<Surface> fixtures;
  fixtures.push_back(make_square_torus());
  fixtures.push_back(make_staircase(2));
  fixtures.push_back(unfold(realize(make_right_triangle(3, 8))));
  fixtures.push_back(partial_unfold(realize(make_right_triangle(3, 8))));
  fixtures.push_back(partial_unfold(realize(make_parallelogram(2, 3, 5, Rational(1, 2)))));
  fixtures.push_back(pillowcase_double(realize(make_right_triangle(1, 2))));

  {
    Surface marked = partial_unfold(realize(make_right_triangle(3, 8)));
    mark_billiard_points(marked, {Vec(Rational(1, 2), Rational(0)),
                                  Vec(Rational(1, 4), Rational(1, 8))});
    fixtures.push_back(std::move(marked));
  }

  for (const Surface& S : fixtures) {
    std::string once = surface_to_json(S);
    Surface T = surface_from_json(once);
    CHECK(surface_to_json(T) == once);
    CHECK(T.kind == S.kind);
    CHECK(T.copy_count() == S.copy_count());
    CHECK(T.classes.size() == S.classes.size());
    CHECK(T.area() == S.area());
    CHECK(T.degree_over_double == S.degree_over_double);
    CHECK(T.interior_marks.size() == S.interior_marks.size());
    if (S.kind != SurfaceKind::cone)
      CHECK(stratum_of(T).str() == stratum_of(S).str());
  }
}

TEST_CASE("surface JSON rejects corrupted input") {
  std::string good = surface_to_json(make_square_torus());
  CHECK_THROWS_AS(surface_from_json("{}"), std::exception);

  std::string wrong_tag = good;
  wrong_tag.replace(wrong_tag.find("flatbill-surface/1"), 18, "flatbill-surface/9");
  CHECK_THROWS_AS(surface_from_json(wrong_tag), domain_error);
}

TEST_CASE("surface file save/load") {
  Surface S = make_staircase(1);
  save_surface(S, "staircase1.json");
  Surface T = load_surface("staircase1.json");
  CHECK(stratum_of(T).str() == "H(2)");
  CHECK_THROWS_AS(load_surface("does_not_exist.json"), domain_error);
}
