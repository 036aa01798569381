#include <catch2/catch_amalgamated.hpp>

#include "polyq/polytope.hpp"
#include "support/fixtures.hpp"

using polyq::json;
using polyq::Scalar;
using polyq::ValidationError;
using polyq::Vector;

namespace {

json facet(std::vector<std::string> normal, std::string offset) {
  json f;
  f["normal"] = normal;
  f["offset"] = offset;
  return f;
}

json doc(int n, std::vector<json> facets) {
  json d;
  d["dimension"] = n;
  d["field"] = {{"kind", "rational"}};
  d["facets"] = facets;
  return d;
}

}  // namespace

TEST_CASE("interval loads and certifies") {
  const auto p = load_fixture("interval");
  CHECK(p.n == 1);
  CHECK(p.d == 2);
  REQUIRE(p.vertices.size() == 2);
  // both endpoints found, each active on exactly one facet
  std::vector<Scalar> coords{p.vertices[0].mu[0], p.vertices[1].mu[0]};
  std::sort(coords.begin(), coords.end());
  CHECK(coords[0] == Scalar(0));
  CHECK(coords[1] == Scalar(1));
  CHECK(p.slack(p.interior_point, 0).sign() == 1);
  CHECK(p.slack(p.interior_point, 1).sign() == 1);
}

TEST_CASE("square pyramid loads with apex vertex") {
  const auto p = load_fixture("pyramid");
  CHECK(p.n == 3);
  CHECK(p.d == 5);
  REQUIRE(p.vertices.size() == 5);
  const Vector apex{Scalar(0), Scalar(0), Scalar(1)};
  bool found = false;
  for (const auto& v : p.vertices)
    if (v.mu == apex) {
      found = true;
      CHECK(v.active == std::vector<int>{1, 2, 3, 4});
    }
  CHECK(found);
}

TEST_CASE("unbounded input is rejected") {
  // X = (1), (1) in n = 1: normals do not positively span
  const auto bad = doc(1, {facet({"1"}, "0"), facet({"1"}, "-1")});
  CHECK_THROWS_MATCHES(polyq::load_polytope(bad), ValidationError,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("positively span")));
  // a single halfspace
  const auto half = doc(2, {facet({"1", "0"}, "0"), facet({"0", "1"}, "0")});
  CHECK_THROWS_AS(polyq::load_polytope(half), ValidationError);
}

TEST_CASE("lower-dimensional and empty inputs are rejected") {
  // x >= 0 and -x >= 0 pin x = 0: a single point, not full-dimensional
  const auto point = doc(1, {facet({"1"}, "0"), facet({"-1"}, "0")});
  try {
    polyq::load_polytope(point);
    FAIL("expected empty_interior");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "empty_interior");
  }
  // empty: x >= 1 and x <= 0
  const auto empty = doc(1, {facet({"1"}, "1"), facet({"-1"}, "0")});
  try {
    polyq::load_polytope(empty);
    FAIL("expected empty_interior");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "empty_interior");
  }
}

TEST_CASE("redundant facet rows are rejected") {
  // x + y >= -5 is slack on all of the unit square
  const auto red = doc(2, {facet({"1", "0"}, "0"), facet({"-1", "0"}, "-1"),
                           facet({"0", "1"}, "0"), facet({"0", "-1"}, "-1"),
                           facet({"1", "1"}, "-5")});
  try {
    polyq::load_polytope(red);
    FAIL("expected redundant_facet");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "redundant_facet");
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("facet 5"));
  }
  // duplicated halfspace (scaled copy of facet 1)
  const auto dup = doc(2, {facet({"1", "0"}, "0"), facet({"-1", "0"}, "-1"),
                           facet({"0", "1"}, "0"), facet({"0", "-1"}, "-1"),
                           facet({"2", "0"}, "0")});
  try {
    polyq::load_polytope(dup);
    FAIL("expected redundant_facet");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "redundant_facet");
  }
}

TEST_CASE("touching but non-facet-defining inequality is accepted") {
  // x + y >= 0 touches the unit square exactly at the origin vertex; by the
  // stated-input rule it is active on a face, hence legitimate (and it makes
  // that vertex singular)
  const auto touch = doc(2, {facet({"1", "0"}, "0"), facet({"-1", "0"}, "-1"),
                             facet({"0", "1"}, "0"), facet({"0", "-1"}, "-1"),
                             facet({"1", "1"}, "0")});
  const auto p = polyq::load_polytope(touch);
  CHECK(p.d == 5);
  bool has_origin = false;
  for (const auto& v : p.vertices)
    if (v.mu == Vector{Scalar(0), Scalar(0)}) {
      has_origin = true;
      CHECK(v.active == std::vector<int>{0, 2, 4});
    }
  CHECK(has_origin);
}

TEST_CASE("malformed scalars are rejected") {
  const auto bad = doc(1, {facet({"1"}, "0"), facet({"-1"}, "1/0")});
  try {
    polyq::load_polytope(bad);
    FAIL("expected malformed_scalar");
  } catch (const ValidationError& e) {
    CHECK(e.code() == "malformed_scalar");
  }
}

TEST_CASE("document shape errors") {
  CHECK_THROWS_AS(polyq::load_polytope(json::parse("{}")), ValidationError);
  CHECK_THROWS_AS(polyq::load_polytope(json::parse("{\"dimension\": 0, \"facets\": []}")),
                  ValidationError);
  // wrong normal length
  const auto bad = doc(2, {facet({"1"}, "0")});
  CHECK_THROWS_AS(polyq::load_polytope(bad), ValidationError);
  // zero normal
  const auto zero = doc(1, {facet({"0"}, "0"), facet({"1"}, "0")});
  CHECK_THROWS_AS(polyq::load_polytope(zero), ValidationError);
}

TEST_CASE("nonrational triangle loads over Q(sqrt 2)") {
  const auto p = load_fixture("triangle_sqrt2");
  CHECK(p.n == 2);
  CHECK(p.d == 3);
  REQUIRE(p.vertices.size() == 3);
  // vertices (0,0), (1,0), (0, sqrt2/2)
  const Scalar half_r2 = Scalar::quadratic(0, polyq::Rational(1, 2), 2);
  int hits = 0;
  for (const auto& v : p.vertices) {
    if (v.mu == Vector{Scalar(0), Scalar(0)}) ++hits;
    if (v.mu == Vector{Scalar(1), Scalar(0)}) ++hits;
    if (v.mu == Vector{Scalar(0), half_r2}) ++hits;
  }
  CHECK(hits == 3);
}

TEST_CASE("float-mode load works for sampling use") {
  json d;
  d["dimension"] = 1;
  d["field"] = {{"kind", "float"}, {"tol", 1e-9}};
  d["facets"] = {json{{"normal", {1.0}}, {"offset", 0.0}},
                 json{{"normal", {-1.0}}, {"offset", -1.0}}};
  const auto p = polyq::load_polytope(d);
  CHECK(p.d == 2);
  CHECK(p.vertices.size() == 2);
}
