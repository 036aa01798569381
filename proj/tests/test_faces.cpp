#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "polyq/faces.hpp"
#include "polyq/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using polyq::Face;
using polyq::FacePoset;
using polyq::HPolytope;
using polyq::Scalar;
using polyq::Vector;

namespace {

std::map<int, int> count_by_dim(const FacePoset& fp) {
  std::map<int, int> out;
  for (const auto& f : fp.faces) ++out[f.p];
  return out;
}

void check_against_oracle(const HPolytope& p, const FacePoset& fp) {
  const auto expected = oracle::brute_force_faces(p);
  REQUIRE(fp.size() == static_cast<int>(expected.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(fp.faces[i].I == expected[i].I);  // same canonical order
    CHECK(fp.faces[i].p == expected[i].p);
  }
}

void check_internal_invariants(const HPolytope& p, const FacePoset& fp) {
  for (const auto& f : fp.faces) {
    CHECK(f.r == static_cast<int>(f.I.size()));
    CHECK(f.r >= p.n - f.p);
    CHECK(f.singular == (f.r > p.n - f.p));
    // witness lies in the relative interior: active set is exactly I
    CHECK(p.active_set(f.witness) == f.I);
    // p = n - rank{X_j : j in I}
    std::vector<Vector> rows;
    for (const int j : f.I) rows.push_back(p.normals[j]);
    const std::size_t rk = f.I.empty() ? 0 : polyq::rank(polyq::Matrix::from_rows(rows));
    CHECK(f.p == p.n - static_cast<int>(rk));
  }
}

}  // namespace

TEST_CASE("interval has 3 faces") {
  const auto p = load_fixture("interval");
  const auto fp = enumerate_faces(p);
  REQUIRE(fp.size() == 3);
  CHECK(fp.faces[0].I == std::vector<int>{0});  // vertex 0
  CHECK(fp.faces[1].I == std::vector<int>{1});  // vertex 1
  CHECK(fp.faces[2].I == std::vector<int>{});   // Int
  CHECK(fp.faces[0].p == 0);
  CHECK(fp.faces[2].p == 1);
  check_against_oracle(p, fp);
  check_internal_invariants(p, fp);
}

TEST_CASE("square pyramid face lattice and classification") {
  const auto p = load_fixture("pyramid");
  const auto fp = enumerate_faces(p);
  check_against_oracle(p, fp);
  check_internal_invariants(p, fp);

  const auto by_dim = count_by_dim(fp);
  CHECK(by_dim.at(0) == 5);  // vertices
  CHECK(by_dim.at(1) == 8);  // edges
  CHECK(by_dim.at(2) == 5);  // facets
  CHECK(by_dim.at(3) == 1);  // interior
  CHECK(fp.size() == 19);

  // the apex (active on all four slants) is the unique singular face
  const int apex = fp.find({1, 2, 3, 4});
  REQUIRE(apex >= 0);
  CHECK(fp.faces[apex].r == 4);
  CHECK(fp.faces[apex].p == 0);
  CHECK(fp.faces[apex].singular);
  CHECK(classify_face(fp.faces[apex]) == polyq::FaceClass::singular);
  CHECK(fp.singular_faces() == std::vector<int>{apex});

  // a base vertex is regular: r = 3 = n - p
  const int base = fp.find({0, 2, 4});
  REQUIRE(base >= 0);
  CHECK(fp.faces[base].witness == Vector{Scalar(1), Scalar(1), Scalar(0)});
  CHECK(fp.faces[base].r == 3);
  CHECK_FALSE(fp.faces[base].singular);
}

TEST_CASE("cube is simple: 27 faces, all regular") {
  const auto p = load_fixture("cube");
  const auto fp = enumerate_faces(p);
  CHECK(fp.size() == 27);
  for (const auto& f : fp.faces) {
    CHECK(f.r == p.n - f.p);
    CHECK_FALSE(f.singular);
  }
  check_against_oracle(p, fp);
  check_internal_invariants(p, fp);
}

TEST_CASE("oracle equivalence across the fixture set") {
  for (const auto* name :
       {"square", "triangle_sqrt2", "pyramid4", "octahedron", "corner", "pyramid_sqrt2"}) {
    INFO(name);
    const auto p = load_fixture(name);
    const auto fp = enumerate_faces(p);
    check_against_oracle(p, fp);
    check_internal_invariants(p, fp);
  }
}

TEST_CASE("quadrilateral with irrational vertices over Q(sqrt 2)") {
  // two slanted facets meet at ((sqrt2)-1, (sqrt2)-1); feasibility there
  // exercises the two-term sign comparison
  polyq::json doc;
  doc["dimension"] = 2;
  doc["field"] = {{"kind", "quadratic"}, {"D", 2}};
  doc["facets"] = polyq::json::array();
  doc["facets"].push_back(polyq::json{{"normal", {"1", "0"}}, {"offset", "0"}});
  doc["facets"].push_back(polyq::json{{"normal", {"0", "1"}}, {"offset", "0"}});
  {
    polyq::json f;
    f["normal"] = polyq::json::array();
    f["normal"].push_back("-1");
    f["normal"].push_back(polyq::json::array({"0", "-1"}));
    f["offset"] = "-1";
    doc["facets"].push_back(f);
  }
  {
    polyq::json f;
    f["normal"] = polyq::json::array();
    f["normal"].push_back(polyq::json::array({"0", "-1"}));
    f["normal"].push_back("-1");
    f["offset"] = "-1";
    doc["facets"].push_back(f);
  }
  const auto p = polyq::load_polytope(doc);
  const auto fp = enumerate_faces(p);
  CHECK(fp.size() == 9);  // 4 vertices, 4 edges, interior
  const polyq::Scalar c =
      polyq::Scalar::sqrt_d(2) - polyq::Scalar(1);  // the slanted corner coordinate
  bool found = false;
  for (const auto& v : fp.vertices)
    if (v.mu == polyq::Vector{c, c}) found = true;
  CHECK(found);
  check_against_oracle(p, fp);
  check_internal_invariants(p, fp);
}

TEST_CASE("oracle equivalence at d = 10: a decagon from rational circle points") {
  polyq::json doc;
  doc["dimension"] = 2;
  doc["field"] = {{"kind", "rational"}};
  const std::vector<std::pair<std::string, std::string>> normals = {
      {"1", "0"},     {"4/5", "3/5"},   {"3/5", "4/5"},  {"0", "1"},  {"-3/5", "4/5"},
      {"-1", "0"},    {"-4/5", "-3/5"}, {"0", "-1"},     {"3/5", "-4/5"},
      {"4/5", "-3/5"}};
  doc["facets"] = polyq::json::array();
  for (const auto& [x, y] : normals)
    doc["facets"].push_back(polyq::json{{"normal", {x, y}}, {"offset", "-1"}});
  const auto p = polyq::load_polytope(doc);
  CHECK(p.d == 10);
  const auto fp = enumerate_faces(p);
  CHECK(fp.size() == 21);  // 10 vertices + 10 edges + interior
  check_against_oracle(p, fp);
  check_internal_invariants(p, fp);
}

TEST_CASE("Euler relation on the boundary complex") {
  for (const auto* name :
       {"interval", "square", "cube", "pyramid", "triangle_sqrt2", "pyramid4", "octahedron", "corner"}) {
    INFO(name);
    const auto p = load_fixture(name);
    const auto fp = enumerate_faces(p);
    const long expected = p.n % 2 == 0 ? 0 : 2;  // 1 - (-1)^n
    CHECK(euler_boundary_sum(fp, p.n) == expected);
  }
}

TEST_CASE("face poset axioms") {
  const auto p = load_fixture("pyramid");
  const auto fp = enumerate_faces(p);
  const int interior = fp.interior_index();
  REQUIRE(interior >= 0);
  for (int i = 0; i < fp.size(); ++i) {
    CHECK(fp.leq(i, interior));  // Int is the unique maximum
    CHECK(fp.leq(i, i));
    for (int j = 0; j < fp.size(); ++j) {
      if (i != j && fp.leq(i, j) && fp.leq(j, i)) FAIL("antisymmetry violated");
      if (i != j && fp.leq(i, j)) CHECK(fp.faces[i].p < fp.faces[j].p);  // graded
      for (int k = 0; k < fp.size(); ++k)
        if (fp.leq(i, j) && fp.leq(j, k)) CHECK(fp.leq(i, k));
    }
  }
  // canonical order: (p, lex I)
  for (int i = 0; i + 1 < fp.size(); ++i) {
    const auto &a = fp.faces[i], &b = fp.faces[i + 1];
    CHECK((a.p < b.p || (a.p == b.p && a.I < b.I)));
  }
}

TEST_CASE("oracle equivalence on randomized polytopes") {
  // random offsets over a fixed positively-spanning normal pool; draws that
  // fail validation (redundant rows etc.) are skipped
  polyq::SplitRng rng(2718, 0);
  int accepted = 0;
  for (int trial = 0; trial < 60 && accepted < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 2);
    polyq::json doc;
    doc["dimension"] = n;
    doc["field"] = {{"kind", "rational"}};
    doc["facets"] = polyq::json::array();
    const auto add_facet = [&](std::vector<long long> normal) {
      polyq::json f;
      f["normal"] = polyq::json::array();
      for (const auto c : normal) f["normal"].push_back(std::to_string(c));
      const long long num = -static_cast<long long>(rng.uniform_int(6));
      const long long den = 1 + static_cast<long long>(rng.next() % 3);
      f["offset"] = std::to_string(num) + "/" + std::to_string(den);
      doc["facets"].push_back(f);
    };
    for (int i = 0; i < n; ++i) {
      std::vector<long long> plus(n, 0), minus(n, 0);
      plus[i] = 1;
      minus[i] = -1;
      add_facet(plus);
      add_facet(minus);
    }
    const int extra = 1 + static_cast<int>(rng.next() % 3);
    for (int e = 0; e < extra; ++e) {
      std::vector<long long> v(n);
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<long long>(rng.next() % 3) - 1;
        if (v[i] != 0) nonzero = true;
      }
      if (!nonzero) v[0] = 1;
      add_facet(v);
    }
    polyq::HPolytope p;
    try {
      p = polyq::load_polytope(doc);
    } catch (const polyq::ValidationError&) {
      continue;  // degenerate draw
    }
    ++accepted;
    INFO("trial " << trial << " n=" << n << " d=" << p.d);
    const auto fp = enumerate_faces(p);
    check_against_oracle(p, fp);
    check_internal_invariants(p, fp);
  }
  CHECK(accepted >= 10);
}

TEST_CASE("octahedron has six singular vertices") {
  const auto p = load_fixture("octahedron");
  const auto fp = enumerate_faces(p);
  CHECK(fp.size() == 27);  // 6 + 12 + 8 + 1
  int singular_vertices = 0;
  for (const auto& f : fp.faces)
    if (f.singular) {
      CHECK(f.p == 0);
      CHECK(f.r == 4);
      ++singular_vertices;
    }
  CHECK(singular_vertices == 6);
}

TEST_CASE("pyramid4 singular faces: two vertices and the edge between them") {
  const auto p = load_fixture("pyramid4");
  const auto fp = enumerate_faces(p);
  const auto sing = fp.singular_faces();
  REQUIRE(sing.size() == 3);
  std::vector<std::vector<int>> active;
  for (const int s : sing) active.push_back(fp.faces[s].I);
  // vertices (0,0,1,0) and (0,0,0,1), then the edge joining them
  CHECK(active[0] == std::vector<int>{0, 2, 3, 4, 5});
  CHECK(active[1] == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(active[2] == std::vector<int>{2, 3, 4, 5});
  CHECK(fp.faces[sing[0]].p == 0);
  CHECK(fp.faces[sing[1]].p == 0);
  CHECK(fp.faces[sing[2]].p == 1);
}
