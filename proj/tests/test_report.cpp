#include <catch2/catch_amalgamated.hpp>

#include "polyq/report.hpp"
#include "polyq/verify.hpp"
#include "support/fixtures.hpp"

using polyq::json;

namespace {

struct Instance {
  polyq::HPolytope p;
  polyq::TorusData t;
  polyq::FacePoset fp;
  polyq::Stratification st;
};

Instance make_instance(const std::string& name) {
  Instance inst;
  inst.p = load_fixture(name);
  inst.t = build_torus_data(inst.p);
  inst.fp = enumerate_faces(inst.p);
  inst.st = build_stratification(inst.p, inst.fp);
  return inst;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("faces report uses 1-based indices and encoded scalars") {
  const auto inst = make_instance("interval");
  const auto rep = polyq::faces_report(inst.fp);
  REQUIRE(rep.size() == 3);
  CHECK(rep[0]["I"] == json::array({1}));
  CHECK(rep[0]["p"] == 0);
  CHECK(rep[0]["r"] == 1);
  CHECK(rep[0]["class"] == "regular");
  CHECK(rep[0]["witness"] == json::array({"0"}));
  CHECK(rep[2]["I"] == json::array());
  CHECK(rep[2]["witness"] == json::array({"1/2"}));
}

TEST_CASE("quadratic witnesses encode as two-part scalars") {
  const auto inst = make_instance("triangle_sqrt2");
  const auto rep = polyq::faces_report(inst.fp);
  bool found_quadratic = false;
  for (const auto& f : rep)
    for (const auto& w : f["witness"])
      if (w.is_array()) found_quadratic = true;
  CHECK(found_quadratic);
}

TEST_CASE("torus report shape") {
  const auto inst = make_instance("pyramid");
  const auto rep = polyq::torus_report(inst.p, inst.t, inst.fp);
  CHECK(rep["dim_n_frak"] == 2);
  CHECK(rep["rationality"] == "lattice");
  REQUIRE(rep["kernel_basis"].size() == 2);
  CHECK(rep["kernel_basis"][0] == json::array({"2", "1", "1", "0", "0"}));
  REQUIRE(rep["stabilizers"].size() == 19);
  int nonzero = 0;
  for (const auto& s : rep["stabilizers"])
    if (s["dim_nF"].get<int>() > 0) {
      CHECK(s["I"] == json::array({2, 3, 4, 5}));
      ++nonzero;
    }
  CHECK(nonzero == 1);
}

TEST_CASE("strata and links reports") {
  const auto inst = make_instance("pyramid4");
  const auto strata = polyq::strata_report(inst.fp, inst.st);
  REQUIRE(strata["pieces"].size() == 4);
  CHECK(strata["pieces"][3]["kind"] == "regular");
  CHECK(strata["pieces"][3]["dim"] == 8);
  CHECK(strata["pieces"][0]["face_I"] == json::array({1, 3, 4, 5, 6}));

  const auto links = polyq::links_report(inst.p, inst.t, inst.fp);
  // minimal singular faces are the two vertices; the edge appears as a child
  REQUIRE(links["links"].size() == 2);
  CHECK(links["links"][0]["dim"] == 7);
  REQUIRE(links["links"][0]["children"].size() == 1);
  CHECK(links["links"][0]["children"][0]["face_I"] == json::array({3, 4, 5, 6}));
  CHECK(links["links"][0]["children"][0]["dim"] == 5);
  CHECK(links["links"][0]["children"][0]["children"].empty());
}

TEST_CASE("analyze report matches module composition") {
  const auto inst = make_instance("pyramid");
  const auto rep = polyq::analyze_report(inst.p, inst.t, inst.fp, inst.st);
  CHECK(rep["face_count"] == 19);
  CHECK(rep["singular_faces"].size() == 1);
  CHECK(rep["singular_faces"][0]["I"] == json::array({2, 3, 4, 5}));
  CHECK(rep["singular_faces"][0]["p"] == 0);
  CHECK(rep["rationality"] == "lattice");
  CHECK(rep["pieces"] == 2);
}

TEST_CASE("DOT exports have the expected node and edge counts") {
  const auto interval = make_instance("interval");
  const auto dot_faces = polyq::export_dot_faces(interval.fp);
  CHECK(count_occurrences(dot_faces, "label=") == 3);
  CHECK(count_occurrences(dot_faces, "->") == 2);

  const auto pyr = make_instance("pyramid");
  const auto dot_pieces = polyq::export_dot_pieces(pyr.fp, pyr.st);
  CHECK(count_occurrences(dot_pieces, "label=") == 2);
  CHECK(count_occurrences(dot_pieces, "->") == 1);
  CHECK_THAT(dot_pieces, Catch::Matchers::ContainsSubstring("I={2,3,4,5} p=0 [S]"));

  const auto cube = make_instance("cube");
  const auto dot_cube = polyq::export_dot_pieces(cube.fp, cube.st);
  CHECK(count_occurrences(dot_cube, "label=") == 1);
  CHECK(count_occurrences(dot_cube, "->") == 0);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = make_instance("pyramid4");
  const auto b = make_instance("pyramid4");
  CHECK(polyq::analyze_report(a.p, a.t, a.fp, a.st).dump(2) ==
        polyq::analyze_report(b.p, b.t, b.fp, b.st).dump(2));
  CHECK(polyq::faces_report(a.fp).dump() == polyq::faces_report(b.fp).dump());
  CHECK(polyq::links_report(a.p, a.t, a.fp).dump() ==
        polyq::links_report(b.p, b.t, b.fp).dump());
  CHECK(polyq::export_dot_faces(a.fp) == polyq::export_dot_faces(b.fp));
}

TEST_CASE("verification battery passes on every fixture") {
  for (const auto* name : {"interval", "square", "cube", "pyramid", "triangle_sqrt2",
                           "pyramid4", "octahedron", "corner", "pyramid_sqrt2"}) {
    INFO(name);
    const auto inst = make_instance(name);
    polyq::VerifyConfig cfg;
    cfg.samples = 120;
    const auto results = run_verification(inst.p, inst.t, inst.fp, cfg);
    for (const auto& r : results) {
      INFO(r.name << ": " << r.details);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("sample records serialize one line each") {
  const auto inst = make_instance("pyramid");
  const auto md = make_moment_data(inst.p, inst.t, inst.fp);
  const polyq::Sampler sampler(md, 42);
  const auto rec = sampler.sample(1);  // face sample
  const auto line = polyq::sample_record_to_json(inst.fp, rec);
  CHECK(line.contains("mu"));
  CHECK(line.contains("theta"));
  CHECK(line.contains("z"));
  CHECK(line.contains("face_I"));
  CHECK(line.contains("psi_norm"));
  CHECK(line.contains("phi_residual"));
  CHECK(line["z"].size() == 5);
  CHECK(line["z"][0].size() == 2);
  CHECK(line.dump().find('\n') == std::string::npos);
}
