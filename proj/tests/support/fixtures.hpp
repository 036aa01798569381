#pragma once

#include <string>

#include "polyq/polytope.hpp"

inline std::string fixture_path(const std::string& name) {
  return std::string(POLYQ_FIXTURE_DIR) + "/" + name + ".json";
}

inline polyq::HPolytope load_fixture(const std::string& name) {
  return polyq::load_polytope(polyq::read_json_file(fixture_path(name)));
}
