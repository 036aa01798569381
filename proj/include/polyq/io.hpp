#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyq/linalg.hpp"
#include "polyq/scalar.hpp"

namespace polyq {

using json = nlohmann::ordered_json;

/// Raw facet data as parsed from an input document, before validation.
struct PolytopeInput {
  int n = 0;
  FieldDesc field;
  std::vector<Vector> normals;
  std::vector<Scalar> offsets;
  std::vector<Vector> extra_generators;
};

inline FieldDesc parse_field(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ValidationError("bad_input", "field descriptor must be an object with a 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  FieldDesc f;
  if (kind == "rational") {
    f.kind = FieldKind::rational;
  } else if (kind == "quadratic") {
    f.kind = FieldKind::quadratic;
    if (!j.contains("D") || !j.at("D").is_number_integer())
      throw ValidationError("bad_input", "quadratic field requires an integer 'D'");
    f.d = j.at("D").get<long long>();
    validate_quadratic_d(f.d);
  } else if (kind == "float") {
    f.kind = FieldKind::floating;
    f.tol = j.value("tol", 1e-9);
    if (!(f.tol > 0))
      throw ValidationError("bad_input", "float field requires tol > 0");
  } else {
    throw ValidationError("bad_input", "unknown field kind '" + kind + "'");
  }
  return f;
}

/**
 * Parse one scalar. Rational: "p/q" string (or integer). Quadratic:
 * ["p/q","r/s"] meaning p/q + (r/s)sqrt(D), with plain "p/q" accepted for
 * purely rational values. Float fields take JSON numbers.
 */
inline Scalar parse_scalar(const json& j, const FieldDesc& field) {
  const auto parse_exact_part = [](const json& v) -> Rational {
    if (v.is_string()) return detail::parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ValidationError("malformed_scalar", "exact scalar must be a 'p/q' string: " + v.dump());
  };
  switch (field.kind) {
    case FieldKind::floating:
      if (!j.is_number())
        throw ValidationError("malformed_scalar", "float scalar must be a number: " + j.dump());
      return Scalar::floating(j.get<double>(), field.tol);
    case FieldKind::rational:
      if (j.is_array())
        throw ValidationError("malformed_scalar",
                              "two-part scalar in a rational-field document: " + j.dump());
      return Scalar(parse_exact_part(j));
    case FieldKind::quadratic:
      if (j.is_array()) {
        if (j.size() != 2)
          throw ValidationError("malformed_scalar", "quadratic scalar must have 2 parts: " + j.dump());
        return Scalar::quadratic(parse_exact_part(j[0]), parse_exact_part(j[1]), field.d);
      }
      return Scalar::quadratic(parse_exact_part(j), 0, field.d);
  }
  throw ValidationError("malformed_scalar", "unreachable");
}

inline json scalar_to_json(const Scalar& s) {
  switch (s.kind()) {
    case FieldKind::floating:
      return s.float_value();
    case FieldKind::rational:
      return s.rat_part().str();
    case FieldKind::quadratic:
      if (s.irr_part() == 0) return s.rat_part().str();
      return json::array({s.rat_part().str(), s.irr_part().str()});
  }
  return nullptr;
}

inline json vector_to_json(const Vector& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

inline Vector parse_vector(const json& j, const FieldDesc& field, int expect_dim) {
  if (!j.is_array() || (expect_dim >= 0 && static_cast<int>(j.size()) != expect_dim))
    throw ValidationError("bad_input", "vector has wrong shape: " + j.dump());
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = parse_scalar(j[i], field);
  return v;
}

inline PolytopeInput parse_polytope_document(const json& doc) {
  if (!doc.is_object())
    throw ValidationError("bad_input", "input document must be a JSON object");
  PolytopeInput in;
  if (!doc.contains("dimension") || !doc.at("dimension").is_number_integer())
    throw ValidationError("bad_input", "missing integer 'dimension'");
  in.n = doc.at("dimension").get<int>();
  if (in.n < 1) throw ValidationError("bad_input", "dimension must be >= 1");
  in.field = doc.contains("field") ? parse_field(doc.at("field")) : FieldDesc{};
  if (!doc.contains("facets") || !doc.at("facets").is_array() || doc.at("facets").empty())
    throw ValidationError("bad_input", "missing nonempty 'facets' array");
  for (const auto& fj : doc.at("facets")) {
    if (!fj.is_object() || !fj.contains("normal") || !fj.contains("offset"))
      throw ValidationError("bad_input", "facet entries need 'normal' and 'offset'");
    in.normals.push_back(parse_vector(fj.at("normal"), in.field, in.n));
    in.offsets.push_back(parse_scalar(fj.at("offset"), in.field));
  }
  if (doc.contains("extra_generators")) {
    if (!doc.at("extra_generators").is_array())
      throw ValidationError("bad_input", "'extra_generators' must be an array of vectors");
    for (const auto& gj : doc.at("extra_generators"))
      in.extra_generators.push_back(parse_vector(gj, in.field, in.n));
  }
  return in;
}

inline json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("io_error", "cannot read input '" + path + "'");
  try {
    return json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad_input", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace polyq
