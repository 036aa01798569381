#pragma once

#include <sstream>
#include <string>

#include "polyq/sampling.hpp"
#include "polyq/strata.hpp"

namespace polyq {

// All reports index facets 1-based, matching the input order of Eq-style
// H-representations; internal indices are 0-based.

inline json index_set_to_json(const std::vector<int>& I) {
  json a = json::array();
  for (const int j : I) a.push_back(j + 1);
  return a;
}

inline std::string index_set_label(const std::vector<int>& I) {
  std::string s = "{";
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(I[i] + 1);
  }
  return s + "}";
}

inline json face_to_json(const Face& f) {
  json o;
  o["I"] = index_set_to_json(f.I);
  o["p"] = f.p;
  o["r"] = f.r;
  o["class"] = f.singular ? "singular" : "regular";
  o["witness"] = vector_to_json(f.witness);
  return o;
}

inline json faces_report(const FacePoset& fp) {
  json a = json::array();
  for (const auto& f : fp.faces) a.push_back(face_to_json(f));
  return a;
}

inline json torus_report(const HPolytope& p, const TorusData& t, const FacePoset& fp) {
  json o;
  o["dim_n_frak"] = p.d - p.n;
  json kb = json::array();
  for (const auto& v : t.kernel_basis) kb.push_back(vector_to_json(v));
  o["kernel_basis"] = kb;
  if (p.field.exact())
    o["rationality"] = to_string(rationality_verdict(t));
  else
    o["rationality"] = nullptr;  // verdict requires an exact field
  json stabs = json::array();
  for (const auto& f : fp.faces) {
    json s;
    s["I"] = index_set_to_json(f.I);
    s["dim_nF"] = stabilizer_data(t, f).dim_n;
    stabs.push_back(s);
  }
  o["stabilizers"] = stabs;
  return o;
}

inline json strata_report(const FacePoset& fp, const Stratification& st) {
  json pieces = json::array();
  for (const auto& piece : st.pieces) {
    json o;
    o["kind"] = piece.regular ? "regular" : "singular";
    o["dim"] = piece.dim;
    if (piece.regular)
      o["face_I"] = nullptr;
    else
      o["face_I"] = index_set_to_json(fp.faces[piece.face_id].I);
    pieces.push_back(o);
  }
  json o;
  o["pieces"] = pieces;
  return o;
}

inline json link_to_json(const LinkDescriptor& ld) {
  json o;
  o["face_I"] = index_set_to_json(ld.face_I);
  o["dim"] = ld.dim;
  o["dim_nF"] = ld.nF_dim;
  json coeffs = json::array();
  for (const auto& c : ld.psi_coefficients) coeffs.push_back(vector_to_json(c));
  o["psi_coefficients"] = coeffs;
  json children = json::array();
  for (const auto& c : ld.children) children.push_back(link_to_json(c));
  o["children"] = children;
  return o;
}

inline json links_report(const HPolytope& p, const TorusData& t, const FacePoset& fp) {
  // roots: singular faces with no singular face below them; every other
  // singular face appears as a child inside some root's tree
  json roots = json::array();
  const auto sing = fp.singular_faces();
  for (const int f : sing) {
    bool minimal = true;
    for (const int g : sing)
      if (g != f && fp.leq(g, f)) minimal = false;
    if (minimal) roots.push_back(link_to_json(build_link(p, t, fp, f)));
  }
  json o;
  o["links"] = roots;
  return o;
}

inline json analyze_report(const HPolytope& p, const TorusData& t, const FacePoset& fp,
                           const Stratification& st) {
  json o;
  o["dimension"] = p.n;
  o["facet_count"] = p.d;
  switch (p.field.kind) {
    case FieldKind::rational:
      o["field"] = "rational";
      break;
    case FieldKind::quadratic:
      o["field"] = "quadratic(sqrt " + std::to_string(p.field.d) + ")";
      break;
    case FieldKind::floating:
      o["field"] = "float";
      break;
  }
  o["vertex_count"] = static_cast<int>(fp.vertices.size());
  o["face_count"] = fp.size();
  json by_dim = json::object();
  for (int p_dim = 0; p_dim <= p.n; ++p_dim) {
    const auto ids = fp.faces_of_dimension(p_dim);
    if (!ids.empty()) by_dim[std::to_string(p_dim)] = static_cast<int>(ids.size());
  }
  o["faces_by_dim"] = by_dim;
  json sing = json::array();
  for (const int f : fp.singular_faces()) {
    json s;
    s["I"] = index_set_to_json(fp.faces[f].I);
    s["p"] = fp.faces[f].p;
    s["r"] = fp.faces[f].r;
    sing.push_back(s);
  }
  o["singular_faces"] = sing;
  if (p.field.exact())
    o["rationality"] = to_string(rationality_verdict(t));
  else
    o["rationality"] = nullptr;
  o["dim_n_frak"] = p.d - p.n;
  o["pieces"] = st.size();
  o["torus"] = torus_report(p, t, fp);
  return o;
}

inline json sample_record_to_json(const FacePoset& fp, const SampleRecord& rec) {
  json o;
  json mu = json::array();
  for (int i = 0; i < rec.mu.size(); ++i) mu.push_back(rec.mu[i]);
  o["mu"] = mu;
  json theta = json::array();
  for (const double t : rec.theta) theta.push_back(t);
  o["theta"] = theta;
  json z = json::array();
  for (int j = 0; j < rec.z.dim(); ++j) z.push_back(json::array({rec.z.x[j], rec.z.y[j]}));
  o["z"] = z;
  o["face_I"] = index_set_to_json(fp.faces[rec.face_id].I);
  o["psi_norm"] = rec.psi_norm;
  o["phi_residual"] = rec.phi_residual;
  return o;
}

/// DOT rendering of the face poset: one node per face in canonical order,
/// one edge per covering relation.
inline std::string export_dot_faces(const FacePoset& fp) {
  std::ostringstream os;
  os << "digraph faces {\n  rankdir=BT;\n";
  for (int i = 0; i < fp.size(); ++i) {
    const auto& f = fp.faces[i];
    os << "  f" << i << " [label=\"I=" << index_set_label(f.I) << " p=" << f.p << " ["
       << (f.singular ? "S" : "R") << "]\"];\n";
  }
  for (const auto& [a, b] : fp.covers()) os << "  f" << a << " -> f" << b << ";\n";
  os << "}\n";
  return os.str();
}

/// DOT rendering of the piece poset.
inline std::string export_dot_pieces(const FacePoset& fp, const Stratification& st) {
  std::ostringstream os;
  os << "digraph pieces {\n  rankdir=BT;\n";
  for (int i = 0; i < st.size(); ++i) {
    const auto& piece = st.pieces[i];
    if (piece.regular) {
      os << "  t" << i << " [label=\"T_Delta dim=" << piece.dim << " [R]\"];\n";
    } else {
      const auto& f = fp.faces[piece.face_id];
      os << "  t" << i << " [label=\"I=" << index_set_label(f.I) << " p=" << f.p
         << " [S]\"];\n";
    }
  }
  for (const auto& [a, b] : st.covers()) os << "  t" << a << " -> t" << b << ";\n";
  os << "}\n";
  return os.str();
}

// Plain-text renderings for --format text.

inline std::string faces_text(const FacePoset& fp) {
  std::ostringstream os;
  for (const auto& f : fp.faces) {
    os << "I=" << index_set_label(f.I) << " p=" << f.p << " r=" << f.r << " "
       << (f.singular ? "singular" : "regular") << " witness=(";
    for (std::size_t i = 0; i < f.witness.size(); ++i) {
      if (i) os << ", ";
      os << f.witness[i].str();
    }
    os << ")\n";
  }
  return os.str();
}

inline std::string analyze_text(const json& report) {
  std::ostringstream os;
  for (const auto& [key, value] : report.items())
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  return os.str();
}

inline std::string strata_text(const FacePoset& fp, const Stratification& st) {
  std::ostringstream os;
  for (const auto& piece : st.pieces) {
    if (piece.regular)
      os << "T_Delta dim=" << piece.dim << " (regular, " << piece.contributing_faces.size()
         << " contributing faces)\n";
    else
      os << "T_F dim=" << piece.dim << " F: I=" << index_set_label(fp.faces[piece.face_id].I)
         << " p=" << fp.faces[piece.face_id].p << "\n";
  }
  return os.str();
}

inline void links_text_walk(std::ostringstream& os, const LinkDescriptor& ld, int indent) {
  os << std::string(2 * indent, ' ') << "link at I=" << index_set_label(ld.face_I)
     << " dim=" << ld.dim << " dim_nF=" << ld.nF_dim << "\n";
  for (const auto& c : ld.children) links_text_walk(os, c, indent + 1);
}

inline std::string links_text(const HPolytope& p, const TorusData& t, const FacePoset& fp) {
  const auto sing = fp.singular_faces();
  if (sing.empty()) return "no singular faces\n";
  std::ostringstream os;
  for (const int f : sing) {
    bool minimal = true;
    for (const int g : sing)
      if (g != f && fp.leq(g, f)) minimal = false;
    if (minimal) links_text_walk(os, build_link(p, t, fp, f), 0);
  }
  return os.str();
}

}  // namespace polyq
