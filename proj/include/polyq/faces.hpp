#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polyq/polytope.hpp"

namespace polyq {

/**
 * A nonempty open face of the polytope, keyed by its exact active set I_F.
 * p is the face dimension, r = |I_F|; the face is singular (nonsimple) when
 * r > n - p. The witness is an exact relative-interior point.
 */
struct Face {
  std::vector<int> I;   // sorted, 0-based facet indices
  int p = 0;
  int r = 0;
  bool singular = false;
  Vector witness;
  std::vector<int> vertex_ids;  // incident vertices (indices into poset vertex list)

  bool is_interior() const { return I.empty(); }
};

enum class FaceClass { regular, singular };

inline FaceClass classify_face(const Face& f) {
  return f.singular ? FaceClass::singular : FaceClass::regular;
}

/**
 * All faces of the polytope ordered by (p, lexicographic I). The partial
 * order is reverse containment of active sets: F <= F' iff I_{F'} is a
 * subset of I_F, with the open interior Int as unique maximum.
 */
struct FacePoset {
  std::vector<Face> faces;
  std::vector<PolytopeVertex> vertices;  // shared vertex list

  int size() const { return static_cast<int>(faces.size()); }

  int find(const std::vector<int>& I) const {
    for (int i = 0; i < size(); ++i)
      if (faces[i].I == I) return i;
    return -1;
  }

  int interior_index() const { return find({}); }

  /// F_a <= F_b (closure of F_b contains F_a).
  bool leq(int a, int b) const {
    return std::includes(faces[a].I.begin(), faces[a].I.end(),
                         faces[b].I.begin(), faces[b].I.end());
  }

  /// Covering pairs (a, b) with F_a < F_b and nothing strictly between.
  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> result;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        if (a == b || faces[a].p >= faces[b].p || !leq(a, b)) continue;
        bool direct = true;
        for (int c = 0; c < size() && direct; ++c) {
          if (c == a || c == b) continue;
          if (faces[a].p < faces[c].p && faces[c].p < faces[b].p && leq(a, c) && leq(c, b))
            direct = false;
        }
        if (direct) result.emplace_back(a, b);
      }
    return result;
  }

  std::vector<int> faces_of_dimension(int p) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (faces[i].p == p) out.push_back(i);
    return out;
  }

  std::vector<int> singular_faces() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (faces[i].singular) out.push_back(i);
    return out;
  }
};

/**
 * Enumerate every nonempty face by its exact active set.
 *
 * Every face of a bounded polytope is the join of its vertices, so the
 * family of active sets is exactly the closure of the vertex active sets
 * under intersection (the empty intersection yields Int). Witnesses are
 * exact barycenters of the incident vertices, which lie in the relative
 * interior; the active set of each witness is re-checked exactly.
 */
inline FacePoset enumerate_faces(const HPolytope& poly) {
  FacePoset fp;
  fp.vertices = poly.vertices;

  std::set<std::vector<int>> family;
  for (const auto& v : poly.vertices) family.insert(v.active);
  // close under pairwise intersection; includes the empty set for Int
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<int>> current(family.begin(), family.end());
    for (std::size_t a = 0; a < current.size(); ++a)
      for (std::size_t b = a + 1; b < current.size(); ++b) {
        std::vector<int> meet;
        std::set_intersection(current[a].begin(), current[a].end(),
                              current[b].begin(), current[b].end(),
                              std::back_inserter(meet));
        if (family.insert(meet).second) grew = true;
      }
  }

  for (const auto& I : family) {
    Face f;
    f.I = I;
    f.r = static_cast<int>(I.size());
    for (std::size_t v = 0; v < fp.vertices.size(); ++v)
      if (std::includes(fp.vertices[v].active.begin(), fp.vertices[v].active.end(),
                        I.begin(), I.end()))
        f.vertex_ids.push_back(static_cast<int>(v));

    std::vector<Vector> rows;
    for (const int j : I) rows.push_back(poly.normals[j]);
    const std::size_t rk = I.empty() ? 0 : rank(Matrix::from_rows(rows));
    f.p = poly.n - static_cast<int>(rk);
    f.singular = f.r > poly.n - f.p;

    Vector w = fp.vertices[f.vertex_ids[0]].mu;
    for (std::size_t v = 1; v < f.vertex_ids.size(); ++v)
      w = w + fp.vertices[f.vertex_ids[v]].mu;
    const Scalar inv = field_scalar(poly.field, 1) /
                       field_scalar(poly.field, static_cast<long long>(f.vertex_ids.size()));
    f.witness = inv * w;
    if (poly.field.exact() && poly.active_set(f.witness) != f.I)
      throw std::logic_error("face witness has unexpected active set");

    fp.faces.push_back(std::move(f));
  }

  std::sort(fp.faces.begin(), fp.faces.end(), [](const Face& x, const Face& y) {
    if (x.p != y.p) return x.p < y.p;
    return x.I < y.I;
  });
  return fp;
}

/// Euler relation of the boundary complex: sum over p < n of (-1)^p N_p.
inline long euler_boundary_sum(const FacePoset& fp, int n) {
  long sum = 0;
  for (const auto& f : fp.faces)
    if (f.p < n) sum += (f.p % 2 == 0) ? 1 : -1;
  return sum;
}

}  // namespace polyq
