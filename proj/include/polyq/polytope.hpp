#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "polyq/io.hpp"
#include "polyq/linalg.hpp"

namespace polyq {

/// A vertex of the polytope: exact coordinates plus the exact set of facet
/// indices active there (0-based).
struct PolytopeVertex {
  Vector mu;
  std::vector<int> active;
};

/**
 * Convex polytope in H-representation: the set of mu with
 * <mu, X_j> >= lambda_j for all facets j. Loading certifies that the data
 * describes a bounded, full-dimensional polytope with no redundant row.
 */
struct HPolytope {
  int n = 0;  // ambient dimension
  int d = 0;  // facet count
  FieldDesc field;
  std::vector<Vector> normals;   // X_j, each of dimension n
  std::vector<Scalar> offsets;   // lambda_j
  std::vector<Vector> extra_generators;

  // certified at load
  std::vector<PolytopeVertex> vertices;
  Vector interior_point;  // exact strict-interior point (vertex barycenter)

  /// Exact slack <mu, X_j> - lambda_j.
  Scalar slack(const Vector& mu, int j) const { return dot(mu, normals[j]) - offsets[j]; }

  /// Exact active set of a feasible point (throws if infeasible).
  std::vector<int> active_set(const Vector& mu) const {
    std::vector<int> act;
    for (int j = 0; j < d; ++j) {
      const int s = slack(mu, j).sign();
      if (s < 0)
        throw ValidationError("infeasible_point",
                              "point violates facet " + std::to_string(j + 1));
      if (s == 0) act.push_back(j);
    }
    return act;
  }
};

namespace detail {

/// True when facets j and k are the same halfspace up to positive scaling.
inline bool duplicate_facet(const HPolytope& p, int j, int k) {
  // find the scale from the first nonzero coordinate of X_j
  Scalar t;
  bool have_t = false;
  for (int i = 0; i < p.n; ++i) {
    const bool zj = p.normals[j][i].is_zero(), zk = p.normals[k][i].is_zero();
    if (zj != zk) return false;
    if (zj) continue;
    const Scalar ratio = p.normals[k][i] / p.normals[j][i];
    if (!have_t) {
      if (ratio.sign() <= 0) return false;
      t = ratio;
      have_t = true;
    } else if (ratio != t) {
      return false;
    }
  }
  if (!have_t) return false;  // zero normals rejected elsewhere
  return p.offsets[k] == t * p.offsets[j];
}

/// Scan for a recession direction u != 0 with <u, X_j> >= 0 for all j. For a
/// pointed cone every extreme ray is cut out by n-1 independent active
/// constraints, so scanning those subsets is a complete unboundedness test.
inline bool has_recession_ray(const HPolytope& p) {
  bool found = false;
  for_each_combination(p.d, p.n - 1, [&](const std::vector<int>& subset) {
    if (found) return;
    std::vector<Vector> rows;
    for (const int j : subset) rows.push_back(p.normals[j]);
    const Matrix m = rows.empty() ? Matrix(0, p.n) : Matrix::from_rows(rows);
    const auto kernel = kernel_basis(m, p.field);
    if (kernel.size() != 1) return;  // not rank n-1
    const Vector& u = kernel[0];
    bool all_nonneg = true, all_nonpos = true;
    for (int j = 0; j < p.d; ++j) {
      const int s = dot(u, p.normals[j]).sign();
      if (s < 0) all_nonneg = false;
      if (s > 0) all_nonpos = false;
    }
    if (all_nonneg || all_nonpos) found = true;
  });
  return found;
}

}  // namespace detail

/**
 * Validate facet data and certify the polytope invariants: full rank of the
 * normal family, boundedness, nonempty interior, and no redundant facet row.
 * Vertices are enumerated exactly as a side effect (they seed the face
 * lattice later).
 */
inline HPolytope load_polytope(const PolytopeInput& in) {
  HPolytope p;
  p.n = in.n;
  p.d = static_cast<int>(in.normals.size());
  p.field = in.field;
  p.normals = in.normals;
  p.offsets = in.offsets;
  p.extra_generators = in.extra_generators;

  for (int j = 0; j < p.d; ++j)
    if (p.normals[j].is_zero())
      throw ValidationError("bad_input", "facet " + std::to_string(j + 1) + " has zero normal");
  if (p.d < p.n + 1)
    throw ValidationError("unbounded",
                          "a bounded polytope of dimension n needs at least n+1 facets");

  // normals must span, else a kernel direction is a recession direction
  const Matrix pi = Matrix::from_cols(p.normals);
  if (rank(pi) < static_cast<std::size_t>(p.n))
    throw ValidationError("unbounded", "facet normals do not span the ambient space");
  if (detail::has_recession_ray(p))
    throw ValidationError("unbounded", "facet normals do not positively span (recession ray)");

  // duplicated halfspace rows inflate active sets on a whole facet and break
  // the singular-dimension bound; reject them
  for (int j = 0; j < p.d; ++j)
    for (int k = j + 1; k < p.d; ++k)
      if (detail::duplicate_facet(p, j, k))
        throw ValidationError("redundant_facet",
                              "facet " + std::to_string(k + 1) + " duplicates facet " +
                                  std::to_string(j + 1));

  // vertex enumeration over rank-n equality subsystems
  std::set<std::vector<int>> seen_active;
  detail::for_each_combination(p.d, p.n, [&](const std::vector<int>& subset) {
    std::vector<Vector> rows;
    Vector rhs(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
      rows.push_back(p.normals[subset[i]]);
      rhs[i] = p.offsets[subset[i]];
    }
    const Matrix m = Matrix::from_rows(rows);
    if (rank(m) != static_cast<std::size_t>(p.n)) return;
    const auto mu = solve_linear(m, rhs, p.field);
    if (!mu) return;
    std::vector<int> act;
    for (int j = 0; j < p.d; ++j) {
      const int s = p.slack(*mu, j).sign();
      if (s < 0) return;  // infeasible
      if (s == 0) act.push_back(j);
    }
    if (seen_active.insert(act).second) p.vertices.push_back({*mu, act});
  });

  if (p.vertices.empty())
    throw ValidationError("empty_interior", "polytope is empty");

  // strict interior certificate: the vertex barycenter
  Vector bary = p.vertices[0].mu;
  for (std::size_t v = 1; v < p.vertices.size(); ++v) bary = bary + p.vertices[v].mu;
  const Scalar inv_count =
      field_scalar(p.field, 1) / field_scalar(p.field, static_cast<long long>(p.vertices.size()));
  bary = inv_count * bary;
  for (int j = 0; j < p.d; ++j)
    if (p.slack(bary, j).sign() <= 0)
      throw ValidationError("empty_interior",
                            "polytope is not full-dimensional (facet " + std::to_string(j + 1) +
                                " is tight everywhere)");
  p.interior_point = bary;

  // redundancy as stated input: every facet must be active somewhere
  for (int j = 0; j < p.d; ++j) {
    bool touched = false;
    for (const auto& v : p.vertices)
      if (std::binary_search(v.active.begin(), v.active.end(), j)) touched = true;
    if (!touched)
      throw ValidationError("redundant_facet",
                            "facet " + std::to_string(j + 1) + " is active on no face");
  }

  for (const auto& g : p.extra_generators)
    if (static_cast<int>(g.size()) != p.n)
      throw ValidationError("bad_input", "extra generator has wrong dimension");

  return p;
}

inline HPolytope load_polytope(const json& doc) { return load_polytope(parse_polytope_document(doc)); }

}  // namespace polyq
