#pragma once

#include <string>
#include <vector>

#include "polyq/faces.hpp"

namespace polyq {

/**
 * The linear-algebra shadow of the torus setup: the projection
 * pi: R^d -> R^n sending e_j to X_j, its kernel algebra (the Lie algebra of
 * the subgroup cut out by the quasilattice), and the dual maps of the exact
 * sequence 0 -> (R^n)* -> (R^d)* -> kernel* -> 0.
 */
struct TorusData {
  Matrix pi;        // n x d, columns X_j
  Matrix pi_star;   // d x n, rows X_j^T (the dual inclusion)
  std::vector<Vector> kernel_basis;  // basis of ker pi, d-n vectors in R^d
  Matrix iota_star;  // (d-n) x d, rows are the kernel basis: coordinates on kernel*
  std::vector<Vector> quasilattice_generators;  // X_j plus any extras
};

enum class Rationality { lattice, nonrational };

inline const char* to_string(Rationality r) {
  return r == Rationality::lattice ? "lattice" : "nonrational";
}

inline TorusData build_torus_data(const HPolytope& p) {
  TorusData t;
  t.pi = Matrix::from_cols(p.normals);
  if (rank(t.pi) != static_cast<std::size_t>(p.n))
    throw ValidationError("bad_input", "facet normals must span the ambient space");
  t.pi_star = t.pi.transpose();
  t.kernel_basis = kernel_basis(t.pi, p.field);
  t.iota_star = Matrix::from_rows(t.kernel_basis);
  if (t.kernel_basis.empty()) t.iota_star = Matrix(0, p.d);
  t.quasilattice_generators = p.normals;
  for (const auto& g : p.extra_generators) t.quasilattice_generators.push_back(g);
  return t;
}

/**
 * Decide whether the quasilattice generated by the X_j (and extras) is a
 * true lattice. The generators span R^n, so their Z-span is discrete exactly
 * when their Q-span has dimension n; any larger rational rank certifies a
 * nonclosed subgroup N.
 */
inline Rationality rationality_verdict(const TorusData& t) {
  for (const auto& g : t.quasilattice_generators)
    if (!g.is_exact())
      throw ValidationError("exact_field_required", "verdict requires exact field");
  const std::size_t n = t.pi.rows();
  const std::size_t rk = rational_relation_rank(t.quasilattice_generators);
  return rk == n ? Rationality::lattice : Rationality::nonrational;
}

/**
 * Per-face stabilizer data: the coordinate subalgebra s^F spanned by
 * {e_j : j in I_F} and the intersection n^F = ker(pi) ∩ s^F, which controls
 * the rank drop of the level set over F. dim n^F = r_F - n + p exactly.
 */
struct StabilizerData {
  std::vector<int> face_I;
  std::vector<Vector> s_basis;  // e_j for j in I_F
  std::vector<Vector> n_basis;  // basis of n^F, vectors in R^d
  int dim_s = 0;
  int dim_n = 0;
};

inline StabilizerData stabilizer_data(const TorusData& t, const Face& f) {
  const std::size_t d = t.pi.cols();
  StabilizerData sd;
  sd.face_I = f.I;
  sd.dim_s = f.r;
  for (const int j : f.I) sd.s_basis.push_back(Vector::unit(d, j));

  // kernel elements supported inside I_F, found in kernel-basis coordinates
  const std::size_t dn = t.kernel_basis.size();
  std::vector<int> complement;
  for (int j = 0; j < static_cast<int>(d); ++j)
    if (!std::binary_search(f.I.begin(), f.I.end(), j)) complement.push_back(j);
  Matrix m(complement.size(), dn);
  for (std::size_t row = 0; row < complement.size(); ++row)
    for (std::size_t k = 0; k < dn; ++k) m(row, k) = t.kernel_basis[k][complement[row]];
  for (const auto& c : kernel_basis(m)) {
    Vector v = c[0] * t.kernel_basis[0];
    for (std::size_t k = 1; k < dn; ++k) v = v + c[k] * t.kernel_basis[k];
    sd.n_basis.push_back(std::move(v));
  }
  sd.dim_n = static_cast<int>(sd.n_basis.size());
  return sd;
}

}  // namespace polyq
