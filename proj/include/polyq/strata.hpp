#pragma once

#include <string>
#include <vector>

#include "polyq/moment.hpp"

namespace polyq {

/**
 * One piece of the decomposition of the quotient: either the regular piece
 * (the union of the preimages of all regular faces, an open dense
 * 2n-dimensional quasifold) or the 2p-dimensional piece over one singular
 * p-face.
 */
struct Piece {
  bool regular = false;
  int face_id = -1;          // singular pieces only
  std::vector<int> face_I;   // active set of that face (empty for regular)
  int face_p = 0;            // dimension of that face (n for regular)
  int dim = 0;               // 2p, or 2n for the regular piece
  std::vector<int> contributing_faces;
};

struct Stratification {
  std::vector<Piece> pieces;  // singular pieces in canonical face order, regular piece last

  int size() const { return static_cast<int>(pieces.size()); }

  /// Piece order mirrors face closure order; the regular piece is the
  /// unique maximum.
  bool leq(int a, int b) const {
    if (pieces[b].regular) return true;
    if (pieces[a].regular) return false;
    return std::includes(pieces[a].face_I.begin(), pieces[a].face_I.end(),
                         pieces[b].face_I.begin(), pieces[b].face_I.end());
  }

  std::vector<std::pair<int, int>> covers() const {
    std::vector<std::pair<int, int>> result;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        if (a == b || !leq(a, b) || leq(b, a)) continue;
        bool direct = true;
        for (int c = 0; c < size() && direct; ++c) {
          if (c == a || c == b) continue;
          if (leq(a, c) && !leq(c, a) && leq(c, b) && !leq(b, c)) direct = false;
        }
        if (direct) result.emplace_back(a, b);
      }
    return result;
  }
};

inline int stratum_dimension(const Piece& piece) { return piece.dim; }

inline Stratification build_stratification(const HPolytope& poly, const FacePoset& fp) {
  Stratification st;
  for (int i = 0; i < fp.size(); ++i) {
    if (!fp.faces[i].singular) continue;
    Piece piece;
    piece.face_id = i;
    piece.face_I = fp.faces[i].I;
    piece.face_p = fp.faces[i].p;
    piece.dim = 2 * fp.faces[i].p;
    piece.contributing_faces = {i};
    st.pieces.push_back(std::move(piece));
  }
  Piece top;
  top.regular = true;
  top.face_p = poly.n;
  top.dim = 2 * poly.n;
  for (int i = 0; i < fp.size(); ++i)
    if (!fp.faces[i].singular) top.contributing_faces.push_back(i);
  st.pieces.push_back(std::move(top));
  return st;
}

/**
 * Combinatorial description of the link of a singular face F: the moment
 * map psi_F = sum_{j in I_F} |z_j|^2 iota_F*(e_j) on the coordinate
 * subspace of I_F, the link dimension 2n-2p-1, and recursive descriptors
 * for the singular faces above F. The cone/quotient topology itself is
 * never materialized.
 */
struct LinkDescriptor {
  int face_id = -1;
  std::vector<int> face_I;
  int dim = 0;     // 2n - 2p - 1
  int nF_dim = 0;  // dim n^F
  std::vector<Vector> nF_basis;
  // iota_F*(e_j) for each j in I_F, in n^F-basis coordinates
  std::vector<Vector> psi_coefficients;
  std::vector<LinkDescriptor> children;

  int depth() const {
    int worst = 0;
    for (const auto& c : children) worst = std::max(worst, c.depth());
    return 1 + worst;
  }
};

inline LinkDescriptor build_link(const HPolytope& poly, const TorusData& torus,
                                 const FacePoset& fp, int face_id) {
  const Face& f = fp.faces[face_id];
  if (!f.singular)
    throw ValidationError("regular_face", "links are built at singular faces only");
  const StabilizerData sd = stabilizer_data(torus, f);

  LinkDescriptor ld;
  ld.face_id = face_id;
  ld.face_I = f.I;
  ld.dim = 2 * poly.n - 2 * f.p - 1;
  ld.nF_dim = sd.dim_n;
  ld.nF_basis = sd.n_basis;
  for (const int j : f.I) {
    Vector c(sd.dim_n);
    for (int k = 0; k < sd.dim_n; ++k) c[k] = sd.n_basis[k][j];
    ld.psi_coefficients.push_back(std::move(c));
  }
  // children: singular faces strictly above F (their closures contain F)
  for (const int g : fp.singular_faces()) {
    if (g == face_id) continue;
    const Face& other = fp.faces[g];
    if (other.I.size() < f.I.size() &&
        std::includes(f.I.begin(), f.I.end(), other.I.begin(), other.I.end()))
      ld.children.push_back(build_link(poly, torus, fp, g));
  }
  return ld;
}

/// A sampled point of psi_F^{-1}(0) intersected with the radius-eps sphere
/// in the coordinate subspace of I_F.
struct LinkPoint {
  std::vector<int> support;  // = I_F
  Eigen::VectorXd wx, wy;    // coordinates indexed along support
  double psi_residual = 0.0;
  double sphere_residual = 0.0;
};

/**
 * Sample the link level set: squared moduli are exact facet slacks of a
 * random interior point restricted to I_F (these lie in the kernel of the
 * psi_F coefficient matrix identically), scaled onto the eps-sphere, with
 * independent random phases. The zero set being a cone, the scaling is
 * harmless.
 */
inline std::vector<LinkPoint> sample_link_points(const HPolytope& poly,
                                                 const TorusData& torus,
                                                 const FacePoset& fp, int face_id,
                                                 double eps, int count,
                                                 std::uint64_t seed) {
  const Face& f = fp.faces[face_id];
  if (!f.singular)
    throw ValidationError("regular_face", "links are built at singular faces only");
  if (!(eps > 0)) throw ValidationError("bad_input", "epsilon must be positive");
  const StabilizerData sd = stabilizer_data(torus, f);
  const int r = f.r;
  Eigen::MatrixXd coeff(sd.dim_n, r);  // psi_F coefficients, float
  for (int k = 0; k < sd.dim_n; ++k)
    for (int c = 0; c < r; ++c) coeff(k, c) = sd.n_basis[k][f.I[c]].to_float();

  std::vector<LinkPoint> out;
  out.reserve(count);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < count; ++i) {
    SplitRng rng(seed, (static_cast<std::uint64_t>(face_id + 1) << 32) ^
                           static_cast<std::uint64_t>(i));
    // exact interior point: positive rational combination of all vertices
    Vector mu;
    Scalar total = field_scalar(poly.field, 0);
    for (const auto& v : fp.vertices) {
      const Scalar w = field_scalar(poly.field, static_cast<long long>(rng.uniform_int(100)));
      const Vector term = w * v.mu;
      mu = mu.size() == 0 ? term : mu + term;
      total += w;
    }
    mu = (field_scalar(poly.field, 1) / total) * mu;

    Eigen::VectorXd t(r);
    for (int c = 0; c < r; ++c) t[c] = poly.slack(mu, f.I[c]).to_float();
    const double scale = eps * eps / t.sum();
    t *= scale;

    LinkPoint pt;
    pt.support = f.I;
    pt.wx.resize(r);
    pt.wy.resize(r);
    for (int c = 0; c < r; ++c) {
      const double rad = std::sqrt(t[c]);
      const double theta = two_pi * rng.uniform();
      pt.wx[c] = rad * std::cos(theta);
      pt.wy[c] = rad * std::sin(theta);
    }
    Eigen::VectorXd sq(r);
    for (int c = 0; c < r; ++c) sq[c] = pt.wx[c] * pt.wx[c] + pt.wy[c] * pt.wy[c];
    const Eigen::VectorXd psi = coeff * sq;
    pt.psi_residual = psi.size() == 0 ? 0.0 : psi.cwiseAbs().maxCoeff();
    pt.sphere_residual = std::abs(sq.sum() - eps * eps);
    out.push_back(std::move(pt));
  }
  return out;
}

/// psi_F applied to an arbitrary point of the coordinate subspace (used by
/// the cone-homogeneity checks).
inline Eigen::VectorXd link_psi_value(const TorusData& torus, const Face& f,
                                      const Eigen::VectorXd& wx, const Eigen::VectorXd& wy) {
  const StabilizerData sd = stabilizer_data(torus, f);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(sd.dim_n);
  for (int k = 0; k < sd.dim_n; ++k)
    for (int c = 0; c < f.r; ++c)
      psi[k] += sd.n_basis[k][f.I[c]].to_float() * (wx[c] * wx[c] + wy[c] * wy[c]);
  return psi;
}

}  // namespace polyq
