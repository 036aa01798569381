#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "polyq/rng.hpp"
#include "polyq/torus.hpp"

namespace polyq {

struct Tolerances {
  double zero_tol = 1e-9;   // zero-pattern detection on |z_j|
  double level_tol = 1e-8;  // membership in the Psi = 0 level set
  double rank_tol = 1e-8;   // relative singular-value threshold
  double feas_tol = 1e-9;   // polytope membership for float points
};

/// A point of C^d stored as coordinate pairs (x_j, y_j).
struct AmbientPoint {
  Eigen::VectorXd x, y;

  int dim() const { return static_cast<int>(x.size()); }
  double abs2(int j) const { return x[j] * x[j] + y[j] * y[j]; }

  /// Indices with |z_j| <= zero_tol, the candidate active set.
  std::vector<int> zero_pattern(double zero_tol) const {
    std::vector<int> out;
    for (int j = 0; j < dim(); ++j)
      if (std::sqrt(abs2(j)) <= zero_tol) out.push_back(j);
    return out;
  }
};

/// Rotate each coordinate by the torus flow of generator xi at time t:
/// z_j(t) = exp(-2 i xi_j t) z_j(0).
inline AmbientPoint torus_flow(const AmbientPoint& z, const Eigen::VectorXd& xi, double t) {
  AmbientPoint w = z;
  for (int j = 0; j < z.dim(); ++j) {
    const double c = std::cos(2.0 * xi[j] * t), s = std::sin(2.0 * xi[j] * t);
    // multiply z_j by (c - i s)
    w.x[j] = c * z.x[j] + s * z.y[j];
    w.y[j] = c * z.y[j] - s * z.x[j];
  }
  return w;
}

/**
 * Float shadow of a polytope/torus instance: everything the sampling and
 * verification layer needs, converted once through the explicit to_float
 * boundary. Snapshots the exact data by value, so it stays a pure function
 * of its inputs and is safe to pass around and share across threads.
 */
struct MomentData {
  HPolytope poly;
  FacePoset faces;
  Tolerances tol;

  int n = 0, d = 0, dn = 0;  // dn = d - n
  Eigen::MatrixXd pi;        // n x d
  Eigen::MatrixXd pi_star;   // d x n
  Eigen::MatrixXd iota_star; // dn x d
  Eigen::VectorXd lambda;
  Eigen::MatrixXd vertex_coords;  // n x V
  std::map<std::vector<int>, int> face_by_pattern;
};

inline MomentData make_moment_data(const HPolytope& p, const TorusData& t,
                                   const FacePoset& fp, Tolerances tol = {}) {
  MomentData md;
  md.poly = p;
  md.faces = fp;
  md.tol = tol;
  md.n = p.n;
  md.d = p.d;
  md.dn = p.d - p.n;
  md.pi.resize(p.n, p.d);
  md.lambda.resize(p.d);
  for (int j = 0; j < p.d; ++j) {
    for (int i = 0; i < p.n; ++i) md.pi(i, j) = p.normals[j][i].to_float();
    md.lambda[j] = p.offsets[j].to_float();
  }
  md.pi_star = md.pi.transpose();
  md.iota_star.resize(md.dn, p.d);
  for (int k = 0; k < md.dn; ++k)
    for (int j = 0; j < p.d; ++j) md.iota_star(k, j) = t.kernel_basis[k][j].to_float();
  md.vertex_coords.resize(p.n, fp.vertices.size());
  for (std::size_t v = 0; v < fp.vertices.size(); ++v)
    for (int i = 0; i < p.n; ++i) md.vertex_coords(i, v) = fp.vertices[v].mu[i].to_float();
  for (int f = 0; f < fp.size(); ++f) md.face_by_pattern[fp.faces[f].I] = f;
  return md;
}

/// J(z) = sum_j (|z_j|^2 + lambda_j) e_j*, the moment map of the standard
/// torus action on C^d.
inline Eigen::VectorXd moment_J(const MomentData& md, const AmbientPoint& z) {
  Eigen::VectorXd out(md.d);
  for (int j = 0; j < md.d; ++j) out[j] = z.abs2(j) + md.lambda[j];
  return out;
}

/// Psi = iota* . J in kernel-basis coordinates; Psi = 0 cuts the level set.
inline Eigen::VectorXd moment_Psi(const MomentData& md, const AmbientPoint& z) {
  return md.iota_star * moment_J(md, z);
}

inline double psi_norm(const MomentData& md, const AmbientPoint& z) {
  const Eigen::VectorXd psi = moment_Psi(md, z);
  return psi.size() == 0 ? 0.0 : psi.cwiseAbs().maxCoeff();
}

/**
 * Lift mu in the polytope to the level set: |z_j|^2 = <mu, X_j> - lambda_j
 * with prescribed phases. Float-slack path; feasibility enforced within
 * feas_tol.
 */
inline AmbientPoint fiber_point(const MomentData& md, const Eigen::VectorXd& mu,
                                const std::vector<double>& theta) {
  AmbientPoint z;
  z.x.resize(md.d);
  z.y.resize(md.d);
  for (int j = 0; j < md.d; ++j) {
    double s = md.pi.col(j).dot(mu) - md.lambda[j];
    if (s < -md.tol.feas_tol)
      throw ValidationError("infeasible_point",
                            "mu violates facet " + std::to_string(j + 1));
    s = std::max(s, 0.0);
    const double r = std::sqrt(s);
    z.x[j] = r * std::cos(theta[j]);
    z.y[j] = r * std::sin(theta[j]);
  }
  return z;
}

/// Exact-mu lift: slack signs are decided exactly, so the zero pattern of z
/// equals the active set of mu's face with no tolerance involved.
inline AmbientPoint fiber_point_exact(const MomentData& md, const Vector& mu,
                                      const std::vector<double>& theta) {
  AmbientPoint z;
  z.x = Eigen::VectorXd::Zero(md.d);
  z.y = Eigen::VectorXd::Zero(md.d);
  for (int j = 0; j < md.d; ++j) {
    const Scalar s = md.poly.slack(mu, j);
    const int sg = s.sign();
    if (sg < 0)
      throw ValidationError("infeasible_point",
                            "mu violates facet " + std::to_string(j + 1));
    if (sg == 0) continue;
    const double r = std::sqrt(s.to_float());
    z.x[j] = r * std::cos(theta[j]);
    z.y[j] = r * std::sin(theta[j]);
  }
  return z;
}

/**
 * Phi(z) = (pi*)^{-1}(J(z)) for z on the level set: the unique preimage of
 * J(z) under the dual inclusion, solved in least squares. On Psi = 0 the
 * exact sequence guarantees solvability; the residual reports how far J(z)
 * is from the image.
 */
inline Eigen::VectorXd moment_Phi(const MomentData& md, const AmbientPoint& z,
                                  double* residual = nullptr) {
  if (psi_norm(md, z) > md.tol.level_tol)
    throw ValidationError("not_on_level_set", "Psi(z) exceeds level tolerance");
  const Eigen::VectorXd j = moment_J(md, z);
  const Eigen::VectorXd mu = md.pi_star.colPivHouseholderQr().solve(j);
  if (residual) *residual = (md.pi_star * mu - j).cwiseAbs().maxCoeff();
  return mu;
}

/// Max-norm residual of |z_j|^2 = <mu, X_j> - lambda_j over all facets.
inline double fiber_residual(const MomentData& md, const AmbientPoint& z,
                             const Eigen::VectorXd& mu) {
  double worst = 0.0;
  for (int j = 0; j < md.d; ++j)
    worst = std::max(worst, std::abs(z.abs2(j) - (md.pi.col(j).dot(mu) - md.lambda[j])));
  return worst;
}

/// Face whose active set equals the zero pattern of z.
inline int classify_point(const MomentData& md, const AmbientPoint& z) {
  if (psi_norm(md, z) > md.tol.level_tol)
    throw ValidationError("not_on_level_set", "Psi(z) exceeds level tolerance");
  const auto pattern = z.zero_pattern(md.tol.zero_tol);
  const auto it = md.face_by_pattern.find(pattern);
  if (it == md.face_by_pattern.end())
    throw ValidationError("unknown_zero_pattern",
                          "zero pattern matches no enumerated face (check tolerances)");
  return it->second;
}

namespace detail {

inline int svd_rank(const Eigen::MatrixXd& m, double rank_tol, double scale_floor = 0.0) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thr = rank_tol * std::max(sv[0], scale_floor);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr && thr > 0) ++r;
  return r;
}

/// Jacobian of Psi restricted to the real coordinates of the given complex
/// columns: row k has entries (2 v_kj x_j, 2 v_kj y_j).
inline Eigen::MatrixXd psi_jacobian(const MomentData& md, const AmbientPoint& z,
                                    const std::vector<int>& columns) {
  Eigen::MatrixXd jac(md.dn, 2 * columns.size());
  for (int k = 0; k < md.dn; ++k)
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const int j = columns[c];
      jac(k, 2 * c) = 2.0 * md.iota_star(k, j) * z.x[j];
      jac(k, 2 * c + 1) = 2.0 * md.iota_star(k, j) * z.y[j];
    }
  return jac;
}

}  // namespace detail

/**
 * Numerical rank of dPsi at z restricted to directions tangent to the
 * coordinate stratum of z's zero pattern. Over a face F this equals
 * (d - n) - dim n^F: the kernel directions are exactly the stabilizer
 * algebra of the pattern.
 */
inline int rank_dPsi(const MomentData& md, const AmbientPoint& z) {
  if (psi_norm(md, z) > md.tol.level_tol)
    throw ValidationError("not_on_level_set", "Psi(z) exceeds level tolerance");
  const auto pattern = z.zero_pattern(md.tol.zero_tol);
  std::vector<int> keep;
  for (int j = 0; j < md.d; ++j)
    if (!std::binary_search(pattern.begin(), pattern.end(), j)) keep.push_back(j);
  return detail::svd_rank(detail::psi_jacobian(md, z, keep), md.tol.rank_tol);
}

/**
 * Finite-difference check of the Hamiltonian identity
 * omega0(xi_M(z), v) = D_v <J(z), xi> for the torus generator xi, with
 * omega0 = sum dx_j ^ dy_j. Both derivatives are central differences with
 * step h: the action field xi_M from the group flow, the Hamiltonian
 * derivative along straight lines. Returns the worst residual over the
 * coordinate directions and a fixed bundle of pseudo-random directions.
 */
inline double check_hamiltonian(const MomentData& md, const AmbientPoint& z,
                                const Eigen::VectorXd& xi, double h) {
  const AmbientPoint fwd = torus_flow(z, xi, h), bwd = torus_flow(z, xi, -h);
  AmbientPoint xi_m;
  xi_m.x = (fwd.x - bwd.x) / (2.0 * h);
  xi_m.y = (fwd.y - bwd.y) / (2.0 * h);

  const auto hamiltonian = [&](const AmbientPoint& w) {
    double sum = 0.0;
    for (int j = 0; j < md.d; ++j) sum += xi[j] * (w.abs2(j) + md.lambda[j]);
    return sum;
  };

  std::vector<AmbientPoint> directions;
  for (int j = 0; j < md.d; ++j) {
    AmbientPoint vx;
    vx.x = Eigen::VectorXd::Zero(md.d);
    vx.y = Eigen::VectorXd::Zero(md.d);
    vx.x[j] = 1.0;
    directions.push_back(vx);
    AmbientPoint vy = vx;
    vy.x[j] = 0.0;
    vy.y[j] = 1.0;
    directions.push_back(vy);
  }
  SplitRng rng(0x243F6A8885A308D3ULL, 0);
  for (int k = 0; k < 8; ++k) {
    AmbientPoint v;
    v.x.resize(md.d);
    v.y.resize(md.d);
    for (int j = 0; j < md.d; ++j) {
      v.x[j] = 2.0 * rng.uniform() - 1.0;
      v.y[j] = 2.0 * rng.uniform() - 1.0;
    }
    const double norm = std::sqrt(v.x.squaredNorm() + v.y.squaredNorm());
    v.x /= norm;
    v.y /= norm;
    directions.push_back(v);
  }

  double worst = 0.0;
  for (const auto& v : directions) {
    double omega = 0.0;
    for (int j = 0; j < md.d; ++j) omega += xi_m.x[j] * v.y[j] - xi_m.y[j] * v.x[j];
    AmbientPoint plus = z, minus = z;
    plus.x += h * v.x;
    plus.y += h * v.y;
    minus.x -= h * v.x;
    minus.y -= h * v.y;
    const double deriv = (hamiltonian(plus) - hamiltonian(minus)) / (2.0 * h);
    worst = std::max(worst, std::abs(omega - deriv));
  }
  return worst;
}

struct SymplecticRank {
  int rank = 0;
  int kernel_dim = 0;
  int tangent_dim = 0;
};

/**
 * Restrict the standard symplectic form to a numerical tangent basis of the
 * stratum manifold (level set intersected with z's coordinate stratum) at z.
 * The reduced form on the stratum has rank 2p; the kernel consists of the
 * orbit directions, of dimension (d - n) - dim n^F.
 */
inline SymplecticRank check_symplectic_rank(const MomentData& md, const Face& face,
                                            const AmbientPoint& z) {
  std::vector<int> keep;
  for (int j = 0; j < md.d; ++j)
    if (!std::binary_search(face.I.begin(), face.I.end(), j)) keep.push_back(j);
  const Eigen::MatrixXd jac = detail::psi_jacobian(md, z, keep);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double thr = md.tol.rank_tol * smax;
  int jac_rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr && smax > 0) ++jac_rank;

  const int cols = static_cast<int>(2 * keep.size());
  const int tangent_dim = cols - jac_rank;
  const int expected = md.d - face.r + face.p;
  if (tangent_dim != expected)
    throw ValidationError("rank_mismatch",
                          "tangent basis construction failed: got dimension " +
                              std::to_string(tangent_dim) + ", expected " +
                              std::to_string(expected) + " (check tolerances)");

  const Eigen::MatrixXd basis = svd.matrixV().rightCols(tangent_dim);
  // omega0 on the kept coordinates: block-diagonal [[0,1],[-1,0]] per pair
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(cols, cols);
  for (std::size_t c = 0; c < keep.size(); ++c) {
    omega(2 * c, 2 * c + 1) = 1.0;
    omega(2 * c + 1, 2 * c) = -1.0;
  }
  const Eigen::MatrixXd gram = basis.transpose() * omega * basis;
  // the basis is orthonormal, so honest entries of the reduced form are O(1):
  // floor the threshold scale at 1 to keep the zero form at rank 0
  SymplecticRank out;
  out.tangent_dim = tangent_dim;
  out.rank = detail::svd_rank(gram, md.tol.rank_tol, 1.0);
  out.kernel_dim = tangent_dim - out.rank;
  return out;
}

/// Orthonormal basis of the numerical kernel of the full-space dPsi at z
/// (tangent directions of the level set).
inline Eigen::MatrixXd level_tangent_basis(const MomentData& md, const AmbientPoint& z) {
  std::vector<int> all(md.d);
  for (int j = 0; j < md.d; ++j) all[j] = j;
  const Eigen::MatrixXd jac = detail::psi_jacobian(md, z, all);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double thr = md.tol.rank_tol * smax;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr && smax > 0) ++r;
  return svd.matrixV().rightCols(2 * md.d - r);
}

}  // namespace polyq
