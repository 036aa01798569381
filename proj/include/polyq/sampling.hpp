#pragma once

#include <vector>

#include "polyq/moment.hpp"

namespace polyq {

struct SampleRecord {
  Eigen::VectorXd mu;
  std::vector<double> theta;
  AmbientPoint z;
  int face_id = -1;
  double psi_norm = 0.0;
  double phi_residual = 0.0;  // worst residual of |z_j|^2 = <Phi(z),X_j> - lambda_j
};

/**
 * Deterministic level-set sampler. Even indices draw mu by rejection from
 * the vertex bounding box (interior points); odd indices draw an exact
 * relative-interior point of a face, round-robin over all faces, so that
 * measure-zero singular faces are exercised. Each record is a pure function
 * of (seed, index).
 */
class Sampler {
 public:
  Sampler(const MomentData& md, std::uint64_t seed) : md_(&md), seed_(seed) {
    const auto& vc = md.vertex_coords;
    lo_ = vc.rowwise().minCoeff();
    hi_ = vc.rowwise().maxCoeff();
  }

  /// Exact relative-interior point of a face: positive random rational
  /// weights over its incident vertices.
  Vector face_point(int face_id, SplitRng& rng) const {
    const Face& f = md_->faces.faces[face_id];
    const auto& verts = md_->faces.vertices;
    const auto& field = md_->poly.field;
    Vector mu;
    Scalar total = field_scalar(field, 0);
    for (const int v : f.vertex_ids) {
      const Scalar w = field_scalar(field, static_cast<long long>(rng.uniform_int(100)));
      const Vector term = w * verts[v].mu;
      mu = mu.size() == 0 ? term : mu + term;
      total += w;
    }
    return (field_scalar(field, 1) / total) * mu;
  }

  /// Float interior point by rejection sampling from the bounding box.
  Eigen::VectorXd interior_point(SplitRng& rng) const {
    for (int tries = 0; tries < 100000; ++tries) {
      Eigen::VectorXd mu(md_->n);
      for (int i = 0; i < md_->n; ++i)
        mu[i] = lo_[i] + (hi_[i] - lo_[i]) * rng.uniform();
      bool inside = true;
      for (int j = 0; j < md_->d && inside; ++j)
        if (md_->pi.col(j).dot(mu) - md_->lambda[j] <= md_->tol.feas_tol) inside = false;
      if (inside) return mu;
    }
    throw ValidationError("bad_input", "rejection sampling failed to hit the interior");
  }

  SampleRecord sample(std::uint64_t index) const {
    SplitRng rng(seed_, index);
    SampleRecord rec;
    rec.theta.resize(md_->d);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < md_->d; ++j) rec.theta[j] = two_pi * rng.uniform();

    if (index % 2 == 0) {
      rec.mu = interior_point(rng);
      rec.z = fiber_point(*md_, rec.mu, rec.theta);
    } else {
      const int face_id = static_cast<int>((index / 2) % md_->faces.size());
      const Vector mu_exact = face_point(face_id, rng);
      rec.z = fiber_point_exact(*md_, mu_exact, rec.theta);
      rec.mu.resize(md_->n);
      for (int i = 0; i < md_->n; ++i) rec.mu[i] = mu_exact[i].to_float();
    }
    rec.psi_norm = psi_norm(*md_, rec.z);
    double resid = 0.0;
    const Eigen::VectorXd phi = moment_Phi(*md_, rec.z, &resid);
    rec.phi_residual = fiber_residual(*md_, rec.z, phi);
    rec.face_id = classify_point(*md_, rec.z);
    return rec;
  }

 private:
  const MomentData* md_;
  std::uint64_t seed_;
  Eigen::VectorXd lo_, hi_;
};

}  // namespace polyq
