#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyq/report.hpp"

namespace polyq {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
};

struct VerifyConfig {
  int samples = 1000;
  std::uint64_t seed = 42;
  Tolerances tol;
  double epsilon = 1.0;
};

namespace detail {

class Checker {
 public:
  explicit Checker(std::vector<CheckResult>& out) : out_(&out) {}

  /// Run one named check; any assertion failure or exception fails it.
  void run(const std::string& name, const std::function<void(Checker&)>& body) {
    current_ = {name, true, "ok"};
    try {
      body(*this);
    } catch (const std::exception& e) {
      current_.pass = false;
      current_.details = e.what();
    }
    out_->push_back(current_);
  }

  void require(bool cond, const std::string& what) {
    if (!cond && current_.pass) {
      current_.pass = false;
      current_.details = what;
    }
  }

  void note(const std::string& details) {
    if (current_.pass) current_.details = details;
  }

 private:
  std::vector<CheckResult>* out_;
  CheckResult current_;
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

/**
 * The runtime verification battery: every invariant of the construction that
 * is checkable on a loaded instance, from exact face-lattice consistency to
 * the sampled moment-map identities. Each check reports pass/fail with a
 * short detail line; thresholds are fixed here, not configurable.
 */
inline std::vector<CheckResult> run_verification(const HPolytope& p, const TorusData& t,
                                                 const FacePoset& fp, const VerifyConfig& cfg) {
  std::vector<CheckResult> results;
  detail::Checker ck(results);
  const MomentData md = make_moment_data(p, t, fp, cfg.tol);
  const Stratification st = build_stratification(p, fp);

  ck.run("face_consistency", [&](detail::Checker& c) {
    long euler = 0;
    for (const auto& f : fp.faces) {
      c.require(f.r == static_cast<int>(f.I.size()), "r != |I|");
      c.require(f.r >= p.n - f.p, "r < n - p");
      c.require(f.singular == (f.r > p.n - f.p), "classification flag inconsistent");
      std::vector<Vector> rows;
      for (const int j : f.I) rows.push_back(p.normals[j]);
      const std::size_t rk = f.I.empty() ? 0 : rank(Matrix::from_rows(rows));
      c.require(f.p == p.n - static_cast<int>(rk), "p != n - rank");
      c.require(p.active_set(f.witness) == f.I, "witness active set mismatch");
      if (f.p < p.n) euler += (f.p % 2 == 0) ? 1 : -1;
    }
    c.require(euler == (p.n % 2 == 0 ? 0 : 2), "Euler relation violated");
    const int top = fp.interior_index();
    c.require(top >= 0, "interior face missing");
    for (int i = 0; i < fp.size(); ++i) {
      c.require(fp.leq(i, top), "interior is not the maximum");
      for (int j = 0; j < fp.size(); ++j)
        if (i != j && fp.leq(i, j))
          c.require(fp.faces[i].p < fp.faces[j].p, "order not graded by dimension");
    }
    c.note(std::to_string(fp.size()) + " faces");
  });

  ck.run("stabilizer_dims", [&](detail::Checker& c) {
    for (const auto& f : fp.faces) {
      const auto sd = stabilizer_data(t, f);
      c.require(sd.dim_s == f.r, "dim s^F != r_F");
      c.require(sd.dim_n == f.r - p.n + f.p, "dim n^F != r_F - n + p");
      c.require((sd.dim_n == 0) == !f.singular, "n^F vanishes iff regular violated");
      for (const auto& v : sd.n_basis) {
        c.require((t.pi * v).is_zero(), "n^F basis not in ker pi");
        for (int j = 0; j < p.d; ++j)
          if (!std::binary_search(f.I.begin(), f.I.end(), j))
            c.require(v[j].is_zero(), "n^F basis not supported on I_F");
      }
    }
  });

  ck.run("exact_sequence", [&](detail::Checker& c) {
    c.require(t.kernel_basis.size() == static_cast<std::size_t>(p.d - p.n),
              "dim ker pi != d - n");
    c.require((t.iota_star * t.pi_star).is_zero(), "iota* . pi* != 0");
    c.require(rank(t.pi_star) + rank(t.iota_star) == static_cast<std::size_t>(p.d),
              "rank bookkeeping of the exact sequence fails");
  });

  ck.run("rationality_stability", [&](detail::Checker& c) {
    if (!p.field.exact()) {
      c.note("skipped: float field");
      return;
    }
    auto scratch = t;
    const auto verdict = rationality_verdict(scratch);
    SplitRng rng(cfg.seed, 0x5374ULL);
    for (int trial = 0; trial < 5; ++trial) {
      Vector combo = field_scalar(p.field, static_cast<long long>(rng.uniform_int(9)) - 5) *
                     scratch.quasilattice_generators[0];
      for (std::size_t g = 1; g < scratch.quasilattice_generators.size(); ++g)
        combo = combo + field_scalar(p.field, static_cast<long long>(rng.uniform_int(9)) - 5) *
                            scratch.quasilattice_generators[g];
      scratch.quasilattice_generators.push_back(combo);
      c.require(rationality_verdict(scratch) == verdict,
                "verdict changed after appending a Z-combination");
    }
    c.note(std::string("verdict: ") + to_string(verdict));
  });

  ck.run("eq7_roundtrip", [&](detail::Checker& c) {
    const Sampler sampler(md, cfg.seed);
    double worst_fiber = 0.0, worst_phi = 0.0, worst_mu = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const auto rec = sampler.sample(i);
      worst_fiber = std::max(worst_fiber, rec.psi_norm);
      worst_phi = std::max(worst_phi, rec.phi_residual);
      const auto phi = moment_Phi(md, rec.z);
      worst_mu = std::max(worst_mu, (phi - rec.mu).cwiseAbs().maxCoeff());
    }
    c.require(worst_fiber <= 1e-12, "construction residual " + detail::fmt(worst_fiber));
    c.require(worst_phi <= 1e-10, "per-facet residual " + detail::fmt(worst_phi));
    c.require(worst_mu <= 1e-10, "round-trip error " + detail::fmt(worst_mu));
    c.note("max |Psi| " + detail::fmt(worst_fiber) + ", round-trip " + detail::fmt(worst_mu));
  });

  ck.run("surjectivity_faces", [&](detail::Checker& c) {
    SplitRng rng(cfg.seed, 0x5552ULL);
    for (int f = 0; f < fp.size(); ++f) {
      std::vector<double> theta(p.d);
      for (auto& th : theta) th = 2.0 * std::numbers::pi * rng.uniform();
      const auto z = fiber_point_exact(md, fp.faces[f].witness, theta);
      c.require(psi_norm(md, z) <= cfg.tol.level_tol, "witness fiber off the level set");
      c.require(classify_point(md, z) == f, "witness fiber classifies to a different face");
    }
    c.note("all " + std::to_string(fp.size()) + " faces hit");
  });

  ck.run("rank_dpsi", [&](detail::Checker& c) {
    const Sampler sampler(md, cfg.seed);
    for (int f = 0; f < fp.size(); ++f) {
      const auto& face = fp.faces[f];
      const int expected = md.dn - (face.r - p.n + face.p);
      for (int k = 0; k < 20; ++k) {
        SplitRng rng(cfg.seed, (static_cast<std::uint64_t>(f) << 24) ^ k);
        const auto mu = sampler.face_point(f, rng);
        std::vector<double> theta(p.d);
        for (auto& th : theta) th = 2.0 * std::numbers::pi * rng.uniform();
        const auto z = fiber_point_exact(md, mu, theta);
        c.require(rank_dPsi(md, z) == expected,
                  "rank formula fails on face I=" + index_set_label(face.I));
      }
    }
  });

  ck.run("symplectic_rank", [&](detail::Checker& c) {
    const Sampler sampler(md, cfg.seed);
    for (int f = 0; f < fp.size(); ++f) {
      const auto& face = fp.faces[f];
      const int expected_kernel = md.dn - (face.r - p.n + face.p);
      for (int k = 0; k < 20; ++k) {
        SplitRng rng(cfg.seed, (static_cast<std::uint64_t>(f) << 24) ^ (k + 7777));
        const auto mu = sampler.face_point(f, rng);
        std::vector<double> theta(p.d);
        for (auto& th : theta) th = 2.0 * std::numbers::pi * rng.uniform();
        const auto z = fiber_point_exact(md, mu, theta);
        const auto sr = check_symplectic_rank(md, face, z);
        c.require(sr.rank == 2 * face.p,
                  "symplectic rank != 2p on face I=" + index_set_label(face.I));
        c.require(sr.kernel_dim == expected_kernel,
                  "symplectic kernel mismatch on face I=" + index_set_label(face.I));
      }
    }
  });

  ck.run("hamiltonian_fd", [&](detail::Checker& c) {
    SplitRng rng(cfg.seed, 0x4841ULL);
    std::vector<double> theta(p.d);
    for (auto& th : theta) th = 2.0 * std::numbers::pi * rng.uniform();
    const auto z = fiber_point_exact(md, p.interior_point, theta);
    double worst = 0.0, worst_ratio = 1e300;
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd xi(p.d);
      for (int j = 0; j < p.d; ++j) {
        const double mag = 0.5 + rng.uniform();
        xi[j] = rng.uniform() < 0.5 ? -mag : mag;
      }
      const double r1 = check_hamiltonian(md, z, xi, 1e-4);
      const double r2 = check_hamiltonian(md, z, xi, 0.5e-4);
      worst = std::max(worst, r1);
      worst_ratio = std::min(worst_ratio, r1 / r2);
    }
    c.require(worst <= 1e-6, "residual " + detail::fmt(worst) + " at h=1e-4");
    c.require(worst_ratio >= 3.0,
              "halving h reduced the residual only " + detail::fmt(worst_ratio) + "x");
    c.note("max residual " + detail::fmt(worst) + ", min halving ratio " +
           detail::fmt(worst_ratio));
  });

  ck.run("n_invariance", [&](detail::Checker& c) {
    SplitRng rng(cfg.seed, 0x4E49ULL);
    std::vector<double> theta(p.d);
    for (auto& th : theta) th = 2.0 * std::numbers::pi * rng.uniform();
    const auto z = fiber_point_exact(md, p.interior_point, theta);
    const auto phi0 = moment_Phi(md, z);
    for (int k = 0; k < md.dn; ++k) {
      const Eigen::VectorXd xi = md.iota_star.row(k);
      for (const double s : {0.25, 0.5, 1.0}) {
        const auto w = torus_flow(z, xi, s);
        c.require(psi_norm(md, w) <= cfg.tol.level_tol, "flow left the level set");
        c.require((moment_Phi(md, w) - phi0).cwiseAbs().maxCoeff() <= 1e-8,
                  "Phi moved under a kernel-algebra flow");
      }
    }
  });

  ck.run("strata_poset", [&](detail::Checker& c) {
    c.require(st.pieces.back().regular, "regular piece missing or not last");
    c.require(st.pieces.back().dim == 2 * p.n, "regular piece dimension != 2n");
    int regular_count = 0;
    for (int i = 0; i < st.size(); ++i) {
      const auto& piece = st.pieces[i];
      if (piece.regular) ++regular_count;
      c.require(piece.dim % 2 == 0, "odd piece dimension");
      if (!piece.regular) {
        c.require(piece.dim <= 2 * p.n - 4, "singular piece above the 2n-4 bound");
        c.require(piece.dim == 2 * fp.faces[piece.face_id].p, "piece dim != 2p");
      }
      c.require(st.leq(i, st.size() - 1), "regular piece is not the maximum");
      for (int j = 0; j < st.size(); ++j) {
        if (i != j && st.leq(i, j) && st.leq(j, i)) c.require(false, "antisymmetry violated");
        if (!piece.regular && !st.pieces[j].regular)
          c.require(st.leq(i, j) == fp.leq(piece.face_id, st.pieces[j].face_id),
                    "piece order does not mirror face order");
      }
    }
    c.require(regular_count == 1, "regular piece not unique");
    c.note(std::to_string(st.size()) + " pieces");
  });

  ck.run("link_dimensions", [&](detail::Checker& c) {
    const auto sing = fp.singular_faces();
    if (sing.empty()) {
      c.note("no singular faces");
      return;
    }
    for (const int f : sing) {
      const auto link = build_link(p, t, fp, f);
      const int fp_dim = fp.faces[f].p;
      c.require(link.dim == 2 * p.n - 2 * fp_dim - 1, "link dim != 2n-2p-1");
      c.require(link.dim >= 3, "link dim < 3");
      c.require(2 * fp_dim + link.dim + 1 == 2 * p.n, "dimension sum identity fails");
      c.require(link.depth() <= p.n, "recursion depth exceeds n");
      const std::function<void(const LinkDescriptor&)> walk = [&](const LinkDescriptor& ld) {
        for (const auto& child : ld.children) {
          c.require(child.dim < ld.dim, "child link dimension does not decrease");
          c.require(fp.faces[child.face_id].singular, "child is not singular");
          c.require(fp.leq(ld.face_id, child.face_id), "child face is not above the base");
          walk(child);
        }
      };
      walk(link);
    }
    c.note(std::to_string(sing.size()) + " singular faces");
  });

  ck.run("link_sampler", [&](detail::Checker& c) {
    const auto sing = fp.singular_faces();
    if (sing.empty()) {
      c.note("no singular faces");
      return;
    }
    for (const int f : sing) {
      const auto pts = sample_link_points(p, t, fp, f, cfg.epsilon, 100, cfg.seed);
      c.require(!pts.empty(), "sampler produced no points");
      const auto& face = fp.faces[f];
      for (const auto& pt : pts) {
        c.require(pt.psi_residual <= 1e-10, "psi residual " + detail::fmt(pt.psi_residual));
        c.require(pt.sphere_residual <= 1e-10,
                  "sphere residual " + detail::fmt(pt.sphere_residual));
      }
      // cone homogeneity at t = 1/2 on the first few samples
      for (std::size_t i = 0; i < std::min<std::size_t>(pts.size(), 10); ++i) {
        const Eigen::VectorXd wx = 0.5 * pts[i].wx, wy = 0.5 * pts[i].wy;
        const auto psi = link_psi_value(t, face, wx, wy);
        if (psi.size() > 0)
          c.require(psi.cwiseAbs().maxCoeff() <= 1e-10, "cone scaling broke psi = 0");
      }
    }
  });

  ck.run("bounded_level_set", [&](detail::Checker& c) {
    Eigen::VectorXd bound(p.d);
    for (int j = 0; j < p.d; ++j) {
      double worst = 0.0;
      for (const auto& v : fp.vertices) worst = std::max(worst, p.slack(v.mu, j).to_float());
      bound[j] = worst;
    }
    const Sampler sampler(md, cfg.seed);
    const int count = std::min(cfg.samples, 200);
    for (int i = 0; i < count; ++i) {
      const auto rec = sampler.sample(i);
      for (int j = 0; j < p.d; ++j)
        c.require(rec.z.abs2(j) <= bound[j] + 1e-9, "|z_j|^2 above the max facet slack");
    }
    c.note("max |z_j|^2 bounded by vertex slacks on " + std::to_string(count) + " samples");
  });

  return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

inline json verify_report_json(const std::vector<CheckResult>& results) {
  json checks = json::array();
  for (const auto& r : results) {
    json o;
    o["name"] = r.name;
    o["pass"] = r.pass;
    o["details"] = r.details;
    checks.push_back(o);
  }
  json o;
  o["checks"] = checks;
  o["pass"] = all_passed(results);
  return o;
}

inline std::string verify_report_text(const std::vector<CheckResult>& results) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name
       << std::string(width - r.name.size() + 2, ' ') << r.details << "\n";
  }
  os << (all_passed(results) ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace polyq
