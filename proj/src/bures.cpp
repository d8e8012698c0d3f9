#include "bures/bures.hpp"

#include <cmath>

namespace bures {

namespace {

Mat expm_hermitian(const EighResult& e, double sign) {
  RealVec d = (sign * e.values).array().exp();
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

// Gradient of H -> tr(a e^{sign H}) at Hermitian H with eigensystem e,
// via the divided-difference (Daleckii-Krein) formula.
Mat exp_trace_grad(const Mat& a, const EighResult& e, double sign) {
  const int n = static_cast<int>(e.values.size());
  Mat at = e.vectors.adjoint() * a * e.vectors;
  Eigen::MatrixXd phi(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double dj = e.values(j), dk = e.values(k);
      if (std::abs(dj - dk) < 1e-12 * (1.0 + std::abs(dj))) {
        phi(j, k) = sign * std::exp(sign * dj);
      } else {
        phi(j, k) = (std::exp(sign * dj) - std::exp(sign * dk)) / (dj - dk);
      }
    }
  }
  Mat g = e.vectors * at.cwiseProduct(phi.cast<cplx>()) * e.vectors.adjoint();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

double fidelity(const PositiveForm& nu, const PositiveForm& rho,
                const TolerancePolicy& tol) {
  require_same_algebra(nu.algebra, rho.algebra);
  double f = 0.0;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    Mat prod = sqrt_psd(nu.densities[i], tol) * sqrt_psd(rho.densities[i], tol);
    f += nuclear_norm(prod);
  }
  return f;
}

BuresReport bures_distance(const PositiveForm& nu, const PositiveForm& rho,
                           const TolerancePolicy& tol) {
  BuresReport r;
  r.fidelity = fidelity(nu, rho, tol);
  r.nu_norm = nu.norm1();
  r.rho_norm = rho.norm1();
  double d2 = r.nu_norm + r.rho_norm - 2.0 * r.fidelity;
  r.distance = std::sqrt(std::max(0.0, d2));
  return r;
}

VariationalResult variational_fidelity(const PositiveForm& nu,
                                       const PositiveForm& rho,
                                       VariationalMode mode,
                                       const TolerancePolicy& tol) {
  require_same_algebra(nu.algebra, rho.algebra);
  const Algebra& alg = nu.algebra;
  VariationalResult out;

  if (mode == VariationalMode::analytic) {
    std::vector<Mat> xb, xinv;
    for (int i = 0; i < alg.blocks(); ++i) {
      const Mat& a = nu.densities[static_cast<size_t>(i)];
      const Mat& c = rho.densities[static_cast<size_t>(i)];
      if (svd(a, tol).rank < alg.dim(i)) {
        throw SingularDensity("analytic mode requires full-rank nu");
      }
      Mat sa = sqrt_psd(a, tol);
      Mat mid = sqrt_psd(Mat(sa * c * sa), tol);
      Mat am = psd_power(a, -0.5, tol);
      Mat x = am * mid * am;
      x = 0.5 * (x + x.adjoint());
      xb.push_back(x);
      // algebraic inverse sqrt(a) mid^{-1} sqrt(a): avoids squaring the
      // condition number of a through pinv(x)
      Mat xi = sa * pinv(mid, tol) * sa;
      xinv.push_back(0.5 * (xi + xi.adjoint()));
    }
    out.argmin = AlgElement(alg, std::move(xb));
    AlgElement xinv_el(alg, std::move(xinv));
    double va = evaluate(nu, out.argmin).real();
    double vb = evaluate(rho, xinv_el).real();
    out.value = std::sqrt(std::max(0.0, va * vb));
    return out;
  }

  // iterative: minimize nu(e^H) rho(e^{-H}) over blockwise Hermitian H.
  // Exact gradients through divided differences, Barzilai-Borwein step with a
  // monotone backtracking safeguard; stops on a persistent relative plateau
  // or 2e4 iterations.
  std::vector<Mat> H;
  for (int i = 0; i < alg.blocks(); ++i) {
    H.push_back(Mat::Zero(alg.dim(i), alg.dim(i)));
  }
  auto objective = [&](const std::vector<Mat>& h) {
    double a_val = 0.0, b_val = 0.0;
    for (int i = 0; i < alg.blocks(); ++i) {
      EighResult e = eigh(h[static_cast<size_t>(i)], tol);
      a_val += (nu.densities[static_cast<size_t>(i)] * expm_hermitian(e, 1.0))
                   .trace().real();
      b_val += (rho.densities[static_cast<size_t>(i)] * expm_hermitian(e, -1.0))
                   .trace().real();
    }
    return std::pair<double, double>(a_val, b_val);
  };

  auto [a_val, b_val] = objective(H);
  double f = a_val * b_val;
  std::vector<Mat> g_prev, h_prev;
  double step = 0.5;
  int it = 0, flat = 0;
  for (; it < 20000; ++it) {
    if (f <= 0.0) break;
    std::vector<Mat> grad;
    double gn2 = 0.0;
    for (int i = 0; i < alg.blocks(); ++i) {
      EighResult e = eigh(H[static_cast<size_t>(i)], tol);
      Mat g = b_val * exp_trace_grad(nu.densities[static_cast<size_t>(i)], e, 1.0) +
              a_val * exp_trace_grad(rho.densities[static_cast<size_t>(i)], e, -1.0);
      gn2 += g.squaredNorm();
      grad.push_back(std::move(g));
    }
    if (gn2 < 1e-30) break;
    if (!g_prev.empty()) {
      // BB1 step <s,s>/<s,y> from the last accepted move
      double ss = 0.0, sy = 0.0;
      for (size_t i = 0; i < grad.size(); ++i) {
        Mat s = H[i] - h_prev[i];
        Mat y = grad[i] - g_prev[i];
        ss += s.squaredNorm();
        sy += (s.adjoint() * y).trace().real();
      }
      if (sy > 1e-300) step = ss / sy;
    }
    step = std::min(std::max(step, 1e-12), 1e6);
    bool accepted = false;
    double fnew = f, anew = a_val, bnew = b_val;
    std::vector<Mat> Hnew;
    double trial = step;
    while (trial >= 1e-18) {
      Hnew = H;
      for (int i = 0; i < alg.blocks(); ++i) {
        Hnew[static_cast<size_t>(i)] -= trial * grad[static_cast<size_t>(i)];
      }
      auto [a2, b2] = objective(Hnew);
      if (a2 * b2 < f) {
        accepted = true;
        fnew = a2 * b2;
        anew = a2;
        bnew = b2;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) break;
    double rel = (f - fnew) / std::max(f, 1e-300);
    h_prev = H;
    g_prev = std::move(grad);
    H = std::move(Hnew);
    f = fnew;
    a_val = anew;
    b_val = bnew;
    flat = rel < 1e-14 ? flat + 1 : 0;
    if (flat >= 5) break;
  }
  std::vector<Mat> xb;
  for (int i = 0; i < alg.blocks(); ++i) {
    EighResult e = eigh(H[static_cast<size_t>(i)], tol);
    xb.push_back(expm_hermitian(e, 1.0));
  }
  out.argmin = AlgElement(alg, std::move(xb));
  out.value = std::sqrt(std::max(0.0, f));
  out.iterations = it;
  return out;
}

PositiveForm rho_perp(const PositiveForm& nu, const PositiveForm& rho,
                      const TolerancePolicy& tol) {
  require_same_algebra(nu.algebra, rho.algebra);
  std::vector<Mat> dens;
  for (size_t i = 0; i < rho.densities.size(); ++i) {
    const int n = static_cast<int>(rho.densities[i].rows());
    // The projection s(c) - supp(sqrt(c) a sqrt(c)) is computed inside the
    // range of sqrt(c), working on square-root scale throughout: rank
    // decisions on the factors sqrt(c) and sqrt(c)|s(a) stay resolvable long
    // after those of c and sqrt(c) a sqrt(c) have collapsed, and the density
    // L L* below is PSD by construction with no cancellation in its trace.
    // Deliberately not sqrt_psd(a): a spectral square root of an exactly
    // singular matrix turns O(eps) eigenvalue noise into O(sqrt(eps))
    // directions, which would inflate the rank of the cross factor.
    EighResult ec = eigh(rho.densities[i], tol);
    RealVec sig_c = ec.values.cwiseMax(0.0).cwiseSqrt();  // ascending
    const double cut = tol.cutoff(sig_c(n - 1));
    int r = 0;
    while (r < n && sig_c(n - 1 - r) > cut) ++r;
    if (r == 0) {
      dens.push_back(Mat::Zero(n, n));
      continue;
    }
    Mat uc = ec.vectors.rightCols(r);          // basis of range(c)
    RealVec w = sig_c.tail(r);                 // matching sqrt eigenvalues
    SvdResult s_a = svd(nu.densities[i], tol);
    const int k = s_a.rank;
    if (k == 0) {
      // nothing to stay orthogonal to: the perp is rho on its range
      Mat core = w.cwiseAbs2().asDiagonal();
      dens.push_back(uc * core * uc.adjoint());
      continue;
    }
    Mat fa = s_a.u.leftCols(k);                // basis of supp(a)
    // The cross factor Uc* sqrt(c) s(a) = D B splits into the exact diagonal
    // D = diag(w) and the well-conditioned B = Uc* Fa (singular values <= 1).
    // Since D is invertible on the retained range, null((DB)*) = D^{-1}
    // null(B*), so both the rank decision and the kernel are taken on B:
    // working on the scaled factor directly would inflate the kernel error
    // by cond(D), which at square-root scale ruins the trace of the result
    // long before the ranks collapse.
    Mat b = uc.adjoint() * fa;                 // r x k
    Eigen::JacobiSVD<Mat> s_b(b, Eigen::ComputeFullU);
    const int q = numerical_rank(s_b.singularValues(), tol);
    if (q >= r) {
      dens.push_back(Mat::Zero(n, n));
      continue;
    }
    Mat kb = s_b.matrixU().rightCols(r - q);   // orthonormal left-null of B
    // density = sqrt(c) P sqrt(c) with P the projection onto D^{-1} span(kb):
    // orthonormalize Z = D^{-1} K by SVD (full column rank since D is
    // invertible), then D Q Q* D <= D^2 holds by construction and no
    // ill-conditioned Gram matrix is ever inverted.
    Mat z = w.cwiseInverse().asDiagonal() * kb;
    Eigen::JacobiSVD<Mat> s_z(z, Eigen::ComputeThinU);
    Mat qb = s_z.matrixU().leftCols(r - q);
    Mat L = uc * (w.asDiagonal() * qb);
    dens.push_back(L * L.adjoint());
  }
  return PositiveForm(nu.algebra, std::move(dens), tol);
}

MinimalPairReport minimal_pair(const PositiveForm& nu, const PositiveForm& rho,
                               const TolerancePolicy& tol) {
  MinimalPairReport r;
  r.rho_perp = rho_perp(nu, rho, tol);
  r.nu_perp = rho_perp(rho, nu, tol);
  std::vector<Mat> nm, rm;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    nm.push_back(clip_psd(Mat(nu.densities[i] - r.nu_perp.densities[i]), tol));
    rm.push_back(clip_psd(Mat(rho.densities[i] - r.rho_perp.densities[i]), tol));
  }
  r.nu_min = PositiveForm(nu.algebra, std::move(nm), tol);
  r.rho_min = PositiveForm(nu.algebra, std::move(rm), tol);
  return r;
}

HSVector optimal_vector_seeded(const StandardForm& std_form,
                               const PositiveForm& nu, const PositiveForm& rho,
                               const HSVector& psi_seed,
                               const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, nu.algebra);
  require_same_algebra(nu.algebra, rho.algebra);
  HSVector xi_nu = cone_rep(std_form, nu, tol);
  HSVector xi_perp = cone_rep(std_form, rho_perp(nu, rho, tol), tol);
  std::vector<Mat> b;
  for (size_t i = 0; i < psi_seed.blocks.size(); ++i) {
    Mat m = xi_nu.blocks[i].adjoint() * psi_seed.blocks[i];
    PolarResult p = polar_left(m, tol);
    b.push_back(psi_seed.blocks[i] * p.isometry.adjoint() + xi_perp.blocks[i]);
  }
  return HSVector(nu.algebra, std::move(b));
}

HSVector optimal_vector(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho, const TolerancePolicy& tol) {
  return optimal_vector_seeded(std_form, nu, rho, cone_rep(std_form, rho, tol),
                               tol);
}

AlgElement g_functional(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho, const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, nu.algebra);
  require_same_algebra(nu.algebra, rho.algebra);
  std::vector<Mat> g;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    Mat sa = sqrt_psd(nu.densities[i], tol);
    Mat sc = sqrt_psd(rho.densities[i], tol);
    PolarResult p = polar_left(Mat(sa * sc), tol);
    g.push_back(sc * p.isometry.adjoint() * sa);
  }
  return AlgElement(nu.algebra, std::move(g));
}

bool commutes(const StandardForm& std_form, const PositiveForm& nu,
              const PositiveForm& rho, const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, nu.algebra);
  require_same_algebra(nu.algebra, rho.algebra);

  HSVector xi_nu = cone_rep(std_form, nu, tol);
  HSVector xi_rho = cone_rep(std_form, rho, tol);
  HSVector psi0 = optimal_vector(std_form, nu, rho, tol);

  bool by_vector = (psi0 - xi_rho).norm() <= 1e-8;

  double an = 0.0, cn = 0.0, comm = 0.0;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    an += nu.densities[i].squaredNorm();
    cn += rho.densities[i].squaredNorm();
  }
  an = std::sqrt(an);
  cn = std::sqrt(cn);
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    Mat k = nu.densities[i] * rho.densities[i] -
            rho.densities[i] * nu.densities[i];
    comm = std::max(comm, fro(k));
  }
  bool by_commutator = comm <= std::max(1e-10 * an * cn, 1e-14);

  BuresReport rep = bures_distance(nu, rho, tol);
  bool by_distance =
      std::abs(rep.distance - (xi_nu - xi_rho).norm()) <= 1e-8;

  if (by_vector != by_commutator || by_commutator != by_distance) {
    throw InconsistentCriteria(
        "commutation tests disagree (vector/commutator/distance = " +
        std::to_string(by_vector) + "/" + std::to_string(by_commutator) + "/" +
        std::to_string(by_distance) + ")");
  }
  return by_commutator;
}

double skew_information(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho, const TolerancePolicy& tol) {
  HSVector psi = optimal_vector(std_form, rho, nu, tol);
  HSVector diff = std_form.J(psi) - psi;
  double j = 0.5 * diff.norm() * diff.norm();
  return j;
}

HSVector conjugated_form_vector(const StandardForm& std_form,
                                const PositiveForm& rho, const AlgElement& x,
                                const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, rho.algebra);
  if (!rho.is_faithful(tol)) {
    throw NotFaithful("conjugated_form_vector requires faithful rho");
  }
  return left_act(x, cone_rep(std_form, rho, tol));
}

}  // namespace bures
