#ifndef TESTS_ORACLES_HPP
#define TESTS_ORACLES_HPP

// Shared helpers for the test layer.  The fidelity oracle here is
// deliberately independent of the library's nuclear-norm route: it
// maximizes the overlap of two implementing vectors over per-block
// unitaries by Riemannian gradient ascent with random restarts, touching
// nothing but matrix exponentials of Hermitian generators.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bures/bures.hpp"
#include "bures/fibre.hpp"
#include "bures/rng.hpp"

namespace testo {

using namespace bures;

inline Mat expm_herm_i(const Mat& b, double s) {
  // exp(i s B) for Hermitian B
  EighResult e = eigh(Mat(0.5 * (b + b.adjoint())));
  Eigen::VectorXcd d(e.values.size());
  for (int i = 0; i < e.values.size(); ++i) {
    d(i) = std::exp(cplx(0.0, s * e.values(i)));
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

// sup over unitary W of Re tr(M W), reached at the polar factor with value
// nuclear_norm(M); computed here by ascent only, as an independent oracle.
inline double ascent_sup(const Mat& m, Rng& rng, int restarts = 3,
                         int iters = 3000) {
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.norm() == 0.0) return 0.0;
  const double scale = std::max(1.0, m.norm());
  double best = 0.0;
  for (int r = 0; r <= restarts; ++r) {
    Mat w = (r == 0) ? Mat(Mat::Identity(n, n)) : haar_unitary(n, rng);
    double f = (m * w).trace().real();
    double step = 1.0 / scale;
    Mat b_prev;
    double step_prev = 0.0;
    for (int it = 0; it < iters; ++it) {
      Mat x = m * w;
      // ascent direction: anti-Hermitian part of X*, written as i B
      Mat b = (x.adjoint() - x) / cplx(0.0, 2.0);
      b = 0.5 * (b + b.adjoint());
      double gn2 = b.squaredNorm();
      if (gn2 < 1e-28 * scale * scale) break;
      // Barzilai-Borwein step from the last accepted move, to cope with
      // the ill-conditioning of nearly rank-deficient m
      if (step_prev > 0.0) {
        double sy = step_prev * (b_prev.squaredNorm() -
                                 (b_prev.adjoint() * b).trace().real());
        double ss = step_prev * step_prev * b_prev.squaredNorm();
        if (sy > 1e-300) step = ss / sy;
      }
      step = std::min(std::max(step, 1e-12 / scale), 1e6 / scale);
      bool moved = false;
      double s = step;
      for (int back = 0; back < 60; ++back) {
        Mat wt = w * expm_herm_i(b, s);
        double ft = (m * wt).trace().real();
        if (ft > f) {
          w = std::move(wt);
          f = ft;
          step_prev = s;
          b_prev = std::move(b);
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (!moved) break;
    }
    best = std::max(best, f);
  }
  return best;
}

// sup over implementing vectors psi of nu and phi of rho of |<psi, phi>|,
// via per-block ascent on sqrt(c) sqrt(a) (= phi* psi up to the unitary).
inline double fidelity_oracle(const PositiveForm& nu, const PositiveForm& rho,
                              Rng& rng, const TolerancePolicy& tol = {}) {
  double s = 0.0;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    Mat m = sqrt_psd(rho.densities[i], tol) * sqrt_psd(nu.densities[i], tol);
    s += ascent_sup(m, rng);
  }
  return s;
}

// min over fibre(rho) of ||chi - phi||, via ascent on Re <phi, chi>.
inline double fibre_distance_oracle(const HSVector& chi,
                                    const PositiveForm& rho, Rng& rng,
                                    const TolerancePolicy& tol = {}) {
  double align = 0.0;
  for (size_t i = 0; i < chi.blocks.size(); ++i) {
    Mat m = chi.blocks[i].adjoint() * sqrt_psd(rho.densities[i], tol);
    align += ascent_sup(m, rng);
  }
  double d2 = chi.norm() * chi.norm() + rho.norm1() - 2.0 * align;
  return std::sqrt(std::max(0.0, d2));
}

inline double lambda_min(const Mat& h, const TolerancePolicy& tol = {}) {
  return eigh(Mat(0.5 * (h + h.adjoint())), tol).values.minCoeff();
}

inline HSVector random_invertible_omega(const Algebra& alg, Rng& rng,
                                        bool psd) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) {
    int n = alg.dim(i);
    if (psd) {
      b.push_back(Mat(random_psd(n, n, rng) + 0.05 * Mat::Identity(n, n)));
    } else {
      SvdResult s = svd(ginibre(n, n, rng));
      RealVec sig = s.sigma.cwiseMax(0.1 * (s.sigma(0) + 1.0));
      b.push_back(Mat(s.u * sig.asDiagonal() * s.v.adjoint()));
    }
  }
  return HSVector(alg, std::move(b));
}

// faithful rho and a (possibly rank-deficient) commuting nu
inline std::pair<PositiveForm, PositiveForm> commuting_pair(
    const Algebra& alg, Rng& rng, const TolerancePolicy& tol = {}) {
  std::vector<Mat> cs, as;
  for (int i = 0; i < alg.blocks(); ++i) {
    int n = alg.dim(i);
    Mat c = random_psd(n, n, rng) + 0.05 * Mat::Identity(n, n);
    c /= c.trace().real();
    EighResult e = eigh(c, tol);
    RealVec d(n);
    for (int k = 0; k < n; ++k) {
      double lam = e.values(k);
      d(k) = (k + 1 < n && rng() % 4 == 0) ? 0.0 : lam + lam * lam;
    }
    Mat a = e.vectors * d.asDiagonal() * e.vectors.adjoint();
    cs.push_back(std::move(c));
    as.push_back(std::move(a));
  }
  return {PositiveForm(alg, std::move(as), tol),
          PositiveForm(alg, std::move(cs), tol)};
}

inline Mat diag_real(std::initializer_list<double> d) {
  const int n = static_cast<int>(d.size());
  Mat m = Mat::Zero(n, n);
  int i = 0;
  for (double v : d) m(i, i) = cplx(v, 0.0), ++i;
  return m;
}

}  // namespace testo

#endif  // TESTS_ORACLES_HPP
