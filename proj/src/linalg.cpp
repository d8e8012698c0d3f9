#include "bures/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace bures {

double fro(const Mat& a) { return a.norm(); }

EighResult eigh(const Mat& h, const TolerancePolicy& tol) {
  const double scale = fro(h);
  const double herm_err = fro(Mat(h - h.adjoint()));
  if (herm_err > tol.cutoff(scale)) {
    throw NonHermitianInput("||H - H*|| = " + std::to_string(herm_err));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (h + h.adjoint())));
  if (es.info() != Eigen::Success) {
    throw InternalInconsistency("eigensolver failed to converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

SvdResult svd(const Mat& a, const TolerancePolicy& tol) {
  Eigen::JacobiSVD<Mat> s(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult r{s.matrixU(), s.singularValues(), s.matrixV(), 0};
  r.rank = numerical_rank(r.sigma, tol);
  return r;
}

int numerical_rank(const RealVec& sigma, const TolerancePolicy& tol) {
  if (sigma.size() == 0) return 0;
  const double cut = tol.cutoff(sigma(0));
  int r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

Mat sqrt_psd(const Mat& a, const TolerancePolicy& tol) {
  EighResult e = eigh(a, tol);
  const int n = static_cast<int>(e.values.size());
  if (n == 0) return a;
  const double top = e.values.cwiseAbs().maxCoeff();
  const double cut = tol.cutoff(top);
  RealVec d(n);
  for (int i = 0; i < n; ++i) {
    double lam = e.values(i);
    if (lam < -cut) {
      throw NotPositive("eigenvalue " + std::to_string(lam) +
                        " below -" + std::to_string(cut));
    }
    // eigenvalues inside the clipping window are treated as exact zeros;
    // keeping them would turn O(eps) noise into O(sqrt(eps)) directions
    d(i) = lam > cut ? std::sqrt(lam) : 0.0;
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

Mat clip_psd(const Mat& a, const TolerancePolicy& tol) {
  EighResult e = eigh(a, tol);
  RealVec d = e.values.cwiseMax(0.0);
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

PolarResult polar_left(const Mat& a, const TolerancePolicy& tol) {
  SvdResult s = svd(a, tol);
  const int r = s.rank;
  Mat ur = s.u.leftCols(r);
  Mat vr = s.v.leftCols(r);
  PolarResult out;
  out.isometry = ur * vr.adjoint();
  out.abs = vr * s.sigma.head(r).asDiagonal() * vr.adjoint();
  return out;
}

Mat support_proj(const Mat& a, Side side, const TolerancePolicy& tol) {
  SvdResult s = svd(a, tol);
  const int r = s.rank;
  if (side == Side::left) {
    Mat ur = s.u.leftCols(r);
    return ur * ur.adjoint();
  }
  Mat vr = s.v.leftCols(r);
  return vr * vr.adjoint();
}

Mat pinv(const Mat& a, const TolerancePolicy& tol) {
  SvdResult s = svd(a, tol);
  const int r = s.rank;
  RealVec inv = s.sigma.head(r).cwiseInverse();
  return s.v.leftCols(r) * inv.asDiagonal() * s.u.leftCols(r).adjoint();
}

Mat psd_power(const Mat& a, double p, const TolerancePolicy& tol) {
  EighResult e = eigh(a, tol);
  const int n = static_cast<int>(e.values.size());
  if (n == 0) return a;
  const double top = e.values.cwiseAbs().maxCoeff();
  const double cut = tol.cutoff(top);
  RealVec d(n);
  for (int i = 0; i < n; ++i) {
    double lam = e.values(i);
    d(i) = lam > cut ? std::pow(lam, p) : 0.0;
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

Mat power_it(const Mat& h, double t, const TolerancePolicy& tol) {
  EighResult e = eigh(h, tol);
  const int n = static_cast<int>(e.values.size());
  if (n == 0) return h;
  const double top = e.values.cwiseAbs().maxCoeff();
  const double cut = tol.cutoff(top);
  Eigen::VectorXcd d(n);
  for (int i = 0; i < n; ++i) {
    double lam = e.values(i);
    d(i) = lam > cut ? std::exp(cplx(0.0, t * std::log(lam))) : cplx(1.0, 0.0);
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

double nuclear_norm(const Mat& a) {
  Eigen::JacobiSVD<Mat> s(a);
  return s.singularValues().sum();
}

bool is_projection(const Mat& p, double tol) {
  if (p.rows() != p.cols()) return false;
  double scale = std::max(1.0, fro(p));
  return fro(Mat(p - p.adjoint())) <= tol * scale &&
         fro(Mat(p * p - p)) <= tol * scale;
}

Mat proj_basis(const Mat& p, const TolerancePolicy& tol) {
  SvdResult s = svd(p, tol);
  return s.u.leftCols(s.rank);
}

}  // namespace bures
