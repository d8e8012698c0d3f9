#include "bures/standard_form.hpp"

#include <cmath>

namespace bures {

namespace {

void require_shapes(const Algebra& alg, const std::vector<Mat>& blocks) {
  if (static_cast<int>(blocks.size()) != alg.blocks()) {
    throw AlgebraMismatch("HSVector: block count mismatch");
  }
  for (int i = 0; i < alg.blocks(); ++i) {
    const Mat& b = blocks[static_cast<size_t>(i)];
    if (b.rows() != alg.dim(i) || b.cols() != alg.dim(i)) {
      throw AlgebraMismatch("HSVector: block shape mismatch");
    }
    if (!b.allFinite()) throw DomainError("HSVector: non-finite entries");
  }
}

}  // namespace

HSVector::HSVector(Algebra alg, std::vector<Mat> b)
    : algebra(std::move(alg)), blocks(std::move(b)) {
  require_shapes(algebra, blocks);
}

HSVector HSVector::zero(const Algebra& alg) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) {
    b.push_back(Mat::Zero(alg.dim(i), alg.dim(i)));
  }
  return HSVector(alg, std::move(b));
}

double HSVector::norm() const {
  double s = 0.0;
  for (const Mat& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

HSVector& HSVector::operator+=(const HSVector& o) {
  require_same_algebra(algebra, o.algebra);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] += o.blocks[i];
  return *this;
}

HSVector& HSVector::operator-=(const HSVector& o) {
  require_same_algebra(algebra, o.algebra);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] -= o.blocks[i];
  return *this;
}

HSVector operator+(HSVector a, const HSVector& b) { return a += b; }
HSVector operator-(HSVector a, const HSVector& b) { return a -= b; }

HSVector operator*(cplx s, HSVector a) {
  for (Mat& b : a.blocks) b *= s;
  return a;
}

cplx hs_inner(const HSVector& xi, const HSVector& eta) {
  require_same_algebra(xi.algebra, eta.algebra);
  cplx v = 0.0;
  for (size_t i = 0; i < xi.blocks.size(); ++i) {
    v += (eta.blocks[i].adjoint() * xi.blocks[i]).trace();
  }
  return v;
}

HSVector left_act(const AlgElement& x, const HSVector& xi) {
  require_same_algebra(x.algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = x.blocks[i] * xi.blocks[i];
  }
  return r;
}

HSVector right_act(const AlgElement& y, const HSVector& xi) {
  require_same_algebra(y.algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = xi.blocks[i] * y.blocks[i];
  }
  return r;
}

PositiveForm form_of(const HSVector& psi, const TolerancePolicy& tol) {
  std::vector<Mat> dens;
  for (const Mat& b : psi.blocks) dens.push_back(b * b.adjoint());
  return PositiveForm(psi.algebra, std::move(dens), tol);
}

bool fibre_contains(const HSVector& psi, const PositiveForm& nu) {
  require_same_algebra(psi.algebra, nu.algebra);
  double scale = 1.0;
  for (const Mat& d : nu.densities) scale = std::max(scale, fro(d));
  for (size_t i = 0; i < psi.blocks.size(); ++i) {
    Mat diff = psi.blocks[i] * psi.blocks[i].adjoint() - nu.densities[i];
    if (fro(diff) > 1e-9 * scale) return false;
  }
  return true;
}

HSVector fibre_sample(const PositiveForm& nu, uint64_t seed,
                      const TolerancePolicy& tol) {
  Rng rng(seed);
  return fibre_sample(nu, rng, tol);
}

HSVector fibre_sample(const PositiveForm& nu, Rng& rng,
                      const TolerancePolicy& tol) {
  std::vector<Mat> b;
  for (const Mat& d : nu.densities) {
    Mat w = haar_unitary(static_cast<int>(d.rows()), rng);
    b.push_back(sqrt_psd(d, tol) * w);
  }
  return HSVector(nu.algebra, std::move(b));
}

AlgElement support_left(const HSVector& chi, const TolerancePolicy& tol) {
  std::vector<Mat> b;
  for (const Mat& m : chi.blocks) b.push_back(support_proj(m, Side::left, tol));
  return AlgElement(chi.algebra, std::move(b));
}

AlgElement support_right(const HSVector& chi, const TolerancePolicy& tol) {
  std::vector<Mat> b;
  for (const Mat& m : chi.blocks) b.push_back(support_proj(m, Side::right, tol));
  return AlgElement(chi.algebra, std::move(b));
}

StandardForm::StandardForm(Algebra alg, HSVector om, const TolerancePolicy& tol)
    : algebra(std::move(alg)), omega(std::move(om)) {
  require_same_algebra(algebra, omega.algebra);
  for (int i = 0; i < algebra.blocks(); ++i) {
    const Mat& w = omega.blocks[static_cast<size_t>(i)];
    SvdResult s = svd(w, tol);
    if (s.rank < algebra.dim(i)) {
      throw SingularOmega("omega block " + std::to_string(i) +
                          " is numerically singular");
    }
    Mat ww_i = w * w.adjoint();
    Mat wtw_i = w.adjoint() * w;
    ww.push_back(ww_i);
    wtw.push_back(wtw_i);
    ww_inv.push_back(pinv(ww_i, tol));
    wtw_inv.push_back(pinv(wtw_i, tol));
    omega_inv.push_back(pinv(w, tol));
    u.push_back(psd_power(ww_i, -0.5, tol) * w);
  }
}

StandardForm StandardForm::tracial(const Algebra& alg,
                                   const TolerancePolicy& tol) {
  double total = 0.0;
  for (int i = 0; i < alg.blocks(); ++i) total += alg.dim(i);
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) {
    b.push_back(Mat::Identity(alg.dim(i), alg.dim(i)) / std::sqrt(total));
  }
  return StandardForm(alg, HSVector(alg, std::move(b)), tol);
}

bool StandardForm::omega_is_psd(const TolerancePolicy& tol) const {
  for (const Mat& w : omega.blocks) {
    if (fro(Mat(w - w.adjoint())) > tol.cutoff(fro(w))) return false;
    EighResult e = eigh(Mat(0.5 * (w + w.adjoint())), tol);
    if (e.values.minCoeff() < -tol.cutoff(e.values.cwiseAbs().maxCoeff())) {
      return false;
    }
  }
  return true;
}

HSVector StandardForm::S(const HSVector& xi) const {
  require_same_algebra(algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = omega_inv[i].adjoint() * xi.blocks[i].adjoint() *
                  omega.blocks[i];
  }
  return r;
}

HSVector StandardForm::F(const HSVector& xi) const {
  require_same_algebra(algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = omega.blocks[i] * xi.blocks[i].adjoint() *
                  omega_inv[i].adjoint();
  }
  return r;
}

HSVector StandardForm::Delta(const HSVector& xi) const {
  require_same_algebra(algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = ww[i] * xi.blocks[i] * wtw_inv[i];
  }
  return r;
}

HSVector StandardForm::DeltaIt(const HSVector& xi, double t) const {
  require_same_algebra(algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = power_it(ww[i], t) * xi.blocks[i] * power_it(wtw[i], -t);
  }
  return r;
}

HSVector StandardForm::J(const HSVector& xi) const {
  require_same_algebra(algebra, xi.algebra);
  HSVector r = xi;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = u[i] * xi.blocks[i].adjoint() * u[i];
  }
  return r;
}

HSVector cone_rep(const StandardForm& std_form, const PositiveForm& nu,
                  const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, nu.algebra);
  std::vector<Mat> b;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    b.push_back(sqrt_psd(nu.densities[i], tol) * std_form.u[i]);
  }
  return HSVector(nu.algebra, std::move(b));
}

bool cone_contains(const StandardForm& std_form, const HSVector& xi,
                   const TolerancePolicy& tol) {
  require_same_algebra(std_form.algebra, xi.algebra);
  for (size_t i = 0; i < xi.blocks.size(); ++i) {
    Mat m = xi.blocks[i] * std_form.u[i].adjoint();
    if (fro(Mat(m - m.adjoint())) > 1e-8 * std::max(1.0, fro(m))) return false;
    EighResult e = eigh(Mat(0.5 * (m + m.adjoint())), tol);
    double top = e.values.cwiseAbs().maxCoeff();
    if (e.values.minCoeff() < -std::max(tol.cutoff(top), 1e-10)) return false;
  }
  return true;
}

AlgElement cone_unitary(const StandardForm& std_form, const HSVector& omega_prime,
                        const TolerancePolicy& tol) {
  if (!std_form.omega_is_psd(tol)) {
    throw SingularOmega("cone_unitary requires PSD base omega");
  }
  StandardForm prime(std_form.algebra, omega_prime, tol);
  std::vector<Mat> b = prime.u;  // (Om' Om'*)^{-1/2} Om', right-acting
  return AlgElement(std_form.algebra, std::move(b));
}

}  // namespace bures
