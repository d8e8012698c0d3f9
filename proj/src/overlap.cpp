#include "bures/overlap.hpp"

namespace bures {

OverlapForm build_overlap(const HSVector& psi, const HSVector& phi,
                          const TolerancePolicy& tol) {
  require_same_algebra(psi.algebra, phi.algebra);
  const Algebra& alg = psi.algebra;
  std::vector<Mat> m, v, abs, sh;
  for (size_t i = 0; i < psi.blocks.size(); ++i) {
    Mat mi = phi.blocks[i].adjoint() * psi.blocks[i];
    PolarResult p = polar_left(mi, tol);
    m.push_back(mi);
    v.push_back(p.isometry);
    // (m m*)^{1/2} via the polar data keeps abs and s_h rank-consistent
    abs.push_back(p.isometry * p.abs * p.isometry.adjoint());
    sh.push_back(p.isometry * p.isometry.adjoint());
  }
  OverlapForm h;
  h.m = AlgElement(alg, std::move(m));
  h.v = AlgElement(alg, std::move(v));
  h.abs_density = PositiveForm(alg, std::move(abs), tol);
  h.s_h = AlgElement(alg, std::move(sh));
  return h;
}

cplx overlap_eval(const OverlapForm& h, const AlgElement& y) {
  require_same_algebra(h.m.algebra, y.algebra);
  cplx val = 0.0;
  for (size_t i = 0; i < y.blocks.size(); ++i) {
    val += (h.m.blocks[i] * y.blocks[i]).trace();
  }
  return val;
}

double functional_norm(const OverlapForm& h) {
  double s = 0.0;
  for (const Mat& mi : h.m.blocks) s += nuclear_norm(mi);
  return s;
}

bool is_positive(const OverlapForm& h, const TolerancePolicy& tol) {
  bool psd = true;
  for (const Mat& mi : h.m.blocks) {
    double scale = std::max(1.0, fro(mi));
    if (fro(Mat(mi - mi.adjoint())) > 1e-9 * scale) {
      psd = false;
      break;
    }
    EighResult e = eigh(Mat(0.5 * (mi + mi.adjoint())), tol);
    if (e.values.minCoeff() < -1e-9 * scale) {
      psd = false;
      break;
    }
  }
  return psd;
}

}  // namespace bures
