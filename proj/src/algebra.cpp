#include "bures/algebra.hpp"

#include <cmath>

namespace bures {

namespace {

void require_shapes(const Algebra& alg, const std::vector<Mat>& blocks,
                    const char* what) {
  if (static_cast<int>(blocks.size()) != alg.blocks()) {
    throw AlgebraMismatch(std::string(what) + ": block count mismatch");
  }
  for (int i = 0; i < alg.blocks(); ++i) {
    const Mat& b = blocks[static_cast<size_t>(i)];
    if (b.rows() != alg.dim(i) || b.cols() != alg.dim(i)) {
      throw AlgebraMismatch(std::string(what) + ": block shape mismatch");
    }
    if (!b.allFinite()) {
      throw DomainError(std::string(what) + ": non-finite entries");
    }
  }
}

}  // namespace

Algebra::Algebra(std::vector<int> dims) : block_dims(std::move(dims)) {
  if (block_dims.empty()) throw DomainError("algebra needs >= 1 block");
  for (int n : block_dims) {
    if (n < 1) throw DomainError("block dimension must be >= 1");
  }
}

AlgElement::AlgElement(Algebra alg, std::vector<Mat> b)
    : algebra(std::move(alg)), blocks(std::move(b)) {
  require_shapes(algebra, blocks, "AlgElement");
}

AlgElement AlgElement::identity(const Algebra& alg) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) {
    b.push_back(Mat::Identity(alg.dim(i), alg.dim(i)));
  }
  return AlgElement(alg, std::move(b));
}

AlgElement AlgElement::zero(const Algebra& alg) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) {
    b.push_back(Mat::Zero(alg.dim(i), alg.dim(i)));
  }
  return AlgElement(alg, std::move(b));
}

AlgElement AlgElement::adjoint() const {
  AlgElement r = *this;
  for (Mat& b : r.blocks) b = b.adjoint().eval();
  return r;
}

double AlgElement::norm() const {
  double s = 0.0;
  for (const Mat& b : blocks) s += b.squaredNorm();
  return std::sqrt(s);
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  require_same_algebra(algebra, o.algebra);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] += o.blocks[i];
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  require_same_algebra(algebra, o.algebra);
  for (size_t i = 0; i < blocks.size(); ++i) blocks[i] -= o.blocks[i];
  return *this;
}

AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  require_same_algebra(a.algebra, b.algebra);
  AlgElement r = a;
  for (size_t i = 0; i < r.blocks.size(); ++i) {
    r.blocks[i] = a.blocks[i] * b.blocks[i];
  }
  return r;
}

AlgElement operator*(cplx s, AlgElement a) {
  for (Mat& b : a.blocks) b *= s;
  return a;
}

void require_same_algebra(const Algebra& a, const Algebra& b) {
  if (!(a == b)) throw AlgebraMismatch("different block structures");
}

PositiveForm::PositiveForm(Algebra alg, std::vector<Mat> dens,
                           const TolerancePolicy& tol)
    : algebra(std::move(alg)), densities(std::move(dens)) {
  require_shapes(algebra, densities, "PositiveForm");
  for (Mat& d : densities) {
    // PSD-within-tolerance check with negative eigenvalues clipped to zero.
    // Small positive eigenvalues are kept untouched: densities may carry a
    // spectrum spanning many orders of magnitude on purpose.
    EighResult e = eigh(d, tol);
    const double top =
        e.values.size() > 0 ? e.values.cwiseAbs().maxCoeff() : 0.0;
    if (e.values.size() > 0 && e.values.minCoeff() < -tol.cutoff(top)) {
      throw NotPositive("density eigenvalue " +
                        std::to_string(e.values.minCoeff()) +
                        " below the clipping window");
    }
    RealVec lam = e.values.cwiseMax(0.0);
    d = e.vectors * lam.asDiagonal() * e.vectors.adjoint();
  }
}

PositiveForm PositiveForm::zero(const Algebra& alg) {
  PositiveForm f;
  f.algebra = alg;
  for (int i = 0; i < alg.blocks(); ++i) {
    f.densities.push_back(Mat::Zero(alg.dim(i), alg.dim(i)));
  }
  return f;
}

double PositiveForm::norm1() const {
  double s = 0.0;
  for (const Mat& d : densities) s += d.trace().real();
  return s;
}

AlgElement PositiveForm::support(const TolerancePolicy& tol) const {
  std::vector<Mat> b;
  for (const Mat& d : densities) b.push_back(support_proj(d, Side::left, tol));
  return AlgElement(algebra, std::move(b));
}

bool PositiveForm::is_faithful(const TolerancePolicy& tol) const {
  for (int i = 0; i < algebra.blocks(); ++i) {
    SvdResult s = svd(densities[static_cast<size_t>(i)], tol);
    if (s.rank < algebra.dim(i)) return false;
  }
  return true;
}

cplx evaluate(const PositiveForm& nu, const AlgElement& x) {
  require_same_algebra(nu.algebra, x.algebra);
  cplx v = 0.0;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    v += (nu.densities[i] * x.blocks[i]).trace();
  }
  return v;
}

bool mvn_precedes(const AlgElement& p, const AlgElement& q,
                  const TolerancePolicy& tol) {
  require_same_algebra(p.algebra, q.algebra);
  for (size_t i = 0; i < p.blocks.size(); ++i) {
    if (!is_projection(p.blocks[i]) || !is_projection(q.blocks[i])) {
      throw NotProjection("mvn_precedes expects projections");
    }
    SvdResult sp = svd(p.blocks[i], tol);
    SvdResult sq = svd(q.blocks[i], tol);
    if (sp.rank > sq.rank) return false;
  }
  return true;
}

bool centralizer_contains(const PositiveForm& rho, const AlgElement& x,
                          const TolerancePolicy& tol) {
  require_same_algebra(rho.algebra, x.algebra);
  if (!rho.is_faithful(tol)) {
    throw NotFaithful("centralizer defined for faithful forms only");
  }
  double xn = x.norm();
  double cn = 0.0;
  for (const Mat& d : rho.densities) cn += d.squaredNorm();
  cn = std::sqrt(cn);
  for (size_t i = 0; i < x.blocks.size(); ++i) {
    const Mat& c = rho.densities[i];
    const Mat& xi = x.blocks[i];
    if (fro(Mat(xi * c - c * xi)) > 1e-10 * std::max(1.0, xn * cn)) {
      return false;
    }
  }
  return true;
}

PositiveForm conjugate_form(const PositiveForm& nu, const AlgElement& a,
                            const TolerancePolicy& tol) {
  require_same_algebra(nu.algebra, a.algebra);
  std::vector<Mat> dens;
  for (size_t i = 0; i < nu.densities.size(); ++i) {
    dens.push_back(a.blocks[i] * nu.densities[i] * a.blocks[i].adjoint());
  }
  return PositiveForm(nu.algebra, std::move(dens), tol);
}

}  // namespace bures
