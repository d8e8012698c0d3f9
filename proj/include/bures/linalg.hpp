#ifndef BURES_LINALG_HPP
#define BURES_LINALG_HPP

// Dense complex-matrix primitives with a uniform tolerance policy.  Every
// higher layer builds exclusively on these; nothing here knows about
// algebras, forms or vectors.

#include "bures/types.hpp"

namespace bures {

struct EighResult {
  RealVec values;  // ascending
  Mat vectors;     // columns are eigenvectors
};

struct SvdResult {
  Mat u;          // thin left factor
  RealVec sigma;  // descending, all retained values (including tiny ones)
  Mat v;          // thin right factor, A = u * sigma.asDiagonal() * v.adjoint()
  int rank;       // numerical rank under the policy
};

struct PolarResult {
  Mat isometry;  // V, support-restricted: V*V = supp(absA), never padded
  Mat abs;       // (A*A)^{1/2}
};

double fro(const Mat& a);

// Throws NonHermitianInput when ||H - H*|| exceeds the policy window.
EighResult eigh(const Mat& h, const TolerancePolicy& tol = {});

SvdResult svd(const Mat& a, const TolerancePolicy& tol = {});

int numerical_rank(const RealVec& sigma, const TolerancePolicy& tol = {});

// Throws NotPositive when an eigenvalue falls below -cutoff; smaller
// negatives are clipped to zero.
Mat sqrt_psd(const Mat& a, const TolerancePolicy& tol = {});

// Clip a nearly-PSD Hermitian matrix onto the PSD cone (same window).
Mat clip_psd(const Mat& a, const TolerancePolicy& tol = {});

PolarResult polar_left(const Mat& a, const TolerancePolicy& tol = {});

enum class Side { left, right };
Mat support_proj(const Mat& a, Side side, const TolerancePolicy& tol = {});

Mat pinv(const Mat& a, const TolerancePolicy& tol = {});

// Real powers of a PSD matrix on its support (pseudo-inverse convention for
// negative exponents).
Mat psd_power(const Mat& a, double p, const TolerancePolicy& tol = {});

// H^{it} for PSD H: unitary on the support of H, identity elsewhere.
Mat power_it(const Mat& h, double t, const TolerancePolicy& tol = {});

double nuclear_norm(const Mat& a);

bool is_projection(const Mat& p, double tol = 1e-8);

// Orthonormal basis of the range of a Hermitian projection (n x rank).
Mat proj_basis(const Mat& p, const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_LINALG_HPP
