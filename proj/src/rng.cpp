#include "bures/rng.hpp"

#include <Eigen/QR>
#include <algorithm>

namespace bures {

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double re = g(rng);
      double im = g(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

Mat random_hermitian(int n, Rng& rng) {
  Mat g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

Mat haar_unitary(int n, Rng& rng) {
  Mat g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    double a = std::abs(d);
    q.col(i) *= (a > 0 ? d / a : cplx(1.0, 0.0));
  }
  return q;
}

Mat random_psd(int n, int rank, Rng& rng) {
  rank = std::clamp(rank, 0, n);
  if (rank == 0) return Mat::Zero(n, n);
  Mat g = ginibre(n, rank, rng);
  return g * g.adjoint();
}

Mat random_projection(int n, int rank, Rng& rng) {
  rank = std::clamp(rank, 0, n);
  if (rank == 0) return Mat::Zero(n, n);
  Mat u = haar_unitary(n, rng);
  Mat b = u.leftCols(rank);
  return b * b.adjoint();
}

Mat random_partial_isometry_with_final(const Mat& final_proj, Rng& rng,
                                       const TolerancePolicy& tol) {
  const int n = static_cast<int>(final_proj.rows());
  Mat basis = proj_basis(final_proj, tol);
  const int k = static_cast<int>(basis.cols());
  if (k == 0) return Mat::Zero(n, n);
  // rows of C* are orthonormal: take k columns of a Haar unitary
  Mat u = haar_unitary(n, rng);
  Mat c = u.leftCols(k);           // n x k, orthonormal columns
  return basis * c.adjoint();      // W W* = basis basis* = final_proj
}

PositiveForm random_form(const Algebra& alg, Rng& rng, bool full_rank,
                         const TolerancePolicy& tol) {
  std::vector<Mat> dens;
  for (int i = 0; i < alg.blocks(); ++i) {
    int n = alg.dim(i);
    int rank = n;
    if (!full_rank && n > 1) {
      rank = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
    }
    Mat d = random_psd(n, rank, rng);
    d /= std::max(1.0, d.trace().real());
    dens.push_back(d);
  }
  return PositiveForm(alg, std::move(dens), tol);
}

PositiveForm random_form_ranks(const Algebra& alg, const std::vector<int>& ranks,
                               Rng& rng, const TolerancePolicy& tol) {
  std::vector<Mat> dens;
  for (int i = 0; i < alg.blocks(); ++i) {
    Mat d = random_psd(alg.dim(i), ranks[static_cast<size_t>(i)], rng);
    double tr = d.trace().real();
    if (tr > 1.0) d /= tr;
    dens.push_back(d);
  }
  return PositiveForm(alg, std::move(dens), tol);
}

AlgElement random_element(const Algebra& alg, Rng& rng) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) b.push_back(ginibre(alg.dim(i), alg.dim(i), rng));
  return AlgElement(alg, std::move(b));
}

AlgElement random_unitary_element(const Algebra& alg, Rng& rng) {
  std::vector<Mat> b;
  for (int i = 0; i < alg.blocks(); ++i) b.push_back(haar_unitary(alg.dim(i), rng));
  return AlgElement(alg, std::move(b));
}

}  // namespace bures
