#ifndef BURES_ALGEBRA_HPP
#define BURES_ALGEBRA_HPP

// M = (+)_i M_{n_i}(C): blockwise element arithmetic, positive trace forms,
// centralizer membership and Murray-von Neumann comparison of projections.

#include <vector>

#include "bures/linalg.hpp"

namespace bures {

struct Algebra {
  std::vector<int> block_dims;

  Algebra() = default;
  explicit Algebra(std::vector<int> dims);

  int blocks() const { return static_cast<int>(block_dims.size()); }
  int dim(int i) const { return block_dims[static_cast<size_t>(i)]; }
  bool operator==(const Algebra& o) const = default;
};

struct AlgElement {
  Algebra algebra;
  std::vector<Mat> blocks;

  AlgElement() = default;
  AlgElement(Algebra alg, std::vector<Mat> b);

  static AlgElement identity(const Algebra& alg);
  static AlgElement zero(const Algebra& alg);

  AlgElement adjoint() const;
  double norm() const;  // Frobenius over all blocks

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
};

AlgElement operator+(AlgElement a, const AlgElement& b);
AlgElement operator-(AlgElement a, const AlgElement& b);
AlgElement operator*(const AlgElement& a, const AlgElement& b);
AlgElement operator*(cplx s, AlgElement a);

void require_same_algebra(const Algebra& a, const Algebra& b);

struct PositiveForm {
  Algebra algebra;
  std::vector<Mat> densities;

  PositiveForm() = default;
  // Validates each density: Hermitian and PSD within tolerance (small
  // negative eigenvalues are clipped), throws NotPositive otherwise.
  PositiveForm(Algebra alg, std::vector<Mat> dens,
               const TolerancePolicy& tol = {});

  static PositiveForm zero(const Algebra& alg);

  double norm1() const;  // ||nu||_1 = Sigma tr(density_i)
  AlgElement support(const TolerancePolicy& tol = {}) const;
  bool is_faithful(const TolerancePolicy& tol = {}) const;
};

cplx evaluate(const PositiveForm& nu, const AlgElement& x);

bool mvn_precedes(const AlgElement& p, const AlgElement& q,
                  const TolerancePolicy& tol = {});

bool centralizer_contains(const PositiveForm& rho, const AlgElement& x,
                          const TolerancePolicy& tol = {});

PositiveForm conjugate_form(const PositiveForm& nu, const AlgElement& a,
                            const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_ALGEBRA_HPP
