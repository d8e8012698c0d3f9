#ifndef BURES_OVERLAP_HPP
#define BURES_OVERLAP_HPP

// The overlap form h_{psi,phi}(z) = <z psi, phi> on the commutant, with its
// polar data.  Commutant elements are plain matrices applied by right
// multiplication; because y -> R_y is an anti-homomorphism, every identity
// below is an operator-composition statement on HS space, not a matrix
// product.  Concretely h(R_y) = Sigma tr(m_i y_i) with m_i = phi_i* psi_i.

#include "bures/standard_form.hpp"

namespace bures {

struct OverlapForm {
  AlgElement m;            // commutant-side density, m_i = phi_i* psi_i
  AlgElement v;            // right-acting partial isometry, m_i = V_i |m_i|
  PositiveForm abs_density;  // density of |h| = (m m*)^{1/2}
  AlgElement s_h;          // support projection of |h| (= V V*, right-acting)
};

OverlapForm build_overlap(const HSVector& psi, const HSVector& phi,
                          const TolerancePolicy& tol = {});

// Evaluate h on the commutant element R_y.
cplx overlap_eval(const OverlapForm& h, const AlgElement& y);

// ||h||_1 = Sigma nuclear_norm(m_i)
double functional_norm(const OverlapForm& h);

// h >= 0 iff every m_i is PSD; cross-checked against h(1) = ||h||_1.
bool is_positive(const OverlapForm& h, const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_OVERLAP_HPP
