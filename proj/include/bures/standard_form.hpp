#ifndef BURES_STANDARD_FORM_HPP
#define BURES_STANDARD_FORM_HPP

// Hilbert-Schmidt standard form of the algebra: HS vectors with inner
// product Sigma tr(eta* xi), left/right actions, fibres {psi : psi psi* = a},
// supports p(chi)/p'(chi), the modular maps S, F, Delta, Delta^{it}, J, the
// natural positive cone and its canonical representatives, and the
// cone-change unitary.

#include "bures/algebra.hpp"
#include "bures/rng.hpp"

namespace bures {

struct HSVector {
  Algebra algebra;
  std::vector<Mat> blocks;

  HSVector() = default;
  HSVector(Algebra alg, std::vector<Mat> b);

  static HSVector zero(const Algebra& alg);

  double norm() const;
  HSVector& operator+=(const HSVector& o);
  HSVector& operator-=(const HSVector& o);
};

HSVector operator+(HSVector a, const HSVector& b);
HSVector operator-(HSVector a, const HSVector& b);
HSVector operator*(cplx s, HSVector a);

cplx hs_inner(const HSVector& xi, const HSVector& eta);

HSVector left_act(const AlgElement& x, const HSVector& xi);
HSVector right_act(const AlgElement& y, const HSVector& xi);

// The positive form implemented by psi: x -> <x psi, psi>, density psi psi*.
PositiveForm form_of(const HSVector& psi, const TolerancePolicy& tol = {});

bool fibre_contains(const HSVector& psi, const PositiveForm& nu);

HSVector fibre_sample(const PositiveForm& nu, uint64_t seed,
                      const TolerancePolicy& tol = {});
HSVector fibre_sample(const PositiveForm& nu, Rng& rng,
                      const TolerancePolicy& tol = {});

// p(chi): left-acting range projection of chi chi*.
AlgElement support_left(const HSVector& chi, const TolerancePolicy& tol = {});
// p'(chi): right-acting support of chi* chi.
AlgElement support_right(const HSVector& chi, const TolerancePolicy& tol = {});

struct StandardForm {
  Algebra algebra;
  HSVector omega;

  // Per-block derived data (u = (Omega Omega*)^{-1/2} Omega is the unitary
  // polar factor; ww = Omega Omega*, wtw = Omega* Omega).
  std::vector<Mat> u, ww, wtw, ww_inv, wtw_inv, omega_inv;

  // Throws SingularOmega unless every block has full numerical rank.
  StandardForm(Algebra alg, HSVector om, const TolerancePolicy& tol = {});

  // Default: blockwise identity scaled to unit HS norm.
  static StandardForm tracial(const Algebra& alg,
                              const TolerancePolicy& tol = {});

  bool omega_is_psd(const TolerancePolicy& tol = {}) const;

  // Modular maps, blockwise closed forms.
  HSVector S(const HSVector& xi) const;                 // Om^{-*} xi* Om
  HSVector F(const HSVector& xi) const;                 // Om xi* Om^{-*}
  HSVector Delta(const HSVector& xi) const;             // ww xi wtw^{-1}
  HSVector DeltaIt(const HSVector& xi, double t) const; // ww^{it} xi wtw^{-it}
  HSVector J(const HSVector& xi) const;                 // u xi* u
};

// xi_nu = sqrt(a) u per block; fibre member and J-fixed.
HSVector cone_rep(const StandardForm& std_form, const PositiveForm& nu,
                  const TolerancePolicy& tol = {});

// Membership in the natural cone: xi u* PSD per block.
bool cone_contains(const StandardForm& std_form, const HSVector& xi,
                   const TolerancePolicy& tol = {});

// Right-acting unitary carrying the cone at Omega (PSD) onto the cone at
// omega_prime.
AlgElement cone_unitary(const StandardForm& std_form, const HSVector& omega_prime,
                        const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_STANDARD_FORM_HPP
