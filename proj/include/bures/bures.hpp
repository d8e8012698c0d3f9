#ifndef BURES_BURES_HPP
#define BURES_BURES_HPP

// Fidelity, Bures distance, the variational infimum, optimal implementing
// vectors, the largest orthogonal subordinate form rho_perp and minimal
// pairs, the g-functional, commutation and skew information.

#include "bures/overlap.hpp"

namespace bures {

struct BuresReport {
  double fidelity = 0.0;  // sqrt of the transition probability
  double distance = 0.0;
  double nu_norm = 0.0;
  double rho_norm = 0.0;
};

struct MinimalPairReport {
  PositiveForm nu_perp;
  PositiveForm rho_perp;
  PositiveForm nu_min;   // nu - nu_perp
  PositiveForm rho_min;  // rho - rho_perp
};

enum class VariationalMode { analytic, iterative };

struct VariationalResult {
  double value = 0.0;
  AlgElement argmin;
  int iterations = 0;
};

double fidelity(const PositiveForm& nu, const PositiveForm& rho,
                const TolerancePolicy& tol = {});

BuresReport bures_distance(const PositiveForm& nu, const PositiveForm& rho,
                           const TolerancePolicy& tol = {});

// inf over invertible positive x of sqrt(nu(x) rho(x^{-1})).
// analytic: closed-form optimizer, requires full-rank nu (SingularDensity).
// iterative: gradient descent over x = exp(H), any inputs.
VariationalResult variational_fidelity(const PositiveForm& nu,
                                       const PositiveForm& rho,
                                       VariationalMode mode,
                                       const TolerancePolicy& tol = {});

// psi_Omega^nu(rho): the fibre element of rho closest to xi_nu.
HSVector optimal_vector(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho,
                        const TolerancePolicy& tol = {});

// Same construction seeded from an arbitrary element of the fibre of rho;
// the result does not depend on the seed.
HSVector optimal_vector_seeded(const StandardForm& std_form,
                               const PositiveForm& nu, const PositiveForm& rho,
                               const HSVector& psi_seed,
                               const TolerancePolicy& tol = {});

// Largest positive form <= rho orthogonal to nu; density per block
// sqrt(c) (s(c) - supp(sqrt(c) a sqrt(c))) sqrt(c).
PositiveForm rho_perp(const PositiveForm& nu, const PositiveForm& rho,
                      const TolerancePolicy& tol = {});

MinimalPairReport minimal_pair(const PositiveForm& nu, const PositiveForm& rho,
                               const TolerancePolicy& tol = {});

// Density G of the unique g in M* with g(1) = fidelity and the two-sided
// Cauchy-Schwarz bound: G_i = sqrt(c_i) V_i* sqrt(a_i) from the polar
// decomposition sqrt(a_i) sqrt(c_i) = V_i |sqrt(a_i) sqrt(c_i)|.
AlgElement g_functional(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho,
                        const TolerancePolicy& tol = {});

// Three equivalent tests (optimal vector = xi_rho / density commutators /
// distance equality); InconsistentCriteria if they disagree.
bool commutes(const StandardForm& std_form, const PositiveForm& nu,
              const PositiveForm& rho, const TolerancePolicy& tol = {});

// j(nu|rho) = 1/2 ||J psi - psi||^2 with psi = psi_Omega^rho(nu).
double skew_information(const StandardForm& std_form, const PositiveForm& nu,
                        const PositiveForm& rho,
                        const TolerancePolicy& tol = {});

// For faithful rho and PSD x: the optimal vector of nu = rho^x (density
// x c x) relative to rho is x xi_rho.
HSVector conjugated_form_vector(const StandardForm& std_form,
                                const PositiveForm& rho, const AlgElement& x,
                                const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_BURES_HPP
