#ifndef BURES_FIBRE_HPP
#define BURES_FIBRE_HPP

// The relative fibre S(nu|rho): distance from a vector to a fibre, the
// rank-comparison membership criterion with its constructive isometry
// extension, and sampling surveys over the fibre of nu.

#include "bures/bures.hpp"

namespace bures {

enum class RunMode { serial, parallel };

struct MembershipReport {
  bool in_relative_fibre = false;
  double direct_distance = 0.0;  // min distance from chi to the fibre of rho
  double global_distance = 0.0;  // d_B(nu, rho)
  // per block: rank(p'(psi) - s(h)) - rank((u s(h) u*)^perp)
  std::vector<int> rank_gap;
};

double distance_to_fibre(const HSVector& chi, const PositiveForm& rho,
                         const TolerancePolicy& tol = {});

// U acts from the right; it must be a partial isometry whose initial
// projection (as a commutant element) is p'(xi_nu), i.e. U U* = supp(xi_nu* xi_nu).
// When rank_override is given (per-block ranks substituted for
// rank((u s(h) u*)^perp)), only the rank bookkeeping runs: this exercises the
// criterion's negative branch, which genuine finite-block inputs never reach.
MembershipReport relfaser_check(const StandardForm& std_form,
                                const PositiveForm& nu, const PositiveForm& rho,
                                const AlgElement& U,
                                const TolerancePolicy& tol = {},
                                const std::vector<int>* rank_override = nullptr);

// Same criterion for an explicit fibre element chi of nu (derives U = xi_nu^+ chi).
MembershipReport relfaser_from_vector(const StandardForm& std_form,
                                      const PositiveForm& nu,
                                      const PositiveForm& rho,
                                      const HSVector& chi,
                                      const TolerancePolicy& tol = {});

struct SurveySummary {
  int samples = 0;
  double fraction_in_fibre = 0.0;
  double max_excess = 0.0;  // max over samples of direct - global distance
};

SurveySummary relative_fibre_survey(const StandardForm& std_form,
                                    const PositiveForm& nu,
                                    const PositiveForm& rho, int samples,
                                    uint64_t seed,
                                    RunMode mode = RunMode::parallel,
                                    const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_FIBRE_HPP
