#ifndef BURES_RNG_HPP
#define BURES_RNG_HPP

// Seeded random generators for matrices, forms and vectors.  All sampling in
// batch drivers derives per-task seeds via mix_seed so results do not depend
// on execution order.

#include <cstdint>
#include <random>

#include "bures/algebra.hpp"

namespace bures {

using Rng = std::mt19937_64;

// splitmix64-style mixing for independent per-task streams
uint64_t mix_seed(uint64_t seed, uint64_t index);

Mat ginibre(int rows, int cols, Rng& rng);
Mat random_hermitian(int n, Rng& rng);
// Haar unitary via QR of a Ginibre matrix with phase-fixed R diagonal.
Mat haar_unitary(int n, Rng& rng);
// PSD with prescribed rank (rank clamped to [0, n]).
Mat random_psd(int n, int rank, Rng& rng);
// Projection of prescribed rank from Haar unitary columns.
Mat random_projection(int n, int rank, Rng& rng);
// n x n partial isometry W with W W* = final (a projection).
Mat random_partial_isometry_with_final(const Mat& final_proj, Rng& rng,
                                       const TolerancePolicy& tol = {});

PositiveForm random_form(const Algebra& alg, Rng& rng, bool full_rank = true,
                         const TolerancePolicy& tol = {});
PositiveForm random_form_ranks(const Algebra& alg, const std::vector<int>& ranks,
                               Rng& rng, const TolerancePolicy& tol = {});
AlgElement random_element(const Algebra& alg, Rng& rng);
AlgElement random_unitary_element(const Algebra& alg, Rng& rng);

}  // namespace bures

#endif  // BURES_RNG_HPP
