#ifndef BURES_SUITES_HPP
#define BURES_SUITES_HPP

// Batch drivers: the named property suites behind `properties` and the
// truncation sweep behind `sweep`.  Trials/rows are independent and may run
// under OpenMP; every trial derives its own RNG stream from (seed, index),
// and reductions are order-independent, so serial and parallel modes return
// identical results (the serial path is kept as the reference for tests and
// the benchmark).

#include <string>

#include "bures/fibre.hpp"

namespace bures {

struct PropertyResult {
  std::string name;
  double tolerance = 0.0;
  double worst_residual = 0.0;
  uint64_t worst_seed = 0;  // seed of the trial realizing worst_residual
  bool pass = true;
};

struct SuiteResult {
  std::string suite;
  int trials = 0;
  std::vector<int> dims;
  uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool pass = true;  // vacuously true when trials == 0
};

const std::vector<std::string>& suite_names();

// Throws UnknownSuite for unrecognized names.
SuiteResult run_suite(const std::string& suite, int trials,
                      const std::vector<int>& dims, uint64_t seed,
                      RunMode mode = RunMode::parallel,
                      const TolerancePolicy& tol = {});

struct SweepRow {
  int n = 0;
  double beta = 0.0;
  double gamma = 0.0;         // ||rho_perp||_1 at truncation n
  double gamma_oracle = 0.0;  // (1 - beta) / (beta^{-n} - 1)
  double fidelity = 0.0;
  double distance = 0.0;
};

enum class SweepAMode { projection, random };

// Rows for n = 2..n_max; throws DomainError unless 0 < beta < 1 and
// n_max <= 512.  random_phase_psi replaces the uniform unit vector by a
// random unit vector with nonvanishing amplitudes (the oracle is unchanged).
std::vector<SweepRow> run_sweep(double beta, int n_max, SweepAMode a_mode,
                                uint64_t seed, RunMode mode = RunMode::parallel,
                                bool random_phase_psi = false,
                                const TolerancePolicy& tol = {});

}  // namespace bures

#endif  // BURES_SUITES_HPP
