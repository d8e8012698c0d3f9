// Wall-time comparison of the serial reference path against the OpenMP path
// for the batch drivers (property suites, sweep, fibre survey), plus a check
// that both modes return identical results.

#include <chrono>
#include <cstdio>

#include "bures/suites.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
  auto t0 = Clock::now();
  f();
  return seconds(t0, Clock::now());
}

bool same_suite_result(const bures::SuiteResult& a, const bures::SuiteResult& b) {
  if (a.properties.size() != b.properties.size()) return false;
  for (size_t i = 0; i < a.properties.size(); ++i) {
    if (a.properties[i].worst_residual != b.properties[i].worst_residual ||
        a.properties[i].worst_seed != b.properties[i].worst_seed) {
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  const bures::TolerancePolicy tol;
  const uint64_t seed = 20240817;
  const std::vector<int> dims = {2, 3, 4};
  int mismatches = 0;

  std::printf("%-28s %10s %10s %8s\n", "workload", "serial[s]", "parallel[s]",
              "speedup");

  for (const std::string& suite : bures::suite_names()) {
    bures::SuiteResult rs, rp;
    double ts = timed([&] {
      rs = bures::run_suite(suite, 40, dims, seed, bures::RunMode::serial, tol);
    });
    double tp = timed([&] {
      rp = bures::run_suite(suite, 40, dims, seed, bures::RunMode::parallel, tol);
    });
    if (!same_suite_result(rs, rp)) {
      std::printf("suite %s: serial/parallel results differ!\n", suite.c_str());
      ++mismatches;
    }
    std::printf("suite %-22s %10.3f %10.3f %8.2f\n", suite.c_str(), ts, tp,
                tp > 0 ? ts / tp : 0.0);
  }

  {
    std::vector<bures::SweepRow> rs, rp;
    double ts = timed([&] {
      rs = bures::run_sweep(0.5, 120, bures::SweepAMode::random, seed,
                            bures::RunMode::serial, false, tol);
    });
    double tp = timed([&] {
      rp = bures::run_sweep(0.5, 120, bures::SweepAMode::random, seed,
                            bures::RunMode::parallel, false, tol);
    });
    for (size_t i = 0; i < rs.size(); ++i) {
      if (rs[i].gamma != rp[i].gamma || rs[i].fidelity != rp[i].fidelity) {
        std::printf("sweep row n=%d differs between modes!\n", rs[i].n);
        ++mismatches;
        break;
      }
    }
    std::printf("sweep n<=120               %10.3f %10.3f %8.2f\n", ts, tp,
                tp > 0 ? ts / tp : 0.0);
  }

  return mismatches == 0 ? 0 : 1;
}
