// Acceptance harness: twelve oracle- and property-based criteria, one
// PASS/FAIL line each; exits nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bures/suites.hpp"
#include "oracles.hpp"

using namespace bures;

namespace {

struct Tally {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void bound(double residual, double tol, const std::string& what) {
    worst = std::max(worst, residual);
    if (residual > tol && ok) {
      ok = false;
      note = what + " residual " + std::to_string(residual);
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Algebra sample_algebra(const std::vector<int>& dims, Rng& rng) {
  size_t m = dims.size();
  if (m >= 2 && rng() % 3 == 0) {
    return Algebra({dims[rng() % m], dims[rng() % m]});
  }
  return Algebra({dims[rng() % m]});
}

// 1 + 2: nuclear-norm fidelity against the independent unitary-ascent
// oracle, and the exact distance/fidelity identity on every pair.
Tally criterion_fidelity_oracle(Tally* identity_out) {
  Tally t, ident;
  Rng rng(1001);
  const std::vector<int> dims{2, 3, 4, 6};
  for (int k = 0; k < 500; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    bool full = (k % 2 == 0);
    PositiveForm nu = random_form(alg, rng, full);
    PositiveForm rho = random_form(alg, rng, !full && k % 3 != 0);
    double f = fidelity(nu, rho);
    double oracle = testo::fidelity_oracle(nu, rho, rng);
    t.bound(std::abs(f - oracle), 1e-6, "pair " + std::to_string(k));
    BuresReport r = bures_distance(nu, rho);
    ident.bound(std::abs(r.distance * r.distance -
                         (r.nu_norm + r.rho_norm - 2.0 * r.fidelity)),
                1e-10, "pair " + std::to_string(k));
  }
  *identity_out = ident;
  return t;
}

// 3: variational characterization of the fidelity.
Tally criterion_variational() {
  Tally t;
  Rng rng(1003);
  const std::vector<int> dims{2, 3, 4};
  // analytic optimizer on 200 full-rank pairs + 500 inequality probes each
  for (int k = 0; k < 200; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    PositiveForm nu = random_form(alg, rng, true);
    PositiveForm rho = random_form(alg, rng, true);
    double f = fidelity(nu, rho);
    VariationalResult v =
        variational_fidelity(nu, rho, VariationalMode::analytic);
    t.bound(std::abs(v.value - f), 1e-9 * std::max(1.0, f),
            "analytic pair " + std::to_string(k));
    for (int j = 0; j < 500; ++j) {
      std::vector<Mat> xb, ib;
      for (int i = 0; i < alg.blocks(); ++i) {
        Mat x = random_psd(alg.dim(i), alg.dim(i), rng) +
                0.05 * Mat::Identity(alg.dim(i), alg.dim(i));
        ib.push_back(x.inverse());
        xb.push_back(std::move(x));
      }
      AlgElement x(alg, std::move(xb)), xi(alg, std::move(ib));
      double val = evaluate(nu, x).real() * evaluate(rho, xi).real();
      t.bound(f * f - val, 1e-10, "inequality probe");
    }
  }
  // iterative mode on 50 full-rank pairs (with singular inputs the infimum
  // is approached but not attained, so convergence in H is only logarithmic;
  // singular behavior is covered by the variational suite's one-sided bound)
  for (int k = 0; k < 50; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    PositiveForm nu = random_form(alg, rng, true);
    PositiveForm rho = random_form(alg, rng, true);
    double f = fidelity(nu, rho);
    VariationalResult v =
        variational_fidelity(nu, rho, VariationalMode::iterative);
    t.bound(std::abs(v.value - f), 1e-6 * std::max(1.0, f),
            "iterative pair " + std::to_string(k));
  }
  return t;
}

// 4: the optimal vector attains the distance and has a positive overlap
// form, with both positivity criteria in agreement.
Tally criterion_attainment() {
  Tally t;
  Rng rng(1004);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 500; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, k % 2 == 0));
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    HSVector xi_nu = cone_rep(sf, nu);
    HSVector psi0 = optimal_vector(sf, nu, rho);
    BuresReport r = bures_distance(nu, rho);
    t.bound(std::abs((psi0 - xi_nu).norm() - r.distance), 1e-8,
            "attainment pair " + std::to_string(k));
    t.require(fibre_contains(psi0, rho), "psi0 left the fibre of rho");
    OverlapForm h = build_overlap(psi0, xi_nu);
    bool psd = is_positive(h);
    double h1 = overlap_eval(h, AlgElement::identity(alg)).real();
    bool trace_crit = std::abs(h1 - functional_norm(h)) <=
                      1e-9 * std::max(1.0, functional_norm(h));
    t.require(psd && trace_crit, "overlap positivity criteria disagree");
  }
  return t;
}

// 5: rho_perp closed forms: geometric-series oracle on the truncation
// family, centralizer-support cross-check, and maximality sampling.
Tally criterion_rho_perp() {
  Tally t;
  // truncation family oracle at beta = 1/2, n = 10
  std::vector<SweepRow> rows =
      run_sweep(0.5, 10, SweepAMode::projection, 42, RunMode::serial);
  double gamma10 = rows.back().gamma;
  t.bound(std::abs(gamma10 - 0.5 / 1023.0) / (0.5 / 1023.0), 1e-9,
          "truncation gamma(10)");

  Rng rng(1005);
  const std::vector<int> dims{2, 3, 4};
  // 100 instances with s(nu) a spectral projection of rho's density:
  // rho_perp must equal the compressed corner (1 - s) c (1 - s)
  for (int k = 0; k < 100; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    std::vector<Mat> as, cs;
    for (int i = 0; i < alg.blocks(); ++i) {
      int n = alg.dim(i);
      Mat c = random_psd(n, n, rng) + 0.05 * Mat::Identity(n, n);
      EighResult e = eigh(c);
      int m = (n > 1) ? 1 + static_cast<int>(rng() % static_cast<uint64_t>(n - 1)) : 1;
      Mat basis = e.vectors.leftCols(m);
      Mat proj = basis * basis.adjoint();
      Mat g = ginibre(n, n, rng);
      as.push_back(proj * (g * g.adjoint() + 0.1 * Mat::Identity(n, n)) * proj);
      cs.push_back(std::move(c));
    }
    PositiveForm nu(alg, std::move(as));
    PositiveForm rho(alg, std::move(cs));
    PositiveForm perp = rho_perp(nu, rho);
    AlgElement s = nu.support();
    for (int i = 0; i < alg.blocks(); ++i) {
      Mat sc = Mat::Identity(alg.dim(i), alg.dim(i)) - s.blocks[i];
      Mat closed = sc * rho.densities[static_cast<size_t>(i)] * sc;
      t.bound(fro(Mat(perp.densities[static_cast<size_t>(i)] - closed)) /
                  std::max(1.0, fro(closed)),
              1e-9, "centralizer-support instance " + std::to_string(k));
    }
  }
  // maximality: 100 instances x 100 competitors sigma <= rho supported away
  // from nu never exceed rho_perp
  for (int k = 0; k < 100; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, true);
    PositiveForm perp = rho_perp(nu, rho);
    AlgElement s_nu = nu.support();
    for (int j = 0; j < 100; ++j) {
      for (int i = 0; i < alg.blocks(); ++i) {
        int n = alg.dim(i);
        Mat q = Mat::Identity(n, n) - s_nu.blocks[static_cast<size_t>(i)];
        Mat s0 = q * random_psd(n, n, rng) * q;
        Mat root = sqrt_psd(s0);
        double top = eigh(Mat(root * pinv(rho.densities[static_cast<size_t>(i)]) *
                              root))
                         .values.maxCoeff();
        if (top <= 0) continue;
        Mat sigma = (0.999 / top) * s0;
        t.bound(-testo::lambda_min(
                    Mat(perp.densities[static_cast<size_t>(i)] - sigma)),
                1e-8, "maximality instance " + std::to_string(k));
      }
    }
  }
  return t;
}

// 6: minimal pairs: vanishing residual perps, orthogonal-part split of the
// squared distance, and preservation of the transition probability.
Tally criterion_minimal_pairs() {
  Tally t;
  Rng rng(1006);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 300; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    MinimalPairReport mp = minimal_pair(nu, rho);
    std::string tag = "pair " + std::to_string(k);
    t.bound(rho_perp(mp.nu_min, mp.rho_min).norm1(), 1e-8, tag + " nu residual");
    t.bound(rho_perp(mp.rho_min, mp.nu_min).norm1(), 1e-8, tag + " rho residual");
    BuresReport full = bures_distance(nu, rho);
    BuresReport dmin = bures_distance(mp.nu_min, mp.rho_min);
    BuresReport dperp = bures_distance(mp.nu_perp, mp.rho_perp);
    t.bound(std::abs(full.distance * full.distance -
                     dmin.distance * dmin.distance -
                     dperp.distance * dperp.distance),
            1e-8, tag + " split");
    t.bound(std::abs(dmin.fidelity - full.fidelity), 1e-9, tag + " P");
  }
  return t;
}

// 7: g-functional normalization, two-sided Cauchy-Schwarz bound, and
// symmetry of the two sesquilinear constructions.
Tally criterion_g_functional() {
  Tally t;
  Rng rng(1007);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 50; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, k % 2 == 0));
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    AlgElement g = g_functional(sf, nu, rho);
    double f = fidelity(nu, rho);
    cplx g1 = 0.0;
    for (const Mat& b : g.blocks) g1 += b.trace();
    t.bound(std::abs(g1 - cplx(f, 0.0)), 1e-9,
            "normalization instance " + std::to_string(k));
    MinimalPairReport mp = minimal_pair(nu, rho);
    for (int j = 0; j < 200; ++j) {
      AlgElement x = random_element(alg, rng);
      AlgElement y = random_element(alg, rng);
      cplx gv = 0.0;
      for (size_t i = 0; i < g.blocks.size(); ++i) {
        gv += (g.blocks[i] * y.blocks[i].adjoint() * x.blocks[i]).trace();
      }
      double rhs = evaluate(mp.nu_min, y.adjoint() * y).real() *
                   evaluate(mp.rho_min, x.adjoint() * x).real();
      t.bound((std::norm(gv) - rhs) / std::max(1.0, rhs), 1e-9,
              "bound instance " + std::to_string(k));
    }
    // the construction is symmetric: same density from either side
    HSVector xi_nu = cone_rep(sf, nu);
    HSVector xi_rho = cone_rep(sf, rho);
    HSVector psi0 = optimal_vector(sf, nu, rho);
    HSVector psi_r = optimal_vector(sf, rho, nu);
    double gn = std::max(1.0, g.norm());
    for (size_t i = 0; i < g.blocks.size(); ++i) {
      Mat direct = psi0.blocks[i] * xi_nu.blocks[i].adjoint();
      Mat swapped = xi_rho.blocks[i] * psi_r.blocks[i].adjoint();
      t.bound(fro(Mat(g.blocks[i] - direct)) / gn, 1e-9, "direct form");
      t.bound(fro(Mat(g.blocks[i] - swapped)) / gn, 1e-9, "swapped form");
    }
  }
  return t;
}

// 8: the three commutation criteria agree on 500 pairs spanning commuting
// and non-commuting constructions; the relation is boolean-symmetric.
Tally criterion_commutation() {
  Tally t;
  Rng rng(1008);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 500; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, k % 2 == 0));
    PositiveForm nu, rho;
    bool engineered = (k % 2 == 0);
    if (engineered) {
      auto pr = testo::commuting_pair(alg, rng);
      nu = pr.first;
      rho = pr.second;
    } else {
      nu = random_form(alg, rng, false);
      rho = random_form(alg, rng, true);
    }
    try {
      bool ab = commutes(sf, nu, rho);
      bool ba = commutes(sf, rho, nu);
      t.require(ab == ba, "asymmetric at pair " + std::to_string(k));
      if (engineered) {
        t.require(ab, "engineered commuting pair rejected at " +
                          std::to_string(k));
      }
    } catch (const InconsistentCriteria& e) {
      t.require(false, std::string("criteria disagreed: ") + e.what());
    }
  }
  return t;
}

// 9: skew information vanishes exactly on commuting pairs and does not
// depend on the ambient standard form.
Tally criterion_skew() {
  Tally t;
  Rng rng(1009);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 100; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, k % 2 == 0));
    auto [nu_c, rho_c] = testo::commuting_pair(alg, rng);
    t.bound(skew_information(sf, nu_c, rho_c), 1e-10,
            "commuting pair " + std::to_string(k));

    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    double j0 = skew_information(sf, nu, rho);
    for (int m = 0; m < 3; ++m) {
      StandardForm alt(alg, testo::random_invertible_omega(alg, rng, m == 0));
      t.bound(std::abs(skew_information(alt, nu, rho) - j0), 1e-8,
              "omega dependence at pair " + std::to_string(k));
    }
  }
  return t;
}

// 10: every sampled fibre element lies in the relative fibre, with the rank
// criterion, constructive extension, and distance test in agreement.
Tally criterion_fibre_totality() {
  Tally t;
  Rng rng(1010);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 20; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, k % 2 == 0));
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    // relfaser_from_vector already cross-checks the rank criterion, the
    // distance test, and the isometry extension on every sample, throwing
    // on any disagreement; the survey propagates such failures.
    SurveySummary s = relative_fibre_survey(sf, nu, rho, 500,
                                            mix_seed(77, k), RunMode::parallel);
    t.require(s.fraction_in_fibre == 1.0,
              "fraction " + std::to_string(s.fraction_in_fibre) +
                  " at instance " + std::to_string(k));
    t.bound(s.max_excess, 1e-8, "excess at instance " + std::to_string(k));
  }
  return t;
}

// 11: modular structure: defining relations of S, F, Delta, J, the
// distance double estimate, and the cone-transport chain rule.
Tally criterion_modular() {
  Tally t;
  Rng rng(1011);
  const std::vector<int> dims{2, 3, 4};
  for (int k = 0; k < 300; ++k) {
    Algebra alg = sample_algebra(dims, rng);
    bool psd = (k % 2 == 0);
    StandardForm sf(alg, testo::random_invertible_omega(alg, rng, psd));
    AlgElement x = random_element(alg, rng);
    std::vector<Mat> xb;
    for (int i = 0; i < alg.blocks(); ++i) xb.push_back(ginibre(alg.dim(i), alg.dim(i), rng));
    HSVector xi(alg, std::move(xb));
    std::string tag = "instance " + std::to_string(k);
    double xs = std::max(1.0, x.norm() * sf.omega.norm());
    t.bound((sf.S(left_act(x, sf.omega)) - left_act(x.adjoint(), sf.omega))
                    .norm() /
                xs,
            1e-9, tag + " S");
    t.bound((sf.Delta(xi) - sf.F(sf.S(xi))).norm() /
                std::max(1.0, sf.Delta(xi).norm()),
            1e-9, tag + " Delta=FS");
    t.bound((sf.J(sf.J(xi)) - xi).norm() / std::max(1.0, xi.norm()), 1e-9,
            tag + " J^2");
    PositiveForm nu = random_form(alg, rng, false);
    PositiveForm rho = random_form(alg, rng, false);
    HSVector xi_nu = cone_rep(sf, nu);
    HSVector xi_rho = cone_rep(sf, rho);
    t.bound((sf.J(xi_nu) - xi_nu).norm(), 1e-9, tag + " J fixes cone");
    t.bound(-hs_inner(xi_nu, xi_rho).real(), 1e-9, tag + " self-duality");
    // double estimate: ||xi_nu - xi_rho||^2 <= ||nu - rho||_1
    //                  <= ||xi_nu - xi_rho|| ||xi_nu + xi_rho||
    double dvec = (xi_nu - xi_rho).norm();
    double dtr = 0.0;
    for (size_t i = 0; i < nu.densities.size(); ++i) {
      dtr += eigh(Mat(nu.densities[i] - rho.densities[i]))
                 .values.cwiseAbs()
                 .sum();
    }
    t.bound(dvec * dvec - dtr, 1e-9, tag + " lower estimate");
    t.bound(dtr - dvec * (xi_nu + xi_rho).norm(), 1e-9, tag + " upper estimate");
    // chain rule for the cone-transport unitaries over a PSD base
    StandardForm base = StandardForm::tracial(alg);
    HSVector om_p = testo::random_invertible_omega(alg, rng, false);
    AlgElement up = cone_unitary(base, om_p);
    AlgElement w = random_unitary_element(alg, rng);
    AlgElement up2 = cone_unitary(base, right_act(w, om_p));
    for (size_t i = 0; i < up.blocks.size(); ++i) {
      t.bound(fro(Mat(up2.blocks[i] - up.blocks[i] * w.blocks[i])), 1e-9,
              tag + " chain rule");
    }
  }
  return t;
}

// 12: sweep asymptotics at beta = 1/2.
Tally criterion_sweep_asymptotics() {
  Tally t;
  const double beta = 0.5;
  std::vector<SweepRow> rows =
      run_sweep(beta, 60, SweepAMode::projection, 7, RunMode::parallel);
  double prev = 1e300;
  for (const SweepRow& r : rows) {
    t.require(r.gamma < prev,
              "gamma not strictly decreasing at n=" + std::to_string(r.n));
    prev = r.gamma;
    double envelope = std::pow(beta, r.n) * (1.0 - beta) /
                      (1.0 - std::pow(beta, r.n));
    t.require(r.gamma <= envelope * (1.0 + 1e-9),
              "gamma exceeds the envelope at n=" + std::to_string(r.n));
    if (r.n == 55) {
      t.require(r.gamma < 1e-15, "gamma(55) = " + std::to_string(r.gamma));
    }
  }
  return t;
}

int report(int index, const char* label, const Tally& t) {
  std::printf("criterion %2d: %s  %s%s%s\n", index, t.ok ? "PASS" : "FAIL",
              label, t.ok ? "" : " -- ", t.ok ? "" : t.note.c_str());
  std::fflush(stdout);
  return t.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  Tally identity;
  failures += report(1, "fidelity matches the unitary-ascent oracle (500 pairs, dims 2/3/4/6)",
                     criterion_fidelity_oracle(&identity));
  failures += report(2, "distance/fidelity identity exact on every pair", identity);
  failures += report(3, "variational formula: analytic, inequality, iterative",
                     criterion_variational());
  failures += report(4, "optimal vectors attain the distance with positive overlap (500 pairs)",
                     criterion_attainment());
  failures += report(5, "rho_perp closed forms and maximality sampling",
                     criterion_rho_perp());
  failures += report(6, "minimal pairs: identities and P-preservation (300 pairs)",
                     criterion_minimal_pairs());
  failures += report(7, "g-functional normalization, bound, and symmetry",
                     criterion_g_functional());
  failures += report(8, "commutation triple criterion, zero disagreements (500 pairs)",
                     criterion_commutation());
  failures += report(9, "skew information: zero on commuting pairs, base-independent",
                     criterion_skew());
  failures += report(10, "relative fibre totality (20 instances x 500 samples)",
                     criterion_fibre_totality());
  failures += report(11, "modular relations, double estimate, chain rule (300 instances)",
                     criterion_modular());
  failures += report(12, "sweep asymptotics at beta = 1/2",
                     criterion_sweep_asymptotics());
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
