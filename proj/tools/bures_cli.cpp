// Command-line front end: JSON in, JSON/CSV out.
//
//   bures report --nu NU.json --rho RHO.json [--algebra ALG.json]
//   bures sweep --beta B --n-max N [--a-mode projection|random] [--random-phase]
//   bures properties --suite NAME --trials T --dims 2,3,4 [--serial]
//   bures membership --nu NU.json --rho RHO.json (--chi CHI.json | --samples N)
//
// Global flags: --tol-rank --tol-abs --seed --out PATH --format json|csv.
// Exit codes: 0 success (properties: all pass), 1 properties failed,
// 2 parse/usage, 3 math domain, 4 internal inconsistency.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bures/io.hpp"
#include "bures/suites.hpp"

namespace {

using bures::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw bures::ParseError("cannot open output path " + out_path);
  out << text;
}

json survey_to_json(const bures::SurveySummary& s) {
  return json{{"samples", s.samples},
              {"fraction_in_fibre", s.fraction_in_fibre},
              {"max_excess", s.max_excess}};
}

json membership_to_json(const bures::MembershipReport& m) {
  return json{{"in_relative_fibre", m.in_relative_fibre},
              {"direct_distance", m.direct_distance},
              {"global_distance", m.global_distance},
              {"rank_gap", m.rank_gap}};
}

// Flatten a one-level JSON object into "key,value" CSV lines.
std::string object_to_csv(const json& j) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << "," << it.value().dump() << "\n";
  }
  return os.str();
}

int cmd_report(const std::string& nu_path, const std::string& rho_path,
               const std::string& alg_path, const bures::TolerancePolicy& tol,
               const std::string& out_path, const std::string& format) {
  bures::PositiveForm nu = bures::form_from_json(bures::load_json_file(nu_path), tol);
  bures::PositiveForm rho = bures::form_from_json(bures::load_json_file(rho_path), tol);
  if (!alg_path.empty()) {
    bures::Algebra alg = bures::algebra_from_json(bures::load_json_file(alg_path));
    bures::require_same_algebra(alg, nu.algebra);
  }
  bures::require_same_algebra(nu.algebra, rho.algebra);

  bures::BuresReport rep = bures::bures_distance(nu, rho, tol);
  bures::MinimalPairReport mp = bures::minimal_pair(nu, rho, tol);
  bures::StandardForm sf = bures::StandardForm::tracial(nu.algebra, tol);
  bool comm = bures::commutes(sf, nu, rho, tol);
  double skew = bures::skew_information(sf, nu, rho, tol);

  // re-assert the module invariants before emitting anything
  double d2 = rep.nu_norm + rep.rho_norm - 2.0 * rep.fidelity;
  if (std::abs(rep.distance * rep.distance - std::max(0.0, d2)) > 1e-10) {
    throw bures::InternalInconsistency("distance/fidelity identity violated");
  }
  double fid_min = bures::fidelity(mp.nu_min, mp.rho_min, tol);
  if (std::abs(fid_min - rep.fidelity) > 1e-8 * std::max(1.0, rep.fidelity)) {
    throw bures::InternalInconsistency("minimal pair does not preserve P");
  }
  if (bures::rho_perp(mp.nu_min, mp.rho_min, tol).norm1() > 1e-8 ||
      bures::rho_perp(mp.rho_min, mp.nu_min, tol).norm1() > 1e-8) {
    throw bures::InternalInconsistency("minimal pair has nonzero residual perp");
  }

  json j;
  j["algebra"] = bures::algebra_to_json(nu.algebra);
  j["fidelity"] = rep.fidelity;
  j["distance"] = rep.distance;
  j["nu_norm"] = rep.nu_norm;
  j["rho_norm"] = rep.rho_norm;
  j["nu_perp_norm"] = mp.nu_perp.norm1();
  j["rho_perp_norm"] = mp.rho_perp.norm1();
  j["nu_min_norm"] = mp.nu_min.norm1();
  j["rho_min_norm"] = mp.rho_min.norm1();
  j["commutes"] = comm;
  j["skew_information"] = skew;
  if (format == "csv") {
    emit(object_to_csv(j), out_path);
  } else {
    emit(j.dump(2) + "\n", out_path);
  }
  return 0;
}

int cmd_sweep(double beta, int n_max, const std::string& a_mode_name,
              bool random_phase, uint64_t seed, bool serial,
              const bures::TolerancePolicy& tol, const std::string& out_path,
              const std::string& format) {
  bures::SweepAMode a_mode;
  if (a_mode_name == "projection") {
    a_mode = bures::SweepAMode::projection;
  } else if (a_mode_name == "random") {
    a_mode = bures::SweepAMode::random;
  } else {
    throw bures::ParseError("a-mode must be projection or random");
  }
  auto rows = bures::run_sweep(
      beta, n_max, a_mode, seed,
      serial ? bures::RunMode::serial : bures::RunMode::parallel, random_phase,
      tol);

  double prev = std::numeric_limits<double>::infinity();
  for (const bures::SweepRow& r : rows) {
    if (std::abs(r.gamma - r.gamma_oracle) >
        1e-9 * std::max(1.0, r.gamma_oracle)) {
      throw bures::InternalInconsistency("sweep row n=" + std::to_string(r.n) +
                                         " misses the closed-form oracle");
    }
    if (!(r.gamma < prev)) {
      throw bures::InternalInconsistency(
          "gamma not strictly decreasing at n=" + std::to_string(r.n));
    }
    prev = r.gamma;
  }

  if (format == "json") {
    json arr = json::array();
    for (const bures::SweepRow& r : rows) {
      arr.push_back(json{{"n", r.n},
                         {"beta", r.beta},
                         {"gamma", r.gamma},
                         {"gamma_oracle", r.gamma_oracle},
                         {"fidelity", r.fidelity},
                         {"distance", r.distance}});
    }
    emit(arr.dump(2) + "\n", out_path);
  } else {
    std::ostringstream os;
    os << "n,beta,gamma,gamma_oracle,fidelity,distance\n";
    for (const bures::SweepRow& r : rows) {
      os << r.n << "," << fmt17(r.beta) << "," << fmt17(r.gamma) << ","
         << fmt17(r.gamma_oracle) << "," << fmt17(r.fidelity) << ","
         << fmt17(r.distance) << "\n";
    }
    emit(os.str(), out_path);
  }
  return 0;
}

int cmd_properties(const std::string& suite, int trials,
                   std::vector<int> dims, uint64_t seed, bool serial,
                   const bures::TolerancePolicy& tol,
                   const std::string& out_path, const std::string& format) {
  if (dims.empty()) dims = {2, 3, 4};
  bures::SuiteResult r = bures::run_suite(
      suite, trials, dims, seed,
      serial ? bures::RunMode::serial : bures::RunMode::parallel, tol);

  json j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["dims"] = r.dims;
  j["seed"] = r.seed;
  j["vacuous"] = (r.trials == 0);
  json props = json::array();
  for (const bures::PropertyResult& p : r.properties) {
    props.push_back(json{{"name", p.name},
                         {"tolerance", p.tolerance},
                         {"worst_residual", p.worst_residual},
                         {"worst_seed", p.worst_seed},
                         {"pass", p.pass}});
  }
  j["properties"] = std::move(props);
  j["pass"] = r.pass;
  if (format == "csv") {
    std::ostringstream os;
    os << "name,tolerance,worst_residual,worst_seed,pass\n";
    for (const bures::PropertyResult& p : r.properties) {
      os << p.name << "," << fmt17(p.tolerance) << ","
         << fmt17(p.worst_residual) << "," << p.worst_seed << ","
         << (p.pass ? "true" : "false") << "\n";
    }
    emit(os.str(), out_path);
  } else {
    emit(j.dump(2) + "\n", out_path);
  }
  return r.pass ? 0 : 1;
}

int cmd_membership(const std::string& nu_path, const std::string& rho_path,
                   const std::string& chi_path, int samples, uint64_t seed,
                   bool serial, const bures::TolerancePolicy& tol,
                   const std::string& out_path, const std::string& format) {
  bures::PositiveForm nu = bures::form_from_json(bures::load_json_file(nu_path), tol);
  bures::PositiveForm rho = bures::form_from_json(bures::load_json_file(rho_path), tol);
  bures::require_same_algebra(nu.algebra, rho.algebra);
  bures::StandardForm sf = bures::StandardForm::tracial(nu.algebra, tol);

  json j;
  if (!chi_path.empty()) {
    bures::HSVector chi = bures::vector_from_json(bures::load_json_file(chi_path));
    bures::require_same_algebra(chi.algebra, nu.algebra);
    if (!bures::fibre_contains(chi, nu)) {
      throw bures::DomainError("--chi does not implement nu");
    }
    j = membership_to_json(bures::relfaser_from_vector(sf, nu, rho, chi, tol));
  } else {
    if (samples < 1) {
      throw bures::ParseError("membership needs --chi or --samples >= 1");
    }
    j = survey_to_json(bures::relative_fibre_survey(
        sf, nu, rho, samples, seed,
        serial ? bures::RunMode::serial : bures::RunMode::parallel, tol));
  }
  if (format == "csv") {
    emit(object_to_csv(j), out_path);
  } else {
    emit(j.dump(2) + "\n", out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures geometry of positive forms on block matrix algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // let global flags appear after the subcommand

  bures::TolerancePolicy tol;
  uint64_t seed = 1;
  std::string out_path;
  std::string format;  // default: csv for sweep, json elsewhere
  bool serial = false;
  app.add_option("--tol-rank", tol.rel_rank_cutoff, "relative rank cutoff");
  app.add_option("--tol-abs", tol.abs_floor, "absolute rank/clip floor");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--serial", serial, "disable parallel execution");

  std::string nu_path, rho_path, alg_path, chi_path;
  auto* report = app.add_subcommand("report", "distance/minimal-pair report");
  report->add_option("--nu", nu_path, "positive form JSON")->required();
  report->add_option("--rho", rho_path, "positive form JSON")->required();
  report->add_option("--algebra", alg_path, "algebra JSON (cross-checked)");

  double beta = 0.5;
  int n_max = 60;
  std::string a_mode = "projection";
  bool random_phase = false;
  auto* sweep = app.add_subcommand("sweep", "truncation sweep of the vanishing-perp family");
  sweep->add_option("--beta", beta, "decay rate in (0,1)")->required();
  sweep->add_option("--n-max", n_max, "largest truncation dimension");
  sweep->add_option("--a-mode", a_mode, "projection|random");
  sweep->add_flag("--random-phase", random_phase, "random-amplitude unit vector");

  std::string suite;
  int trials = 100;
  std::vector<int> dims;
  auto* props = app.add_subcommand("properties", "run a property suite");
  props->add_option("--suite", suite, "suite name")->required();
  props->add_option("--trials", trials, "number of random trials");
  props->add_option("--dims", dims, "candidate block dimensions")
      ->delimiter(',');

  int samples = 0;
  auto* member = app.add_subcommand("membership", "relative fibre membership");
  member->add_option("--nu", nu_path, "positive form JSON")->required();
  member->add_option("--rho", rho_path, "positive form JSON")->required();
  member->add_option("--chi", chi_path, "HS vector JSON implementing nu");
  member->add_option("--samples", samples, "fibre survey sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (format.empty()) format = *sweep ? "csv" : "json";
    if (*report) {
      return cmd_report(nu_path, rho_path, alg_path, tol, out_path, format);
    }
    if (*sweep) {
      return cmd_sweep(beta, n_max, a_mode, random_phase, seed, serial, tol,
                       out_path, format);
    }
    if (*props) {
      return cmd_properties(suite, trials, dims, seed, serial, tol, out_path,
                            format);
    }
    if (*member) {
      return cmd_membership(nu_path, rho_path, chi_path, samples, seed, serial,
                            tol, out_path, format);
    }
  } catch (const bures::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
