#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bures/algebra.hpp"
#include "bures/rng.hpp"
#include "oracles.hpp"

using namespace bures;

TEST_CASE("algebra construction validates block dimensions") {
  CHECK_THROWS_AS(Algebra(std::vector<int>{}), DomainError);
  CHECK_THROWS_AS(Algebra({2, 0}), DomainError);
  Algebra alg({2, 3});
  CHECK(alg.blocks() == 2);
  CHECK(alg.dim(1) == 3);
  CHECK(alg == Algebra({2, 3}));
  CHECK(!(alg == Algebra({3, 2})));
}

TEST_CASE("element arithmetic is blockwise") {
  Algebra alg({2, 3});
  Rng rng(5);
  AlgElement x = random_element(alg, rng);
  AlgElement y = random_element(alg, rng);
  AlgElement z = x + y - x;
  for (int i = 0; i < alg.blocks(); ++i) {
    CHECK(fro(Mat(z.blocks[i] - y.blocks[i])) < 1e-13);
  }
  AlgElement p = x * y;
  for (int i = 0; i < alg.blocks(); ++i) {
    CHECK(fro(Mat(p.blocks[i] - x.blocks[i] * y.blocks[i])) < 1e-13);
  }
  AlgElement id = AlgElement::identity(alg);
  CHECK(fro(Mat((x * id).blocks[0] - x.blocks[0])) < 1e-14);
  CHECK(fro(Mat(x.adjoint().blocks[1] - x.blocks[1].adjoint())) < 1e-14);
  CHECK_THROWS_AS(x + random_element(Algebra({2, 2}), rng), AlgebraMismatch);
}

TEST_CASE("PositiveForm validates, clips, and preserves deep spectra") {
  Algebra alg({3});
  // small negative eigenvalue within the window is clipped
  Mat d = Mat::Identity(3, 3);
  d(2, 2) = cplx(-1e-13, 0.0);
  PositiveForm f(alg, {d});
  CHECK(testo::lambda_min(f.densities[0]) >= 0.0);

  // a genuinely negative eigenvalue throws
  Mat bad = Mat::Identity(3, 3);
  bad(2, 2) = cplx(-0.1, 0.0);
  CHECK_THROWS_AS(PositiveForm(alg, {bad}), NotPositive);

  // tiny positive eigenvalues must survive construction untouched
  Mat deep = Mat::Zero(3, 3);
  deep(0, 0) = cplx(1.0, 0.0);
  deep(1, 1) = cplx(1e-16, 0.0);
  deep(2, 2) = cplx(1e-19, 0.0);
  PositiveForm g(alg, {deep});
  CHECK(g.densities[0](1, 1).real() == doctest::Approx(1e-16).epsilon(1e-6));
  CHECK(g.densities[0](2, 2).real() == doctest::Approx(1e-19).epsilon(1e-6));
}

TEST_CASE("norm1, support, faithfulness") {
  Algebra alg({2, 2});
  Mat d0 = testo::diag_real({0.25, 0.0});
  Mat d1 = testo::diag_real({0.5, 0.25});
  PositiveForm f(alg, {d0, d1});
  CHECK(f.norm1() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(!f.is_faithful());
  AlgElement s = f.support();
  CHECK(svd(s.blocks[0]).rank == 1);
  CHECK(svd(s.blocks[1]).rank == 2);
  PositiveForm g(alg, {d1, d1});
  CHECK(g.is_faithful());
}

TEST_CASE("evaluate is the blockwise trace pairing") {
  Algebra alg({2});
  Mat d = testo::diag_real({0.7, 0.3});
  PositiveForm f(alg, {d});
  Mat x(2, 2);
  x << cplx(1, 0), cplx(2, 1), cplx(0, 0), cplx(-1, 0);
  cplx v = evaluate(f, AlgElement(alg, {x}));
  CHECK(std::abs(v - cplx(0.7 - 0.3, 0.0)) < 1e-14);
  // linearity
  Rng rng(3);
  AlgElement a = random_element(alg, rng);
  AlgElement b = random_element(alg, rng);
  cplx lhs = evaluate(f, a + b);
  cplx rhs = evaluate(f, a) + evaluate(f, b);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("mvn_precedes is blockwise rank comparison") {
  Algebra alg({3});
  Rng rng(9);
  AlgElement p(alg, {random_projection(3, 1, rng)});
  AlgElement q(alg, {random_projection(3, 2, rng)});
  CHECK(mvn_precedes(p, q));
  CHECK(!mvn_precedes(q, p));
  CHECK(mvn_precedes(p, p));
  AlgElement notp(alg, {Mat(2.0 * Mat::Identity(3, 3))});
  CHECK_THROWS_AS(mvn_precedes(notp, q), NotProjection);
}

TEST_CASE("centralizer membership for faithful forms") {
  Algebra alg({3});
  Rng rng(13);
  Mat c = random_psd(3, 3, rng) + 0.1 * Mat::Identity(3, 3);
  PositiveForm rho(alg, {c});
  // any polynomial in the density commutes
  AlgElement fn(alg, {Mat(c * c + 0.5 * c)});
  CHECK(centralizer_contains(rho, fn));
  // a generic element does not
  AlgElement g = random_element(alg, rng);
  CHECK(!centralizer_contains(rho, g));
  // identity always does
  CHECK(centralizer_contains(rho, AlgElement::identity(alg)));

  PositiveForm nonfaithful(alg, {Mat(testo::diag_real({1.0, 1.0, 0.0}))});
  CHECK_THROWS_AS(centralizer_contains(nonfaithful, g), NotFaithful);
}

TEST_CASE("conjugate_form has density x d x*") {
  Algebra alg({2, 3});
  Rng rng(17);
  PositiveForm nu = random_form(alg, rng);
  AlgElement x = random_element(alg, rng);
  PositiveForm out = conjugate_form(nu, x);
  for (int i = 0; i < alg.blocks(); ++i) {
    Mat want = x.blocks[i] * nu.densities[i] * x.blocks[i].adjoint();
    CHECK(fro(Mat(out.densities[i] - want)) < 1e-11 * std::max(1.0, fro(want)));
  }
}
