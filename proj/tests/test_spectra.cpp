#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "piso/error.hpp"
#include "piso/spectra.hpp"
#include "test_util.hpp"

using namespace piso;
using doctest::Approx;

TEST_CASE("dense eigenvalue examples") {
  const Spectrum id = eigenvalues(ComplexMatrix::Identity(3, 3));
  REQUIRE(id.eigenvalues.size() == 3);
  for (Complex z : id.eigenvalues) CHECK(std::abs(z - 1.0) < 1e-14);

  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const Spectrum s = eigenvalues(swap);
  CHECK(s.eigenvalues[0].real() == Approx(-1.0));
  CHECK(s.eigenvalues[1].real() == Approx(1.0));

  // star K_{1,4}: adjacency eigenvalues {-2, 0, 0, 0, 2} scaled by 1/4
  const Spectrum star = eigenvalues(mu1_truncated(CayleyBall(2, 1)));
  const double expected[] = {-0.5, 0.0, 0.0, 0.0, 0.5};
  REQUIRE(star.eigenvalues.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(star.eigenvalues[k] - expected[k]) < 1e-12);
}

TEST_CASE("eigenvalues are sorted and residuals small") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix m = piso::testing::random_matrix(rng, 50, 50);
    const Spectrum s = eigenvalues(m, 1e-8);
    CHECK(s.residual <= 1e-8);
    Complex sum = 0.0;
    for (Complex z : s.eigenvalues) sum += z;
    CHECK(std::abs(sum - m.trace()) <= 1e-8 * 50);
    for (std::size_t k = 1; k < s.eigenvalues.size(); ++k)
      CHECK(s.eigenvalues[k - 1].real() <= s.eigenvalues[k].real() + 1e-12);
  }
}

TEST_CASE("eigenvalue preconditions") {
  CHECK_THROWS_AS(eigenvalues(ComplexMatrix::Zero(2, 3)), PreconditionError);
  CHECK_THROWS_AS(eigenvalues(ComplexMatrix::Identity(5, 5), 1e-8, 4), PreconditionError);
  // Residual contract: an absurd tolerance is reported, not ignored.
  Rng rng(4);
  CHECK_THROWS_AS(eigenvalues(1e6 * piso::testing::random_matrix(rng, 30, 30), 1e-30),
                  NumericError);
}

TEST_CASE("sparse Perron value") {
  CHECK(spectral_radius_sparse(CayleyBall(2, 0)).radius == 0.0);
  CHECK(spectral_radius_sparse(CayleyBall(2, 1)).radius == Approx(0.5).epsilon(1e-10));
  for (int n = 1; n <= 10; ++n) {
    const double expected = std::cos(std::numbers::pi / (2.0 * n + 2.0));
    CHECK(spectral_radius_sparse(CayleyBall(1, n)).radius == Approx(expected).epsilon(1e-9));
  }
  // agrees with the dense solver on small balls
  for (int n = 2; n <= 4; ++n) {
    const CayleyBall ball(2, n);
    const Spectrum s = eigenvalues(mu1_truncated(ball));
    CHECK(spectral_radius_sparse(ball).radius ==
          Approx(s.eigenvalues.back().real()).epsilon(1e-9));
  }
  CHECK_THROWS_AS(spectral_radius_sparse(CayleyBall(2, 5), 1e-12, 3), NumericError);
}

TEST_CASE("sparse radius grows monotonically below the Kesten radius") {
  double previous = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double rho = spectral_radius_sparse(CayleyBall(2, n)).radius;
    CHECK(rho > previous);
    CHECK(rho <= kesten_radius(2) + 1e-9);
    previous = rho;
  }
}

TEST_CASE("Kesten radius") {
  CHECK(kesten_radius(2) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(kesten_radius(2) == Approx(0.8660254).epsilon(1e-7));
  CHECK(kesten_radius(1) == 1.0);
  CHECK(kesten_radius(5) == Approx(0.6).epsilon(1e-15));
  CHECK_THROWS_AS(kesten_radius(0), PreconditionError);
}

TEST_CASE("lens margins for fixed families") {
  const PExponent p(1.5);
  const GeneratorFamily ids({ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)});
  const LensTrial t = lens_margins(ids, p);
  CHECK(t.max_abs == Approx(1.0));
  CHECK(t.margin_abs == Approx(0.0).epsilon(1e-12));
  CHECK(t.margin_im == Approx(1.0 / 3.0));

  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const LensTrial s = lens_margins(GeneratorFamily({swap}), p);
  CHECK(s.max_im <= 1e-12);
  CHECK(s.margin_im == Approx(1.0 / 3.0));
}

TEST_CASE("lens experiment") {
  const LensReport rep = lens_experiment(PExponent(1.5), 2, 20, 100, 7);
  CHECK(rep.trials.size() == 100);
  CHECK(rep.violations == 0);
  CHECK(rep.failures == 0);
  CHECK(rep.ok());
  CHECK(rep.worst_margin_abs >= -1e-8);
  CHECK(rep.worst_margin_im >= -1e-8);

  const LensReport again = lens_experiment(PExponent(1.5), 2, 20, 100, 7);
  for (std::size_t k = 0; k < rep.trials.size(); ++k) {
    CHECK(rep.trials[k].seed == again.trials[k].seed);
    CHECK(rep.trials[k].max_abs == again.trials[k].max_abs);
    CHECK(rep.trials[k].max_im == again.trials[k].max_im);
  }
  CHECK_THROWS_AS(lens_experiment(PExponent(1.5), 2, 20, 0, 7), PreconditionError);
}

TEST_CASE("real signed permutations give a real spectrum") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ComplexMatrix> gens;
    for (int k = 0; k < 3; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(12, 12);
      const auto perm = rng.permutation(12);
      for (int j = 0; j < 12; ++j) g(perm[j], j) = rng.uniform() < 0.5 ? -1.0 : 1.0;
      gens.push_back(g);
    }
    const Spectrum s = eigenvalues(mu1_of_representation(GeneratorFamily(gens)));
    for (Complex z : s.eigenvalues) CHECK(std::abs(z.imag()) <= 1e-10);
  }
}
