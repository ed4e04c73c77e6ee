#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "piso/error.hpp"
#include "piso/pnorm.hpp"
#include "test_util.hpp"

using namespace piso;
using piso::testing::random_matrix;
using piso::testing::random_vector;
using doctest::Approx;

TEST_CASE("a_alpha") {
  CHECK(a_alpha(0.0).isApprox(ComplexMatrix::Identity(2, 2)));
  const ComplexMatrix a = a_alpha(0.5);
  CHECK(a(0, 0) == Complex(1.0, 0.0));
  CHECK(a(0, 1) == Complex(0.0, 0.5));
  CHECK(a(1, 0) == Complex(0.0, 0.5));
  CHECK(a(1, 1) == Complex(1.0, 0.0));
  CHECK(a_alpha(-0.5)(1, 0) == Complex(0.0, -0.5));
  CHECK_THROWS_AS(a_alpha(NAN), PreconditionError);
}

TEST_CASE("vector p-norms") {
  ComplexVector x(3);
  x << 3.0, Complex(0.0, 4.0), 0.0;
  CHECK(vector_pnorm(x, 1.0) == Approx(7.0));
  CHECK(vector_pnorm(x, 2.0) == Approx(5.0));
  CHECK(vector_pnorm(x, INFINITY) == 4.0);
  CHECK(vector_pnorm(1e200 * x, 2.0) == Approx(5e200));
}

TEST_CASE("endpoint norms") {
  CHECK(opnorm_endpoint(a_alpha(0.5), Endpoint::One) == Approx(1.5));
  CHECK(opnorm_endpoint(a_alpha(0.5), Endpoint::Infinity) == Approx(1.5));
  CHECK(opnorm_endpoint(ComplexMatrix::Identity(4, 4), Endpoint::One) == 1.0);
  CHECK(opnorm_endpoint(ComplexMatrix::Identity(4, 4), Endpoint::Infinity) == 1.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -2.0;
  CHECK(opnorm_endpoint(d, Endpoint::One) == 3.0);
  ComplexMatrix rect(2, 3);
  rect << 1.0, 2.0, 3.0, 4.0, 5.0, -6.0;
  CHECK(opnorm_endpoint(rect, Endpoint::One) == 9.0);
  CHECK(opnorm_endpoint(rect, Endpoint::Infinity) == 15.0);
}

TEST_CASE("2-norm") {
  CHECK(opnorm_2(a_alpha(0.5)) == Approx(std::sqrt(1.25)).epsilon(1e-12));
  CHECK(opnorm_2(a_alpha(1.0)) == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(opnorm_2(ComplexMatrix::Identity(3, 3)) == Approx(1.0).epsilon(1e-14));
  for (int k = 0; k <= 40; ++k) {
    const double alpha = -2.0 + 0.1 * k;
    CHECK(std::abs(opnorm_2(a_alpha(alpha)) - std::sqrt(1.0 + alpha * alpha)) <= 1e-9);
  }
}

TEST_CASE("Boyd lower bound examples") {
  const PExponent p15(1.5);
  const NormEstimate id = opnorm_boyd(ComplexMatrix::Identity(3, 3), p15);
  CHECK(id.lower == Approx(1.0).epsilon(1e-12));
  CHECK(id.converged);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  CHECK(opnorm_boyd(d, PExponent(1.7)).lower == Approx(2.0).epsilon(1e-12));

  // Exact at p = 2.
  const NormEstimate two = opnorm_boyd(a_alpha(0.5), PExponent(2.0));
  CHECK(two.lower == two.upper);
  CHECK(two.lower == Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("Boyd on A(0.5), p = 1.5 matches the sphere grid oracle") {
  const ComplexMatrix a = a_alpha(0.5);
  const double oracle = piso::testing::sphere_grid_max_2x2(a, 1.5);
  const NormEstimate est = opnorm_boyd(a, PExponent(1.5));
  INFO("oracle " << oracle << " boyd " << est.lower);
  CHECK(std::abs(est.lower - oracle) <= 1e-6);
  CHECK(est.lower <= est.upper);
}

TEST_CASE("Boyd iterates are monotone and attained") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 6, 6);
    const PExponent p(1.2 + 2.5 * rng.uniform());
    const BoydTrace t = boyd_iterate(m, p, random_vector(rng, 6), 1e-12, 200);
    for (std::size_t k = 1; k < t.history.size(); ++k) CHECK(t.history[k] >= t.history[k - 1]);
    CHECK(vector_pnorm(t.x, p.value()) == Approx(1.0).epsilon(1e-12));
    CHECK(vector_pnorm(m * t.x, p.value()) == Approx(t.value).epsilon(1e-12));
  }
}

TEST_CASE("iteration cap reports non-convergence but a valid bound") {
  Rng rng(8);
  const ComplexMatrix m = random_matrix(rng, 8, 8);
  const NormEstimate est = opnorm_boyd(m, PExponent(1.3), 1e-14, 1);
  CHECK_FALSE(est.converged);
  CHECK(est.lower > 0.0);
  CHECK(est.lower <= opnorm_boyd(m, PExponent(1.3)).lower + 1e-12);
}

TEST_CASE("dual vector pairing") {
  Rng rng(4);
  for (double p : {1.1, 1.5, 3.0, 7.0}) {
    const ComplexVector x = random_vector(rng, 5);
    const ComplexVector d = dual_vector(x, p);
    CHECK(vector_pnorm(d, p / (p - 1.0)) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(x.dot(d) - vector_pnorm(x, p)) <= 1e-12 * vector_pnorm(x, p));
  }
  CHECK(dual_vector(ComplexVector::Zero(3), 1.5).isZero());
}

TEST_CASE("interpolation upper bound") {
  const ComplexMatrix a = a_alpha(0.5);
  const double expected = std::pow(1.5, 1.0 / 3.0) * std::pow(std::sqrt(1.25), 2.0 / 3.0);
  CHECK(opnorm_interp_upper(a, PExponent(1.5)) == Approx(expected).epsilon(1e-14));
  CHECK(opnorm_interp_upper(a, PExponent(1.5)) == Approx(1.23311).epsilon(1e-5));

  Rng rng(17);
  const ComplexMatrix m = random_matrix(rng, 4, 4);
  CHECK(opnorm_interp_upper(m, PExponent(2.0)) == Approx(opnorm_2(m)).epsilon(1e-14));
  CHECK(interpolation_upper_bound(m, 1.0) == Approx(opnorm_endpoint(m, Endpoint::One)).epsilon(1e-14));
  CHECK_THROWS_AS(interpolation_upper_bound(m, 0.9), PreconditionError);
}

TEST_CASE("sandwich: Boyd lower <= interpolation upper") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 5, 5);
    for (double pv : {1.1, 1.5, 1.9, 3.0, 6.0}) {
      const NormEstimate est = opnorm_boyd(m, PExponent(pv));
      CHECK(est.lower <= opnorm_interp_upper(m, PExponent(pv)) + 1e-9);
    }
  }
}

TEST_CASE("p near 1 approaches the max column sum") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 5, 5);
    const double one = opnorm_endpoint(m, Endpoint::One);
    CHECK(std::abs(opnorm_boyd(m, PExponent(1.0 + 1e-6)).lower - one) <= 1e-3);
  }
}

TEST_CASE("duality: ‖M‖_p = ‖M*‖_q") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    for (double pv : {1.3, 1.7, 2.5}) {
      const PExponent p(pv);
      const double lhs = opnorm_boyd(m, p).lower;
      const double rhs = opnorm_boyd(m.adjoint(), conjugate(p)).lower;
      CHECK(std::abs(lhs - rhs) <= 1e-5 * std::max(1.0, lhs));
    }
  }
}

TEST_CASE("homogeneity") {
  Rng rng(41);
  const ComplexMatrix m = random_matrix(rng, 5, 5);
  const PExponent p(1.6);
  for (double lambda : {0.01, 0.7, 3.0, 250.0}) {
    const ComplexMatrix s = lambda * m;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    CHECK(rel(opnorm_endpoint(s, Endpoint::One), lambda * opnorm_endpoint(m, Endpoint::One)) <= 1e-10);
    CHECK(rel(opnorm_2(s), lambda * opnorm_2(m)) <= 1e-10);
    CHECK(rel(opnorm_interp_upper(s, p), lambda * opnorm_interp_upper(m, p)) <= 1e-10);
    CHECK(rel(opnorm_boyd(s, p).lower, lambda * opnorm_boyd(m, p).lower) <= 1e-10);
  }
}

TEST_CASE("lemma estimate check") {
  const LemmaEstimate e = lemma_estimate_check(0.5, 1.5);
  CHECK(e.interp == Approx(1.23311).epsilon(1e-5));
  CHECK(e.linear_bound == Approx(1.25).epsilon(1e-15));
  CHECK(e.ok);

  for (double p : {1.0, 1.3, 2.0}) {
    const LemmaEstimate z = lemma_estimate_check(0.0, p);
    CHECK(z.interp == Approx(1.0).epsilon(1e-14));
    CHECK(z.linear_bound == 1.0);
    CHECK(z.ok);
  }
  CHECK(lemma_estimate_check(0.1, 1.1).ok);
  CHECK_THROWS_AS(lemma_estimate_check(0.1, 2.5), PreconditionError);
}

TEST_CASE("p-space inequality: permutations give equality") {
  Rng rng(43);
  ComplexMatrix perm = ComplexMatrix::Zero(4, 4);
  perm(1, 0) = perm(2, 1) = perm(3, 2) = perm(0, 3) = 1.0;
  std::vector<ComplexVector> xs;
  for (int k = 0; k < 4; ++k) xs.push_back(random_vector(rng, 5));
  const PSpaceSides s = pspace_sides(perm, xs, 1.5);
  CHECK(s.lhs == Approx(s.rhs).epsilon(1e-13));
  CHECK(pspace_inequality_check(perm, xs, PExponent(1.5)));
  CHECK(pspace_inequality_check(ComplexMatrix::Identity(4, 4), xs, PExponent(1.2)));
}

TEST_CASE("p-space inequality: scaled DFT over random tuples") {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const PExponent p(1.5);
  const ComplexMatrix m = h / opnorm_interp_upper(h, p);
  // The bound is sharp for this matrix.
  CHECK(opnorm_boyd(m, p).lower == Approx(1.0).epsilon(1e-9));

  Rng rng(47);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ComplexVector> xs{random_vector(rng, 5), random_vector(rng, 5)};
    if (!pspace_inequality_check(m, xs, p)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("p-space inequality rejects bad input") {
  std::vector<ComplexVector> xs{ComplexVector::Ones(3), ComplexVector::Ones(3)};
  CHECK_THROWS_AS(pspace_inequality_check(ComplexMatrix::Identity(3, 3), xs, PExponent(1.5)),
                  PreconditionError);
  std::vector<ComplexVector> ragged{ComplexVector::Ones(3), ComplexVector::Ones(2)};
  CHECK_THROWS_AS(pspace_inequality_check(ComplexMatrix::Identity(2, 2), ragged, PExponent(1.5)),
                  PreconditionError);
  CHECK_THROWS_AS(pspace_inequality_check(2.0 * ComplexMatrix::Identity(2, 2), xs, PExponent(1.5)),
                  PreconditionError);
}
