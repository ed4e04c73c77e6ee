#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "piso/error.hpp"
#include "piso/exponents.hpp"
#include "piso/random.hpp"

using namespace piso;
using doctest::Approx;

TEST_CASE("exponent construction rejects the endpoints") {
  CHECK_THROWS_AS(PExponent{1.0}, PreconditionError);
  CHECK_THROWS_AS(PExponent{0.5}, PreconditionError);
  CHECK_THROWS_AS(PExponent{INFINITY}, PreconditionError);
  CHECK_THROWS_AS(PExponent{NAN}, PreconditionError);
  CHECK(PExponent(1.0000001).value() > 1.0);
}

TEST_CASE("theta") {
  CHECK(theta(PExponent(2.0)) == 0.0);
  CHECK(theta(PExponent(1.5)) == Approx(1.0 / 3.0).epsilon(1e-15));
  // p = 4 has conjugate 4/3, whose weight is 1/2
  CHECK(theta(PExponent(4.0)) == Approx(0.5).epsilon(1e-15));
  CHECK(theta(PExponent(4.0 / 3.0)) == Approx(0.5).epsilon(1e-14));
}

TEST_CASE("conjugate") {
  CHECK(conjugate(PExponent(2.0)).value() == 2.0);
  CHECK(conjugate(PExponent(1.5)).value() == Approx(3.0).epsilon(1e-14));
  CHECK(conjugate(PExponent(4.0 / 3.0)).value() == Approx(4.0).epsilon(1e-14));
}

TEST_CASE("exponent properties over random p") {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const PExponent p(1.0 + 0.001 + 20.0 * rng.uniform());
    const PExponent q = conjugate(p);
    CHECK(std::abs(1.0 / p.value() + 1.0 / q.value() - 1.0) <= 1e-12);
    CHECK(std::abs(conjugate(q).value() - p.value()) <= 1e-12 * p.value());
    CHECK(std::abs(theta(p) - theta(q)) <= 1e-12);
    CHECK(theta(p) >= 0.0);
    CHECK(theta(p) < 1.0);
  }
}

TEST_CASE("lens membership") {
  CHECK(lens_contains({0.9, 0.0}, 0.3, 0.0));
  CHECK_FALSE(lens_contains({0.0, 0.5}, 0.3, 0.0));
  CHECK_FALSE(lens_contains({1.1, 0.0}, 0.9, 0.0));
  CHECK(lens_contains({0.0, 0.3 + 1e-9}, 0.3, 1e-8));
  CHECK_THROWS_AS(lens_contains({0.0, 0.0}, 1.0, 0.0), PreconditionError);
  CHECK_THROWS_AS(lens_contains({0.0, 0.0}, 0.5, -1.0), PreconditionError);

  const LensRegion lens(0.4);
  for (auto z : {std::complex<double>(0.3, 0.2), {0.95, 0.1}, {-0.2, 0.41}, {0.1, 0.9}}) {
    CHECK(lens.contains(z) == lens.contains(std::conj(z)));
    CHECK(lens.contains(z) == lens.contains(-z));
  }
}

TEST_CASE("ellipse membership") {
  CHECK(ellipse_contains({0.0, 0.0}, 2));
  CHECK_FALSE(ellipse_contains({0.0, 0.5}, 2));  // semi-minor axis endpoint
  CHECK_FALSE(ellipse_contains({2.0, 0.0}, 2));
  CHECK_THROWS_AS(ellipse_contains({0.0, 0.0}, 1), PreconditionError);

  const PytlikEllipse e(2);
  CHECK(e.focus() == Approx(std::sqrt(3.0) / 2.0));
  CHECK(e.semi_minor() == 0.5);
  CHECK(e.contains({0.0, 0.499}));
}

TEST_CASE("semi-minor axis identity") {
  // sqrt(1 - c^2) = (r-1)/r since 1 - (2r-1)/r^2 = ((r-1)/r)^2
  for (int r = 2; r <= 1'000'000; r += (r < 1000 ? 1 : 997)) {
    const PytlikEllipse e(r);
    const double c = e.focus();
    CHECK(c > 0.0);
    CHECK(c < 1.0);
    REQUIRE(std::abs(std::sqrt(1.0 - c * c) - e.semi_minor()) <= 1e-10);
  }
}

TEST_CASE("witness examples") {
  SUBCASE("p = 2") {
    const Witness w = pytlik_witness(PExponent(2.0));
    CHECK(w.r == 2);
    CHECK(w.z0.real() == 0.0);
    CHECK(w.z0.imag() == Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("p = 1.5") {
    const Witness w = pytlik_witness(PExponent(1.5));
    CHECK(w.r == 2);
    CHECK(w.z0.imag() == Approx(5.0 / 12.0).epsilon(1e-14));
  }
  SUBCASE("p = 1.05") {
    const Witness w = pytlik_witness(PExponent(1.05));
    CHECK(w.r == 11);
    CHECK(w.z0.imag() == Approx(0.5 * (2.0 / 1.05 - 1.0 + 10.0 / 11.0)).epsilon(1e-14));
    CHECK(w.z0.imag() == Approx(0.9070).epsilon(1e-4));
  }
  CHECK_THROWS_AS(pytlik_witness(PExponent(3.0)), PreconditionError);
}

TEST_CASE("witness properties over random p in (1, 2]") {
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const double pv = 1.0 + 1e-3 + (1.0 - 1e-3) * rng.uniform();
    const PExponent p(pv);
    const Witness w = pytlik_witness(p);
    const PytlikEllipse e(w.r);
    CHECK(w.z0.imag() > theta(p));
    CHECK(e.focal_sum(w.z0) <= 2.0 - 1e-12);
    CHECK_FALSE(lens_contains(w.z0, theta(p), 0.0));
    if (w.r > 2) CHECK_FALSE(theta(p) < static_cast<double>(w.r - 2) / (w.r - 1));
  }
}
