#include "piso/exponents.hpp"

#include <cmath>
#include <string>

#include "piso/error.hpp"

namespace piso {

PExponent::PExponent(double p) : p_(p) {
  require(std::isfinite(p) && p > 1.0,
          "exponent must satisfy 1 < p < inf, got " + std::to_string(p));
}

double theta(PExponent p) { return std::abs(2.0 / p.value() - 1.0); }

PExponent conjugate(PExponent p) { return PExponent(p.conjugate_value()); }

LensRegion::LensRegion(double height) : theta(height) {
  require(height >= 0.0 && height < 1.0, "lens height must lie in [0, 1)");
}

bool LensRegion::contains(std::complex<double> z, double tol) const {
  return std::abs(z) <= 1.0 + tol && std::abs(z.imag()) <= theta + tol;
}

PytlikEllipse::PytlikEllipse(int generators) : r(generators) {
  require(generators >= 2, "ellipse needs r >= 2");
}

double PytlikEllipse::focus() const {
  return std::sqrt(2.0 * r - 1.0) / r;
}

double PytlikEllipse::semi_minor() const {
  return static_cast<double>(r - 1) / r;
}

double PytlikEllipse::focal_sum(std::complex<double> z) const {
  const double c = focus();
  return std::abs(z - c) + std::abs(z + c);
}

bool PytlikEllipse::contains(std::complex<double> z) const {
  return focal_sum(z) < 2.0;
}

bool lens_contains(std::complex<double> z, double theta, double tol) {
  require(tol >= 0.0, "tolerance must be nonnegative");
  return LensRegion(theta).contains(z, tol);
}

bool ellipse_contains(std::complex<double> z, int r) {
  return PytlikEllipse(r).contains(z);
}

Witness pytlik_witness(PExponent p) {
  require(p.value() <= 2.0, "witness requires p in (1, 2]; pass the conjugate exponent");
  const double th = theta(p);
  int r = 2;
  while (!(th < static_cast<double>(r - 1) / r)) ++r;

  const PytlikEllipse ellipse(r);
  const std::complex<double> z0{0.0, 0.5 * (th + ellipse.semi_minor())};

  Witness w{r, z0, th, 2.0 - ellipse.focal_sum(z0), z0.imag() - th};
  if (!(w.ellipse_margin >= 1e-12) || !(w.lens_margin > 0.0))
    throw NumericError("witness lost its margin to rounding at r = " + std::to_string(r));
  return w;
}

}  // namespace piso
