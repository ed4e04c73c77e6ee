#pragma once

#include <complex>
#include <cstdint>

namespace piso {

/// Hölder exponent p in the open interval (1, inf).
class PExponent {
 public:
  /// Throws PreconditionError unless 1 < p < inf.
  explicit PExponent(double p);

  double value() const noexcept { return p_; }
  /// q with 1/p + 1/q = 1.
  double conjugate_value() const noexcept { return p_ / (p_ - 1.0); }

  friend bool operator==(const PExponent&, const PExponent&) = default;

 private:
  double p_;
};

/// |2/p - 1|. For p > 2 this equals the weight of the conjugate exponent.
double theta(PExponent p);

PExponent conjugate(PExponent p);

/// The region B(0,1) ∩ {|Im z| <= theta}.
struct LensRegion {
  double theta;

  explicit LensRegion(double height);
  bool contains(std::complex<double> z, double tol = 0.0) const;
};

/// Ellipse with foci ±sqrt(2r-1)/r, semi-major axis 1, semi-minor (r-1)/r.
struct PytlikEllipse {
  int r;

  explicit PytlikEllipse(int generators);

  double focus() const;
  double semi_minor() const;
  /// |z - c| + |z + c|; the open ellipse is where this is < 2.
  double focal_sum(std::complex<double> z) const;
  bool contains(std::complex<double> z) const;
};

bool lens_contains(std::complex<double> z, double theta, double tol);
bool ellipse_contains(std::complex<double> z, int r);

struct Witness {
  int r;
  std::complex<double> z0;
  double theta;
  /// 2 - focal_sum(z0) (> 0 inside the ellipse).
  double ellipse_margin;
  /// Im(z0) - theta (> 0 outside the lens).
  double lens_margin;
};

/// Smallest r >= 2 with theta(p) < (r-1)/r together with a point of the
/// Pytlik ellipse for that r lying strictly outside the lens. Requires p <= 2.
Witness pytlik_witness(PExponent p);

}  // namespace piso
