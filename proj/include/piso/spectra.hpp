#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "piso/exponents.hpp"
#include "piso/freegroup.hpp"
#include "piso/matrix.hpp"

namespace piso {

struct Spectrum {
  std::vector<Complex> eigenvalues;  ///< sorted by (Re, Im) rounded at 1e-12
  double residual = 0.0;             ///< max ‖Mv - λv‖_2 over unit eigenvectors
};

inline constexpr std::size_t kDenseEigenCap = 2000;

/// Dense eigendecomposition (Hessenberg reduction + shifted QR).
/// Throws NumericError if the solver fails or the residual exceeds tol.
Spectrum eigenvalues(const ComplexMatrix& m, double tol = 1e-8,
                     std::size_t cap = kDenseEigenCap);

struct SparseRadius {
  double radius = 0.0;
  double residual = 0.0;  ///< ‖μ₁x - ρx‖_2 / ρ at the final unit iterate
  int iterations = 0;
};

/// Perron value of mu1_truncated(ball) by shifted power iteration on the
/// neighbor lists; never forms the dense matrix. Stops when the relative
/// eigen-residual drops below tol. Throws NumericError after max_iter.
SparseRadius spectral_radius_sparse(const CayleyBall& ball, double tol = 1e-10,
                                    int max_iter = 1'000'000);

/// sqrt(2r - 1) / r, the norm of μ₁ on ℓ²(F_r).
double kesten_radius(int r);

struct LensTrial {
  int trial = 0;
  std::uint64_t seed = 0;
  double max_abs = 0.0;
  double max_im = 0.0;
  double margin_abs = 0.0;  ///< 1 - max|λ|
  double margin_im = 0.0;   ///< θ - max|Im λ|
  bool failed = false;      ///< eigensolver failure; margins meaningless
  std::string diagnostic;
};

/// Spectrum of μ₁ for the given family measured against the lens for p.
LensTrial lens_margins(const GeneratorFamily& fam, PExponent p);

struct LensReport {
  double p = 0.0;
  int r = 0;
  int d = 0;
  double theta = 0.0;
  double tol = 0.0;
  std::vector<LensTrial> trials;
  double worst_margin_abs = 0.0;
  double worst_margin_im = 0.0;
  int violations = 0;  ///< trials with a margin below -tol
  int failures = 0;    ///< trials the eigensolver could not finish

  bool ok() const { return violations == 0 && failures == 0; }
};

/// Draws `trials` families of r random ℓ^p isometries of dimension d and
/// checks sp(μ₁) against the lens. Trial k uses derive_seed(seed, k).
LensReport lens_experiment(PExponent p, int r, int d, int trials, std::uint64_t seed,
                           double tol = 1e-8);

}  // namespace piso
