#pragma once

#include <span>
#include <vector>

#include "piso/exponents.hpp"
#include "piso/matrix.hpp"

namespace piso {

/// ‖x‖_p for p in [1, inf]; p = inf gives the max modulus.
double vector_pnorm(const ComplexVector& x, double p);

/// The 2x2 matrix [[1, i alpha], [i alpha, 1]].
ComplexMatrix a_alpha(double alpha);

enum class Endpoint { One, Infinity };

/// Max column (One) or max row (Infinity) absolute sum.
double opnorm_endpoint(const ComplexMatrix& m, Endpoint which);

/// Largest singular value.
double opnorm_2(const ComplexMatrix& m);

struct NormEstimate {
  double lower = 0.0;  ///< attained ‖Mx‖_p / ‖x‖_p
  double upper = 0.0;  ///< Riesz-Thorin bound; equals lower at p = 2
  int iterations = 0;
  bool converged = false;
};

struct BoydOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  /// Extra seeded random starts on top of the all-ones start and the
  /// leading coordinate vectors.
  int random_starts = 8;
  int basis_starts = 8;
};

/// One run of the dual-vector fixed-point iteration from a given start.
struct BoydTrace {
  double value = 0.0;
  ComplexVector x;              ///< maximizing iterate, ‖x‖_p = 1
  std::vector<double> history;  ///< quotient after each step, nondecreasing
  int iterations = 0;
  bool converged = false;
};

/// x -> phase(x) |x|^{p-1}, scaled to unit q-norm. The pairing
/// sum x_i conj(d_i) equals ‖x‖_p. Zero input maps to zero.
ComplexVector dual_vector(const ComplexVector& x, double p);

BoydTrace boyd_iterate(const ComplexMatrix& m, PExponent p, const ComplexVector& start,
                       double tol, int max_iter);

/// Lower bound on ‖M‖_{p->p} from several Boyd runs; upper from interpolation.
NormEstimate opnorm_boyd(const ComplexMatrix& m, PExponent p, const BoydOptions& opts = {});
NormEstimate opnorm_boyd(const ComplexMatrix& m, PExponent p, double tol, int max_iter);

/// Riesz-Thorin bound for p in [1, inf): ‖M‖_1^t ‖M‖_2^{1-t} with t = 2/p - 1
/// when p <= 2, and ‖M‖_inf^t ‖M‖_2^{1-t} with t = 1 - 2/p when p > 2.
double interpolation_upper_bound(const ComplexMatrix& m, double p);
double opnorm_interp_upper(const ComplexMatrix& m, PExponent p);

struct LemmaEstimate {
  double interp;        ///< ‖A‖_1^θ ‖A‖_2^{1-θ}
  double linear_bound;  ///< 1 + θ|α| + (1-θ) α²/2
  bool ok;
};

/// Checks the interpolation estimate for A(alpha), p in [1, 2].
LemmaEstimate lemma_estimate_check(double alpha, double p);

/// Evaluates both sides of the p-space matrix inequality for X = ℓ^p_d:
///   sum_i ‖sum_j M_ij x_j‖_p^p  <=  sum_k ‖x_k‖_p^p.
struct PSpaceSides {
  double lhs;
  double rhs;
};
PSpaceSides pspace_sides(const ComplexMatrix& m, std::span<const ComplexVector> xs, double p);

/// True iff the inequality holds up to 1e-9. M must be a p-contraction
/// (checked with opnorm_boyd); xs must have one vector per column of M.
bool pspace_inequality_check(const ComplexMatrix& m, std::span<const ComplexVector> xs,
                             PExponent p);

}  // namespace piso
