#include "piso/pnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "piso/error.hpp"
#include "piso/random.hpp"

namespace piso {

double vector_pnorm(const ComplexVector& x, double p) {
  if (x.size() == 0) return 0.0;
  const double scale = x.cwiseAbs().maxCoeff();
  if (std::isinf(p) || scale == 0.0) return scale;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x[i]) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

ComplexMatrix a_alpha(double alpha) {
  require(std::isfinite(alpha), "alpha must be finite");
  ComplexMatrix a(2, 2);
  a << 1.0, kI * alpha, kI * alpha, 1.0;
  return a;
}

double opnorm_endpoint(const ComplexMatrix& m, Endpoint which) {
  require(m.size() > 0, "matrix must be nonempty");
  const RealMatrix abs = m.cwiseAbs();
  return which == Endpoint::One ? abs.colwise().sum().maxCoeff()
                                : abs.rowwise().sum().maxCoeff();
}

double opnorm_2(const ComplexMatrix& m) {
  require(m.size() > 0, "matrix must be nonempty");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (!s.allFinite()) throw NumericError("singular value decomposition did not converge");
  return s.size() == 0 ? 0.0 : s[0];
}

ComplexVector dual_vector(const ComplexVector& x, double p) {
  ComplexVector d = ComplexVector::Zero(x.size());
  const double scale = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return d;
  // Work with x / max|x| so that |x|^{p-1} stays in range for p far from 2.
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a > 0.0) d[i] = (x[i] / a) * std::pow(a / scale, p - 1.0);
  }
  const double q = p / (p - 1.0);
  return d / vector_pnorm(d, q);
}

BoydTrace boyd_iterate(const ComplexMatrix& m, PExponent p, const ComplexVector& start,
                       double tol, int max_iter) {
  require(m.rows() > 0 && m.cols() == start.size(), "start vector has wrong length");
  require(tol > 0.0, "tolerance must be positive");
  const double pv = p.value();
  const double q = p.conjugate_value();

  BoydTrace trace;
  trace.x = start / vector_pnorm(start, pv);
  trace.value = vector_pnorm(m * trace.x, pv);
  trace.history.push_back(trace.value);

  const ComplexMatrix adj = m.adjoint();
  ComplexVector x = trace.x;
  double previous = trace.value;
  for (int it = 1; it <= max_iter; ++it) {
    const ComplexVector y = m * x;
    const ComplexVector w = adj * dual_vector(y, pv);
    if (w.cwiseAbs().maxCoeff() == 0.0) break;
    x = dual_vector(w, q);
    const double value = vector_pnorm(m * x, pv);
    trace.iterations = it;
    // The quotient cannot drop in exact arithmetic; keep the best iterate.
    if (value > trace.value) {
      trace.value = value;
      trace.x = x;
    }
    trace.history.push_back(trace.value);
    if (std::abs(value - previous) <= tol * value) {
      trace.converged = true;
      break;
    }
    previous = value;
  }
  return trace;
}

NormEstimate opnorm_boyd(const ComplexMatrix& m, PExponent p, const BoydOptions& opts) {
  require(m.size() > 0, "matrix must be nonempty");
  require(opts.tol > 0.0, "tolerance must be positive");
  NormEstimate est;
  est.upper = opnorm_interp_upper(m, p);
  if (p.value() == 2.0) {
    est.lower = est.upper = opnorm_2(m);
    est.converged = true;
    return est;
  }

  const Eigen::Index n = m.cols();
  std::vector<ComplexVector> starts;
  ComplexVector ones(n);
  for (Eigen::Index j = 0; j < n; ++j)
    ones[j] = Complex(1.0 + 1e-3 * static_cast<double>(j + 1) / static_cast<double>(n),
                      1e-3 * std::sin(static_cast<double>(j + 1)));
  starts.push_back(ones);
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(n, opts.basis_starts); ++j)
    starts.push_back(ComplexVector::Unit(n, j));
  Rng rng(0x0b0d5eedULL);
  for (int k = 0; k < opts.random_starts; ++k) {
    ComplexVector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = Complex(rng.gaussian(), rng.gaussian());
    starts.push_back(v);
  }

  bool first = true;
  for (const auto& s : starts) {
    const BoydTrace t = boyd_iterate(m, p, s, opts.tol, opts.max_iter);
    if (first || t.value > est.lower) {
      est.lower = t.value;
      est.iterations = t.iterations;
      est.converged = t.converged;
      first = false;
    }
  }
  // Rounding can push the attained quotient a hair past the bound.
  est.upper = std::max(est.upper, est.lower);
  return est;
}

NormEstimate opnorm_boyd(const ComplexMatrix& m, PExponent p, double tol, int max_iter) {
  BoydOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  return opnorm_boyd(m, p, opts);
}

double interpolation_upper_bound(const ComplexMatrix& m, double p) {
  require(p >= 1.0 && std::isfinite(p), "interpolation bound needs p in [1, inf)");
  const double two = opnorm_2(m);
  if (p <= 2.0) {
    const double t = 2.0 / p - 1.0;
    return std::pow(opnorm_endpoint(m, Endpoint::One), t) * std::pow(two, 1.0 - t);
  }
  const double t = 1.0 - 2.0 / p;
  return std::pow(opnorm_endpoint(m, Endpoint::Infinity), t) * std::pow(two, 1.0 - t);
}

double opnorm_interp_upper(const ComplexMatrix& m, PExponent p) {
  return interpolation_upper_bound(m, p.value());
}

LemmaEstimate lemma_estimate_check(double alpha, double p) {
  require(p >= 1.0 && p <= 2.0, "the interpolation estimate is stated for p in [1, 2]");
  const double t = 2.0 / p - 1.0;
  const double interp = interpolation_upper_bound(a_alpha(alpha), p);
  const double bound = 1.0 + t * std::abs(alpha) + (1.0 - t) * alpha * alpha / 2.0;
  return {interp, bound, interp <= bound + 1e-12};
}

PSpaceSides pspace_sides(const ComplexMatrix& m, std::span<const ComplexVector> xs, double p) {
  require(m.rows() == m.cols(), "p-space check needs a square matrix");
  require(static_cast<Eigen::Index>(xs.size()) == m.cols(),
          "need one vector per matrix column");
  const Eigen::Index d = xs.empty() ? 0 : xs.front().size();
  for (const auto& x : xs) require(x.size() == d, "vectors must share a dimension");

  PSpaceSides sides{0.0, 0.0};
  for (const auto& x : xs) sides.rhs += std::pow(vector_pnorm(x, p), p);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ComplexVector acc = ComplexVector::Zero(d);
    for (Eigen::Index j = 0; j < m.cols(); ++j) acc += m(i, j) * xs[static_cast<std::size_t>(j)];
    sides.lhs += std::pow(vector_pnorm(acc, p), p);
  }
  return sides;
}

bool pspace_inequality_check(const ComplexMatrix& m, std::span<const ComplexVector> xs,
                             PExponent p) {
  require(m.rows() == m.cols() && m.rows() > 0, "p-space check needs a square matrix");
  require(opnorm_boyd(m, p).lower <= 1.0 + 1e-9, "matrix is not a p-contraction");
  const PSpaceSides s = pspace_sides(m, xs, p.value());
  return s.lhs <= s.rhs + 1e-9;
}

}  // namespace piso
