#include "piso/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "piso/error.hpp"
#include "piso/random.hpp"

namespace piso {

namespace {

double round_key(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

Spectrum eigenvalues(const ComplexMatrix& m, double tol, std::size_t cap) {
  require(m.rows() == m.cols() && m.rows() > 0, "eigenvalues need a nonempty square matrix");
  require(static_cast<std::size_t>(m.rows()) <= cap, "matrix exceeds the dense eigensolver cap");
  require(m.allFinite(), "matrix has non-finite entries");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericError("QR iteration did not converge");

  Spectrum s;
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const ComplexVector v = vectors.col(k).normalized();
    s.residual = std::max(s.residual, (m * v - values[k] * v).norm());
    s.eigenvalues.push_back(values[k]);
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](Complex a, Complex b) {
    const double ar = round_key(a.real()), br = round_key(b.real());
    if (ar != br) return ar < br;
    return round_key(a.imag()) < round_key(b.imag());
  });
  if (!(s.residual <= tol))
    throw NumericError("eigen-residual " + std::to_string(s.residual) + " exceeds tolerance");
  return s;
}

SparseRadius spectral_radius_sparse(const CayleyBall& ball, double tol, int max_iter) {
  require(tol > 0.0, "tolerance must be positive");
  const std::size_t n = ball.size();
  const double w = 1.0 / (2.0 * ball.rank());
  SparseRadius out;
  if (n == 1) return out;

  // The graph is bipartite, so ±ρ are both eigenvalues; iterating with
  // μ₁ + I makes the Perron value strictly dominant.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> ax(n);
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::int32_t j : ball.neighbors(i))
        if (j >= 0) acc += x[static_cast<std::size_t>(j)];
      ax[i] = w * acc;
    }
    double rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) rho += x[i] * ax[i];
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) res2 += (ax[i] - rho * x[i]) * (ax[i] - rho * x[i]);

    out.radius = rho;
    out.residual = rho > 0.0 ? std::sqrt(res2) / rho : std::numeric_limits<double>::infinity();
    out.iterations = it;
    if (out.residual <= tol) return out;

    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += ax[i];
      norm2 += x[i] * x[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : x) v *= inv;
  }
  throw NumericError("sparse power iteration did not converge in " +
                     std::to_string(max_iter) + " steps");
}

double kesten_radius(int r) {
  require(r >= 1, "need r >= 1");
  return std::sqrt(2.0 * r - 1.0) / r;
}

LensTrial lens_margins(const GeneratorFamily& fam, PExponent p) {
  LensTrial t;
  const double th = theta(p);
  try {
    const Spectrum s = eigenvalues(mu1_of_representation(fam));
    for (Complex z : s.eigenvalues) {
      t.max_abs = std::max(t.max_abs, std::abs(z));
      t.max_im = std::max(t.max_im, std::abs(z.imag()));
    }
    t.margin_abs = 1.0 - t.max_abs;
    t.margin_im = th - t.max_im;
  } catch (const NumericError& e) {
    t.failed = true;
    t.diagnostic = e.what();
  }
  return t;
}

LensReport lens_experiment(PExponent p, int r, int d, int trials, std::uint64_t seed,
                           double tol) {
  require(r >= 1 && d >= 1, "lens experiment needs r >= 1 and d >= 1");
  require(trials >= 1, "lens experiment needs at least one trial");
  require(tol >= 0.0, "tolerance must be nonnegative");

  LensReport rep;
  rep.p = p.value();
  rep.r = r;
  rep.d = d;
  rep.theta = theta(p);
  rep.tol = tol;
  rep.worst_margin_abs = std::numeric_limits<double>::infinity();
  rep.worst_margin_im = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(k));
    LensTrial t = lens_margins(random_isometry_family(r, d, s), p);
    t.trial = k;
    t.seed = s;
    if (t.failed) {
      ++rep.failures;
    } else {
      rep.worst_margin_abs = std::min(rep.worst_margin_abs, t.margin_abs);
      rep.worst_margin_im = std::min(rep.worst_margin_im, t.margin_im);
      if (t.margin_abs < -tol || t.margin_im < -tol) ++rep.violations;
    }
    rep.trials.push_back(std::move(t));
  }
  return rep;
}

}  // namespace piso
