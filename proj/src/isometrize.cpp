#include "piso/isometrize.hpp"

#include <algorithm>
#include <cmath>

#include "piso/error.hpp"
#include "piso/pnorm.hpp"
#include "piso/random.hpp"

namespace piso {

AmenableRep AmenableRep::finite(FiniteGroup group, std::vector<ComplexMatrix> matrices,
                                std::vector<long> generators) {
  const int n = group.order();
  require(static_cast<int>(matrices.size()) == n, "need one matrix per group element");
  const Eigen::Index d = matrices.front().rows();
  for (const auto& m : matrices) {
    require(m.rows() == d && m.cols() == d && d > 0, "matrices must be square of equal size");
    require(m.allFinite(), "matrix has non-finite entries");
    require(m.fullPivLu().isInvertible(), "representation matrix is singular");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const ComplexMatrix diff = matrices[g] * matrices[h] - matrices[group.multiply(g, h)];
      require(diff.cwiseAbs().maxCoeff() <= 1e-9, "matrices do not form a homomorphism");
    }
  if (generators.empty())
    for (long g = 1; g < n; ++g) generators.push_back(g);
  for (long g : generators) require(g >= 0 && g < n, "generator is not a group element");

  AmenableRep rep;
  rep.kind_ = Kind::FiniteGroup;
  rep.dim_ = d;
  rep.group_ = std::move(group);
  rep.matrices_ = std::move(matrices);
  rep.generators_ = std::move(generators);
  return rep;
}

AmenableRep AmenableRep::integers(ComplexMatrix t) {
  require(t.rows() == t.cols() && t.rows() > 0, "T must be square");
  require(t.allFinite(), "T has non-finite entries");
  const auto lu = t.fullPivLu();
  require(lu.isInvertible(), "T is singular");
  AmenableRep rep;
  rep.kind_ = Kind::Integers;
  rep.dim_ = t.rows();
  rep.t_inv_ = lu.inverse();
  rep.t_ = std::move(t);
  rep.generators_ = {1};
  return rep;
}

ComplexMatrix AmenableRep::matrix(long g) const {
  if (kind_ == Kind::FiniteGroup) {
    require(g >= 0 && g < group_->order(), "element outside the group");
    return matrices_[static_cast<std::size_t>(g)];
  }
  ComplexMatrix base = g >= 0 ? t_ : t_inv_;
  unsigned long e = g >= 0 ? static_cast<unsigned long>(g) : static_cast<unsigned long>(-g);
  ComplexMatrix out = ComplexMatrix::Identity(dim_, dim_);
  while (e) {
    if (e & 1UL) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

std::vector<long> AmenableRep::whole_group() const {
  require(kind_ == Kind::FiniteGroup, "only finite groups have a whole-group window");
  std::vector<long> all(static_cast<std::size_t>(group_->order()));
  for (long g = 0; g < static_cast<long>(all.size()); ++g) all[static_cast<std::size_t>(g)] = g;
  return all;
}

std::vector<long> integer_window(long n) {
  require(n >= 0, "window radius must be nonnegative");
  std::vector<long> w;
  for (long k = -n; k <= n; ++k) w.push_back(k);
  return w;
}

AveragedNorm::AveragedNorm(ComplexMatrix stack, std::vector<long> window, PExponent p)
    : stack_(std::move(stack)), window_(std::move(window)), p_(p) {
  require(!window_.empty(), "window must be nonempty");
  Eigen::JacobiSVD<ComplexMatrix> svd(stack_);
  const auto& s = svd.singularValues();
  require(s.size() == stack_.cols() && s[s.size() - 1] > 1e-12 * s[0],
          "averaging stack is rank deficient");
}

double AveragedNorm::operator()(const ComplexVector& x) const {
  return vector_pnorm(stack_ * x, p_.value());
}

AveragedNorm folner_norm(const AmenableRep& rep, const std::vector<long>& window, PExponent p) {
  require(!window.empty(), "window must be nonempty");
  const Eigen::Index d = rep.dim();
  const auto size = static_cast<Eigen::Index>(window.size());
  const double weight = std::pow(static_cast<double>(size), -1.0 / p.value());
  ComplexMatrix stack(size * d, d);
  for (Eigen::Index k = 0; k < size; ++k)
    stack.block(k * d, 0, d, d) = weight * rep.matrix(window[static_cast<std::size_t>(k)]);
  return AveragedNorm(std::move(stack), window, p);
}

namespace {

ComplexVector random_vector(Rng& rng, Eigen::Index d) {
  ComplexVector x(d);
  for (Eigen::Index i = 0; i < d; ++i) x[i] = Complex(rng.gaussian(), rng.gaussian());
  return x;
}

// Pushes ‖C x‖_p / ‖B x‖_p upward with Boyd steps on K = C B^+, each step
// projected back onto range(B). Only attained ratios are reported.
double ascend_ratio(const ComplexMatrix& c, const ComplexMatrix& b, const ComplexMatrix& pinv,
                    ComplexVector x, double p, int steps) {
  const double q = p / (p - 1.0);
  auto ratio = [&](const ComplexVector& v) {
    return vector_pnorm(c * v, p) / vector_pnorm(b * v, p);
  };
  double best = ratio(x);
  for (int s = 0; s < steps; ++s) {
    const ComplexVector z = c * x;
    const ComplexVector w = pinv.adjoint() * (c.adjoint() * dual_vector(z, p));
    if (w.cwiseAbs().maxCoeff() == 0.0) break;
    const ComplexVector y = dual_vector(w, q);
    x = pinv * y;
    if (x.cwiseAbs().maxCoeff() == 0.0) break;
    best = std::max(best, ratio(x));
  }
  return best;
}

}  // namespace

double isometry_defect(const AmenableRep& rep, const AveragedNorm& norm, int samples,
                       std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  const double p = norm.exponent().value();
  const ComplexMatrix& b = norm.stack();
  const ComplexMatrix pinv = b.completeOrthogonalDecomposition().pseudoInverse();
  Rng rng(seed);

  double defect = 0.0;
  for (long g : rep.generators()) {
    const ComplexMatrix fwd = rep.matrix(g);
    const ComplexMatrix c_up = b * fwd;
    const ComplexMatrix c_down = b * fwd.fullPivLu().inverse();
    for (int s = 0; s < samples; ++s) {
      const ComplexVector x = random_vector(rng, rep.dim());
      const double base = vector_pnorm(b * x, p);
      defect = std::max(defect, std::abs(vector_pnorm(c_up * x, p) - base) / base);
      // sup r - 1 from the forward map, 1 - 1/sup r' from the inverse map
      defect = std::max(defect, ascend_ratio(c_up, b, pinv, x, p, 8) - 1.0);
      defect = std::max(defect, 1.0 - 1.0 / ascend_ratio(c_down, b, pinv, x, p, 8));
    }
  }
  return std::max(defect, 0.0);
}

SupNorm::SupNorm(std::vector<ComplexMatrix> matrices, std::vector<long> window, PExponent p)
    : matrices_(std::move(matrices)), window_(std::move(window)), p_(p) {
  require(!window_.empty() && window_.size() == matrices_.size(),
          "sup norm needs one matrix per window element");
}

double SupNorm::operator()(const ComplexVector& x) const {
  double best = 0.0;
  for (const auto& m : matrices_) best = std::max(best, vector_pnorm(m * x, p_.value()));
  return best;
}

SupNorm sup_norm(const AmenableRep& rep, const std::vector<long>& window, PExponent p) {
  require(!window.empty(), "window must be nonempty");
  std::vector<ComplexMatrix> mats;
  mats.reserve(window.size());
  for (long g : window) mats.push_back(rep.matrix(g));
  return SupNorm(std::move(mats), window, p);
}

double sup_norm_defect(const AmenableRep& rep, const SupNorm& norm, int samples,
                       std::uint64_t seed) {
  require(samples >= 1, "need at least one sample");
  Rng rng(seed);
  double defect = 0.0;
  for (long g : rep.generators()) {
    const ComplexMatrix m = rep.matrix(g);
    for (int s = 0; s < samples; ++s) {
      const ComplexVector x = random_vector(rng, rep.dim());
      const double base = norm(x);
      defect = std::max(defect, std::abs(norm(m * x) - base) / base);
    }
  }
  return defect;
}

UniformBound uniform_bound(const AmenableRep& rep, const std::vector<long>& window, PExponent p) {
  require(!window.empty(), "window must be nonempty");
  UniformBound ub;
  ub.window_size = window.size();
  for (long g : window) ub.value = std::max(ub.value, opnorm_boyd(rep.matrix(g), p).lower);

  if (rep.kind() == AmenableRep::Kind::Integers) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(rep.matrix(1));
    if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on T");
    const auto& vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i)
      if (std::abs(std::abs(vals[i]) - 1.0) > 1e-9) ub.bounded = false;
    Eigen::JacobiSVD<ComplexMatrix> svd(es.eigenvectors());
    const auto& s = svd.singularValues();
    if (!(s[s.size() - 1] > 1e-8 * s[0])) ub.bounded = false;
  }
  return ub;
}

ComplexMatrix conditioned_matrix(Eigen::Index d, double cond, std::uint64_t seed) {
  require(d >= 1 && cond >= 1.0, "need d >= 1 and cond >= 1");
  Rng rng(seed);
  auto orthogonal = [&] {
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.gaussian();
    return Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ());
  };
  Eigen::VectorXd s(d);
  for (Eigen::Index i = 0; i < d; ++i)
    s[i] = d == 1 ? 1.0 : std::pow(cond, static_cast<double>(i) / static_cast<double>(d - 1));
  const Eigen::MatrixXd q1 = orthogonal();
  const Eigen::MatrixXd q2 = orthogonal();
  return (q1 * s.asDiagonal() * q2).cast<Complex>();
}

ComplexMatrix conjugated_rotation(const ComplexMatrix& s, const std::vector<double>& phases) {
  require(s.rows() == s.cols() && static_cast<std::size_t>(s.rows()) == phases.size(),
          "need one phase per dimension");
  const auto lu = s.fullPivLu();
  require(lu.isInvertible(), "conjugating matrix is singular");
  ComplexVector diag(s.rows());
  for (std::size_t k = 0; k < phases.size(); ++k) diag[static_cast<Eigen::Index>(k)] = std::polar(1.0, phases[k]);
  return s * diag.asDiagonal() * lu.inverse();
}

}  // namespace piso
