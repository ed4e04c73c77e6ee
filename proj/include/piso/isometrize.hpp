#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "piso/exponents.hpp"
#include "piso/finite_group.hpp"
#include "piso/matrix.hpp"

namespace piso {

/// A representation of an amenable group small enough to average over:
/// either a finite group with one matrix per element, or Z with n -> T^n.
/// Group elements are `long`: table indices for finite groups, integers for Z.
class AmenableRep {
 public:
  enum class Kind { FiniteGroup, Integers };

  /// Checks π(g)π(h) = π(gh) to 1e-9 elementwise. `generators` defaults to
  /// every non-identity element.
  static AmenableRep finite(FiniteGroup group, std::vector<ComplexMatrix> matrices,
                            std::vector<long> generators = {});
  static AmenableRep integers(ComplexMatrix t);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<long>& generators() const { return generators_; }
  const std::optional<FiniteGroup>& group() const { return group_; }

  /// π(g). For Z this is T^g by repeated squaring.
  ComplexMatrix matrix(long g) const;
  /// Every element of a finite group; throws for Z.
  std::vector<long> whole_group() const;

 private:
  AmenableRep() = default;

  Kind kind_ = Kind::FiniteGroup;
  Eigen::Index dim_ = 0;
  std::optional<FiniteGroup> group_;
  std::vector<ComplexMatrix> matrices_;
  ComplexMatrix t_;
  ComplexMatrix t_inv_;
  std::vector<long> generators_;
};

/// The window [-n, n] of Z.
std::vector<long> integer_window(long n);

/// ‖x‖_new = ‖stack x‖_p with stack the rows |F|^{-1/p} π(g), g in F, so
/// ‖x‖_new^p is the average of ‖π(g)x‖_p^p over the window.
class AveragedNorm {
 public:
  AveragedNorm(ComplexMatrix stack, std::vector<long> window, PExponent p);

  const ComplexMatrix& stack() const { return stack_; }
  const std::vector<long>& window() const { return window_; }
  PExponent exponent() const { return p_; }
  double operator()(const ComplexVector& x) const;

 private:
  ComplexMatrix stack_;
  std::vector<long> window_;
  PExponent p_;
};

/// Throws PreconditionError on an empty window or a rank-deficient stack.
AveragedNorm folner_norm(const AmenableRep& rep, const std::vector<long>& window, PExponent p);

/// Largest relative change |‖π(g)x‖_new - ‖x‖_new| / ‖x‖_new over the rep's
/// generators and sampled x. Random samples are refined by projected Boyd
/// steps, and both π(g) and π(g)^{-1} are pushed in their growing direction.
double isometry_defect(const AmenableRep& rep, const AveragedNorm& norm, int samples,
                       std::uint64_t seed);

/// x -> max over the window of ‖π(g)x‖_p.
class SupNorm {
 public:
  SupNorm(std::vector<ComplexMatrix> matrices, std::vector<long> window, PExponent p);

  const std::vector<long>& window() const { return window_; }
  double operator()(const ComplexVector& x) const;

 private:
  std::vector<ComplexMatrix> matrices_;
  std::vector<long> window_;
  PExponent p_;
};

SupNorm sup_norm(const AmenableRep& rep, const std::vector<long>& window, PExponent p);

/// Sampled relative defect of the sup norm under the rep's generators.
double sup_norm_defect(const AmenableRep& rep, const SupNorm& norm, int samples,
                       std::uint64_t seed);

struct UniformBound {
  double value = 0.0;  ///< max over the window of the Boyd lower bound on ‖π(g)‖_p
  std::size_t window_size = 0;
  /// False when the representation provably grows: for Z, T or T^{-1} has
  /// spectral radius above 1, or T is not diagonalizable with unimodular
  /// spectrum (polynomial growth). Finite groups are always bounded.
  bool bounded = true;
};

UniformBound uniform_bound(const AmenableRep& rep, const std::vector<long>& window, PExponent p);

/// Q1 diag(1, ..., cond) Q2 with seeded random orthogonal Q1, Q2: a real
/// d x d matrix of 2-norm condition number `cond`, singular values spaced
/// geometrically.
ComplexMatrix conditioned_matrix(Eigen::Index d, double cond, std::uint64_t seed);

/// S diag(e^{i phi_k}) S^{-1}: a Z-representation conjugate to an isometry.
ComplexMatrix conjugated_rotation(const ComplexMatrix& s, const std::vector<double>& phases);

}  // namespace piso
