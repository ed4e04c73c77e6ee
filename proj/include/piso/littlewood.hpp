#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "piso/error.hpp"
#include "piso/finite_group.hpp"
#include "piso/freegroup.hpp"
#include "piso/matrix.hpp"
#include "piso/simplex.hpp"

namespace piso {

/// A group element: an element index of a finite group, or a reduced word.
using GroupElement = std::variant<int, Word>;

/// Finitely supported real function on a group.
using GroupFunction = std::map<GroupElement, double>;

class InvalidCertificate : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Ordered finite set of group elements with the map (s, t) -> s^{-1} t.
class GroupIndexSet {
 public:
  /// Every element of a finite group.
  static GroupIndexSet finite(const FiniteGroup& group);
  /// The words of a Cayley ball (s^{-1} t may leave the ball).
  static GroupIndexSet ball(const CayleyBall& ball);

  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  GroupElement quotient(std::size_t s, std::size_t t) const;

 private:
  std::vector<GroupElement> elements_;
  std::optional<FiniteGroup> group_;
};

/// F(s, t) = f(s^{-1} t) over an index set.
struct LittlewoodInstance {
  GroupIndexSet index;
  GroupFunction f;
  RealMatrix F;
};

/// Builds F and checks exhaustively that equal quotients carry equal entries.
LittlewoodInstance build_instance(const GroupFunction& f, const GroupIndexSet& index);

struct T1Result {
  double value = 0.0;  ///< c1 + c2
  RealMatrix f1;
  RealMatrix f2;
  double c1 = 0.0;  ///< max row abs-sum of f1
  double c2 = 0.0;  ///< max column abs-sum of f2
  LpStatus status = LpStatus::Optimal;
};

struct T1Options {
  SimplexOptions simplex;
  /// Cap on LP variables.
  std::size_t max_variables = 200000;
};

/// min  sup_s sum_t |f1(s,t)| + sup_t sum_s |f2(s,t)|  over f1 + f2 = F.
///
/// Some optimal decomposition splits each entry F(s,t) as a·sgn + (|F|-a)·sgn
/// with 0 <= a <= |F|, so the LP only carries one variable per nonzero entry
/// plus c1, c2. On an iteration limit the last feasible decomposition is
/// returned, which is an upper bound for the optimum.
T1Result t1_norm(const LittlewoodInstance& instance, const T1Options& opts = {});

/// Certified upper bound sup-row-abs-sum(f1) + sup-col-abs-sum(f2).
/// Throws InvalidCertificate unless f1 + f2 = F within 1e-8.
double verify_decomposition(const LittlewoodInstance& instance, const RealMatrix& f1,
                            const RealMatrix& f2);

/// (sum |f(g)|^q)^{1/q}
double lq_norm(const GroupFunction& f, double q);

/// ‖f‖_q / t1. Throws PreconditionError for t1 = 0 (then f = 0 and the ratio
/// is undefined) or q < 1.
double lq_t1_ratio(const GroupFunction& f, double q, double t1);

/// Indicator of the 2r words of length one in F_r.
GroupFunction sphere_indicator(int r, int length = 1);

/// Instance plus result as JSON: elements, support of f, value, c1, c2, status.
void write_result_json(std::ostream& out, const LittlewoodInstance& instance,
                       const T1Result& result);

}  // namespace piso
