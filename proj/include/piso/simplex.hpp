#pragma once

#include <utility>
#include <vector>

namespace piso {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

struct SimplexOptions {
  double tol = 1e-9;
  int max_iter = 200000;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit = 50;
  int refactor_every = 100;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  /// Primal solution. For IterationLimit in phase two this is the last
  /// feasible basis; after a phase-one stall it is empty.
  std::vector<double> x;
  int iterations = 0;
};

/// min c^T x  subject to  rows (<=, =, >=) rhs,  x >= 0.
///
/// Solved by a two-phase revised simplex: the basis inverse is kept dense and
/// updated by elementary row operations, columns are stored sparse, pricing is
/// Dantzig's rule with a switch to Bland's rule after a run of degenerate
/// pivots. The basis is refactorized periodically from scratch.
class LinearProgram {
 public:
  using Term = std::pair<int, double>;

  int add_variable(double cost);
  void add_constraint(std::vector<Term> terms, Sense sense, double rhs);

  int num_variables() const { return static_cast<int>(cost_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }

  LpResult minimize(const SimplexOptions& opts = {}) const;

 private:
  struct Row {
    std::vector<Term> terms;
    Sense sense;
    double rhs;
  };
  std::vector<double> cost_;
  std::vector<Row> rows_;
};

}  // namespace piso
