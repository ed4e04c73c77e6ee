#include "piso/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "piso/error.hpp"

namespace piso {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

int LinearProgram::add_variable(double cost) {
  require(std::isfinite(cost), "cost must be finite");
  cost_.push_back(cost);
  return num_variables() - 1;
}

void LinearProgram::add_constraint(std::vector<Term> terms, Sense sense, double rhs) {
  require(std::isfinite(rhs), "right-hand side must be finite");
  for (const auto& [j, v] : terms) {
    require(j >= 0 && j < num_variables(), "constraint references unknown variable");
    require(std::isfinite(v), "constraint coefficient must be finite");
  }
  rows_.push_back({std::move(terms), sense, rhs});
}

namespace {

using Column = std::vector<std::pair<int, double>>;
using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct StandardForm {
  int m = 0;
  std::vector<Column> cols;
  std::vector<double> b;
  std::vector<double> cost;
  std::vector<char> artificial;
  std::vector<int> basis;
};

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardForm& sf, const SimplexOptions& opts)
      : sf_(sf), opts_(opts), basis_(sf.basis), pos_(sf.cols.size(), -1) {
    for (int i = 0; i < sf_.m; ++i) pos_[static_cast<std::size_t>(basis_[i])] = i;
    refactor();
  }

  LpStatus run(const std::vector<double>& c, bool allow_artificial) {
    const int m = sf_.m;
    const int n = static_cast<int>(sf_.cols.size());
    Eigen::VectorXd cb(m);
    Eigen::VectorXd alpha(m);
    int degenerate_run = 0;
    while (true) {
      if (iterations_ >= opts_.max_iter) return LpStatus::IterationLimit;
      if (since_refactor_ >= opts_.refactor_every) refactor();

      for (int i = 0; i < m; ++i) cb[i] = c[static_cast<std::size_t>(basis_[i])];
      const Eigen::VectorXd y = binv_.transpose() * cb;

      const bool bland = degenerate_run >= opts_.degenerate_limit;
      int entering = -1;
      double best = -opts_.tol;
      for (int j = 0; j < n; ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0) continue;
        if (!allow_artificial && sf_.artificial[static_cast<std::size_t>(j)]) continue;
        double d = c[static_cast<std::size_t>(j)];
        for (const auto& [row, v] : sf_.cols[static_cast<std::size_t>(j)]) d -= y[row] * v;
        if (d < best) {
          entering = j;
          if (bland) break;
          best = d;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      alpha.setZero();
      for (const auto& [row, v] : sf_.cols[static_cast<std::size_t>(entering)])
        alpha += v * binv_.col(row);

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const bool stuck_artificial =
            !allow_artificial && sf_.artificial[static_cast<std::size_t>(basis_[i])];
        double r;
        if (stuck_artificial && std::abs(alpha[i]) > opts_.tol) {
          r = 0.0;  // redundant-row artificial must stay at zero
        } else if (alpha[i] > opts_.tol) {
          r = std::max(xb_[i], 0.0) / alpha[i];
        } else {
          continue;
        }
        bool take = false;
        if (leave < 0 || r < ratio - 1e-12) {
          take = true;
        } else if (r <= ratio + 1e-12) {
          take = bland ? basis_[i] < basis_[leave]
                       : std::abs(alpha[i]) > std::abs(alpha[leave]);
        }
        if (take) {
          leave = i;
          ratio = r;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;

      degenerate_run = ratio <= opts_.tol ? degenerate_run + 1 : 0;
      pivot(leave, entering, alpha);
    }
  }

  /// Pivots basic artificials out wherever a structural column can replace
  /// them. Artificials left behind sit on redundant rows.
  void expel_artificials() {
    const int n = static_cast<int>(sf_.cols.size());
    Eigen::VectorXd alpha(sf_.m);
    for (int i = 0; i < sf_.m; ++i) {
      if (!sf_.artificial[static_cast<std::size_t>(basis_[i])]) continue;
      for (int j = 0; j < n; ++j) {
        if (pos_[static_cast<std::size_t>(j)] >= 0 || sf_.artificial[static_cast<std::size_t>(j)])
          continue;
        double v = 0.0;
        for (const auto& [row, a] : sf_.cols[static_cast<std::size_t>(j)]) v += binv_(i, row) * a;
        if (std::abs(v) > 1e-7) {
          alpha.setZero();
          for (const auto& [row, a] : sf_.cols[static_cast<std::size_t>(j)])
            alpha += a * binv_.col(row);
          pivot(i, j, alpha);
          break;
        }
      }
    }
  }

  double value(const std::vector<double>& c) const {
    double v = 0.0;
    for (int i = 0; i < sf_.m; ++i) v += c[static_cast<std::size_t>(basis_[i])] * xb_[i];
    return v;
  }

  std::vector<double> solution() const {
    std::vector<double> x(sf_.cols.size(), 0.0);
    for (int i = 0; i < sf_.m; ++i) x[static_cast<std::size_t>(basis_[i])] = std::max(xb_[i], 0.0);
    return x;
  }

  int iterations() const { return iterations_; }

 private:
  void refactor() {
    const int m = sf_.m;
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (const auto& [row, v] : sf_.cols[static_cast<std::size_t>(basis_[i])])
        basis_matrix(row, i) = v;
    const auto lu = basis_matrix.fullPivLu();
    if (!lu.isInvertible()) throw NumericError("simplex basis became singular");
    binv_ = lu.inverse();
    xb_ = binv_ * Eigen::Map<const Eigen::VectorXd>(sf_.b.data(), m);
    since_refactor_ = 0;
  }

  void pivot(int r, int q, const Eigen::VectorXd& alpha) {
    const double piv = alpha[r];
    const Eigen::RowVectorXd row = binv_.row(r) / piv;
    const double xr = xb_[r] / piv;
    binv_.noalias() -= alpha * row;
    xb_ -= alpha * xr;
    binv_.row(r) = row;
    xb_[r] = xr;
    for (int i = 0; i < sf_.m; ++i)
      if (xb_[i] < 0.0 && xb_[i] > -1e-11) xb_[i] = 0.0;

    pos_[static_cast<std::size_t>(basis_[r])] = -1;
    basis_[r] = q;
    pos_[static_cast<std::size_t>(q)] = r;
    ++iterations_;
    ++since_refactor_;
  }

  const StandardForm& sf_;
  SimplexOptions opts_;
  std::vector<int> basis_;
  std::vector<int> pos_;
  RowMajor binv_;
  Eigen::VectorXd xb_;
  int iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

LpResult LinearProgram::minimize(const SimplexOptions& opts) const {
  require(opts.tol > 0.0 && opts.max_iter >= 0, "invalid simplex options");
  StandardForm sf;
  sf.m = num_constraints();
  const int nv = num_variables();
  sf.cols.resize(static_cast<std::size_t>(nv));
  sf.cost = cost_;
  sf.artificial.assign(static_cast<std::size_t>(nv), 0);
  sf.b.resize(static_cast<std::size_t>(sf.m));
  sf.basis.resize(static_cast<std::size_t>(sf.m));

  auto add_column = [&](Column col, double c, bool art) {
    sf.cols.push_back(std::move(col));
    sf.cost.push_back(c);
    sf.artificial.push_back(art ? 1 : 0);
    return static_cast<int>(sf.cols.size()) - 1;
  };

  for (int i = 0; i < sf.m; ++i) {
    const Row& row = rows_[static_cast<std::size_t>(i)];
    const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
    Sense sense = row.sense;
    if (sign < 0.0 && sense != Sense::Equal)
      sense = sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
    for (const auto& [j, v] : row.terms)
      if (v != 0.0) sf.cols[static_cast<std::size_t>(j)].emplace_back(i, sign * v);
    sf.b[static_cast<std::size_t>(i)] = sign * row.rhs;

    if (sense == Sense::LessEqual) {
      sf.basis[static_cast<std::size_t>(i)] = add_column({{i, 1.0}}, 0.0, false);
    } else {
      if (sense == Sense::GreaterEqual) add_column({{i, -1.0}}, 0.0, false);
      sf.basis[static_cast<std::size_t>(i)] = add_column({{i, 1.0}}, 0.0, true);
    }
  }

  LpResult result;
  if (sf.m == 0) {
    // Only sign constraints: optimal at zero unless some cost is negative.
    result.x.assign(static_cast<std::size_t>(nv), 0.0);
    const bool unbounded = std::any_of(cost_.begin(), cost_.end(), [](double c) { return c < 0; });
    result.status = unbounded ? LpStatus::Unbounded : LpStatus::Optimal;
    return result;
  }

  RevisedSimplex solver(sf, opts);
  const bool has_artificial =
      std::any_of(sf.artificial.begin(), sf.artificial.end(), [](char a) { return a != 0; });
  if (has_artificial) {
    std::vector<double> phase1(sf.cols.size(), 0.0);
    for (std::size_t j = 0; j < sf.cols.size(); ++j) phase1[j] = sf.artificial[j] ? 1.0 : 0.0;
    const LpStatus s1 = solver.run(phase1, true);
    result.iterations = solver.iterations();
    if (s1 == LpStatus::IterationLimit) {
      result.status = LpStatus::IterationLimit;
      result.objective = std::numeric_limits<double>::infinity();
      return result;
    }
    double scale = 1.0;
    for (double v : sf.b) scale = std::max(scale, std::abs(v));
    if (solver.value(phase1) > 1e-7 * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    solver.expel_artificials();
  }

  result.status = solver.run(sf.cost, false);
  result.iterations = solver.iterations();
  std::vector<double> x = solver.solution();
  x.resize(static_cast<std::size_t>(nv));
  result.objective = 0.0;
  for (int j = 0; j < nv; ++j) result.objective += cost_[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
  result.x = std::move(x);
  return result;
}

}  // namespace piso
