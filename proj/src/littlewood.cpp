#include "piso/littlewood.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

namespace piso {

GroupIndexSet GroupIndexSet::finite(const FiniteGroup& group) {
  GroupIndexSet set;
  for (int g = 0; g < group.order(); ++g) set.elements_.emplace_back(g);
  set.group_ = group;
  return set;
}

GroupIndexSet GroupIndexSet::ball(const CayleyBall& ball) {
  GroupIndexSet set;
  for (const Word& w : ball.words()) set.elements_.emplace_back(w);
  return set;
}

GroupElement GroupIndexSet::quotient(std::size_t s, std::size_t t) const {
  if (group_) {
    const int a = std::get<int>(elements_[s]);
    const int b = std::get<int>(elements_[t]);
    return group_->multiply(group_->inverse(a), b);
  }
  return multiply(inverse(std::get<Word>(elements_[s])), std::get<Word>(elements_[t]));
}

LittlewoodInstance build_instance(const GroupFunction& f, const GroupIndexSet& index) {
  const auto n = static_cast<Eigen::Index>(index.size());
  require(n > 0, "index set must be nonempty");
  for (const auto& [g, v] : f) require(std::isfinite(v), "function values must be finite");

  LittlewoodInstance inst{index, f, RealMatrix::Zero(n, n)};
  std::map<GroupElement, double> seen;
  for (Eigen::Index s = 0; s < n; ++s) {
    for (Eigen::Index t = 0; t < n; ++t) {
      const GroupElement q = index.quotient(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
      const auto it = f.find(q);
      const double v = it == f.end() ? 0.0 : it->second;
      inst.F(s, t) = v;
      const auto [pos, fresh] = seen.emplace(q, v);
      require(fresh || pos->second == v, "F(s,t) is not a function of s^-1 t");
    }
  }
  return inst;
}

namespace {

double max_row_abs_sum(const RealMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }
double max_col_abs_sum(const RealMatrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

T1Result from_decomposition(const RealMatrix& f1, const RealMatrix& f2, LpStatus status) {
  T1Result r;
  r.f1 = f1;
  r.f2 = f2;
  r.c1 = max_row_abs_sum(f1);
  r.c2 = max_col_abs_sum(f2);
  r.value = r.c1 + r.c2;
  r.status = status;
  return r;
}

}  // namespace

T1Result t1_norm(const LittlewoodInstance& instance, const T1Options& opts) {
  const RealMatrix& F = instance.F;
  const Eigen::Index n = F.rows();
  const RealMatrix zero = RealMatrix::Zero(n, F.cols());

  struct Entry {
    Eigen::Index s, t;
    double weight;
  };
  std::vector<Entry> entries;
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < F.cols(); ++t)
      if (F(s, t) != 0.0) entries.push_back({s, t, std::abs(F(s, t))});
  if (entries.empty()) return from_decomposition(zero, zero, LpStatus::Optimal);
  require(entries.size() + 2 <= opts.max_variables, "Littlewood LP exceeds the variable cap");

  LinearProgram lp;
  std::vector<int> var(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) var[k] = lp.add_variable(0.0);
  const int c1 = lp.add_variable(1.0);
  const int c2 = lp.add_variable(1.0);

  std::vector<std::vector<LinearProgram::Term>> by_row(static_cast<std::size_t>(n));
  std::vector<std::vector<LinearProgram::Term>> by_col(static_cast<std::size_t>(F.cols()));
  std::vector<double> col_weight(static_cast<std::size_t>(F.cols()), 0.0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    by_row[static_cast<std::size_t>(entries[k].s)].emplace_back(var[k], 1.0);
    by_col[static_cast<std::size_t>(entries[k].t)].emplace_back(var[k], -1.0);
    col_weight[static_cast<std::size_t>(entries[k].t)] += entries[k].weight;
  }
  // sum_t a(s,t) <= c1
  for (auto& terms : by_row) {
    if (terms.empty()) continue;
    terms.emplace_back(c1, -1.0);
    lp.add_constraint(std::move(terms), Sense::LessEqual, 0.0);
  }
  // sum_s (|F| - a)(s,t) <= c2
  for (std::size_t t = 0; t < by_col.size(); ++t) {
    if (by_col[t].empty()) continue;
    by_col[t].emplace_back(c2, -1.0);
    lp.add_constraint(std::move(by_col[t]), Sense::LessEqual, -col_weight[t]);
  }
  for (std::size_t k = 0; k < entries.size(); ++k)
    lp.add_constraint({{var[k], 1.0}}, Sense::LessEqual, entries[k].weight);

  const LpResult res = lp.minimize(opts.simplex);
  if (res.status == LpStatus::Infeasible || res.status == LpStatus::Unbounded)
    throw NumericError(std::string("Littlewood LP reported ") + to_string(res.status));
  if (res.x.empty()) {
    // Stalled before reaching a feasible basis: fall back to a one-sided split.
    const double rows = max_row_abs_sum(F);
    const double cols = max_col_abs_sum(F);
    return rows <= cols ? from_decomposition(F, zero, res.status)
                        : from_decomposition(zero, F, res.status);
  }

  RealMatrix f1 = zero;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const double a = std::clamp(res.x[static_cast<std::size_t>(var[k])], 0.0, e.weight);
    f1(e.s, e.t) = std::copysign(a, F(e.s, e.t));
  }
  const RealMatrix f2 = F - f1;
  return from_decomposition(f1, f2, res.status);
}

double verify_decomposition(const LittlewoodInstance& instance, const RealMatrix& f1,
                            const RealMatrix& f2) {
  const RealMatrix& F = instance.F;
  require(f1.rows() == F.rows() && f1.cols() == F.cols() && f2.rows() == F.rows() &&
              f2.cols() == F.cols(),
          "decomposition has the wrong shape");
  const double mismatch = (f1 + f2 - F).cwiseAbs().maxCoeff();
  if (!(mismatch <= 1e-8))
    throw InvalidCertificate("f1 + f2 differs from F by " + std::to_string(mismatch));
  return max_row_abs_sum(f1) + max_col_abs_sum(f2);
}

double lq_norm(const GroupFunction& f, double q) {
  require(q >= 1.0 && std::isfinite(q), "q must lie in [1, inf)");
  double sum = 0.0;
  for (const auto& [g, v] : f) sum += std::pow(std::abs(v), q);
  return std::pow(sum, 1.0 / q);
}

double lq_t1_ratio(const GroupFunction& f, double q, double t1) {
  require(t1 >= 0.0, "T1 norm must be nonnegative");
  require(t1 > 0.0, "ratio undefined for the zero function");
  return lq_norm(f, q) / t1;
}

GroupFunction sphere_indicator(int r, int length) {
  const CayleyBall ball(r, length);
  GroupFunction f;
  for (const Word& w : ball.words())
    if (static_cast<int>(w.size()) == length) f.emplace(w, 1.0);
  return f;
}

namespace {

nlohmann::json element_json(const GroupElement& g) {
  if (const int* i = std::get_if<int>(&g)) return *i;
  return std::get<Word>(g);
}

}  // namespace

void write_result_json(std::ostream& out, const LittlewoodInstance& instance,
                       const T1Result& result) {
  nlohmann::json j;
  j["elements"] = nlohmann::json::array();
  for (const auto& g : instance.index.elements()) j["elements"].push_back(element_json(g));
  j["support"] = nlohmann::json::array();
  for (const auto& [g, v] : instance.f)
    j["support"].push_back({{"element", element_json(g)}, {"value", v}});
  j["value"] = result.value;
  j["c1"] = result.c1;
  j["c2"] = result.c2;
  j["status"] = to_string(result.status);
  out << j.dump(2) << '\n';
}

}  // namespace piso
