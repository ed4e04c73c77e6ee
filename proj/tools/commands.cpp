#include "commands.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "piso/error.hpp"
#include "piso/exponents.hpp"
#include "piso/finite_group.hpp"
#include "piso/freegroup.hpp"
#include "piso/isometrize.hpp"
#include "piso/littlewood.hpp"
#include "piso/pnorm.hpp"
#include "piso/random.hpp"
#include "piso/spectra.hpp"

namespace piso::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A cell keeps its JSON type; CSV rendering uses %.17g for doubles.
using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width mismatch");
    rows.push_back(std::move(row));
  }
};

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(double v) const { return fmt(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

ordered_json cell_json(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) {
    if (!std::isfinite(*v)) return fmt(*v);
    // Round-trip through %.17g so JSON and CSV carry the same digits.
    return ordered_json::parse(fmt(*v));
  }
  return std::visit([](const auto& v) { return ordered_json(v); }, c);
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += '\n';
  }
  return out;
}

ordered_json table_json(const Table& t) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return render_csv(t);
  return table_json(t).dump(2) + "\n";
}

// ---- parameter parsing ---------------------------------------------------

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError(key + ": not a finite number: '" + s + "'");
  return v;
}

long long to_int(const std::string& key, const std::string& s) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError(key + ": not an integer: '" + s + "'");
  return v;
}

class Params {
 public:
  Params(const CommandSpec& spec, const Settings& settings) {
    for (const auto& p : spec.params) values_[p.key] = p.default_value;
    for (const auto& [k, v] : settings) {
      if (!values_.count(k)) throw UsageError("unknown key for " + spec.name + ": " + k);
      values_[k] = v;
    }
  }

  const std::string& raw(const std::string& key) const { return values_.at(key); }

  double number(const std::string& key) const { return to_double(key, trim(raw(key))); }

  long long integer(const std::string& key, long long lo, long long hi) const {
    const long long v = to_int(key, trim(raw(key)));
    if (v < lo || v > hi)
      throw UsageError(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : split(raw(key))) out.push_back(to_double(key, s));
    if (out.empty()) throw UsageError(key + " must not be empty");
    return out;
  }

  // Comma list of integers or inclusive ranges "a..b".
  std::vector<long long> integers(const std::string& key, long long lo, long long hi) const {
    std::vector<long long> out;
    for (const auto& s : split(raw(key))) {
      const auto dots = s.find("..");
      if (dots == std::string::npos) {
        out.push_back(to_int(key, s));
        continue;
      }
      const long long a = to_int(key, trim(s.substr(0, dots)));
      const long long b = to_int(key, trim(s.substr(dots + 2)));
      if (b < a || b - a > 100000) throw UsageError(key + ": bad range '" + s + "'");
      for (long long v = a; v <= b; ++v) out.push_back(v);
    }
    if (out.empty()) throw UsageError(key + " must not be empty");
    for (long long v : out)
      if (v < lo || v > hi)
        throw UsageError(key + " entries must lie in [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    return out;
  }

  std::string choice(const std::string& key, std::initializer_list<const char*> allowed) const {
    const std::string v = trim(raw(key));
    for (const char* a : allowed)
      if (v == a) return v;
    std::string msg = key + " must be one of:";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw UsageError(msg);
  }

 private:
  std::map<std::string, std::string> values_;
};

double exponent_in(const std::string& key, double v, double hi) {
  if (!(v > 1.0) || v > hi) throw UsageError(key + " entries must lie in (1, " + fmt(hi) + "]");
  return v;
}

double tolerance(const Params& ps, const std::string& key) {
  const double t = ps.number(key);
  if (!(t > 0.0) || t >= 1.0) throw UsageError(key + " must lie in (0, 1)");
  return t;
}

RunResult finish(const Table& t, const std::string& format, bool ok, std::string notes = {}) {
  return {ok ? kExitOk : kExitNumeric, render(t, format), std::move(notes)};
}

// ---- subcommands ---------------------------------------------------------

RunResult lemma_estimate(const Params& ps, std::uint64_t, const std::string& format) {
  std::vector<double> pvals = ps.numbers("p");
  for (double& p : pvals) p = exponent_in("p", p, 2.0);
  const std::vector<double> alphas = ps.numbers("alpha");
  const double tol = tolerance(ps, "tol");

  Table t{{"alpha", "p", "theta", "boyd_lower", "interp_upper", "linear_bound", "sandwich_ok",
           "bound_ok"},
          {}};
  bool all_ok = true;
  for (double alpha : alphas) {
    for (double p : pvals) {
      const PExponent pe(p);
      const NormEstimate boyd = opnorm_boyd(a_alpha(alpha), pe);
      const LemmaEstimate le = lemma_estimate_check(alpha, p);
      const bool sandwich = boyd.converged && boyd.lower <= le.interp + tol;
      const bool bound = le.interp <= le.linear_bound + tol;
      all_ok = all_ok && sandwich && bound;
      t.add({alpha, p, theta(pe), boyd.lower, le.interp, le.linear_bound, sandwich, bound});
    }
  }
  return finish(t, format, all_ok);
}

RunResult lens(const Params& ps, std::uint64_t seed, const std::string& format) {
  const double p = exponent_in("p", ps.number("p"), 1e6);
  const int r = static_cast<int>(ps.integer("r", 1, 64));
  const int d = static_cast<int>(ps.integer("d", 1, 400));
  const int trials = static_cast<int>(ps.integer("trials", 1, 1000000));
  const double tol = tolerance(ps, "tol");

  const LensReport rep = lens_experiment(PExponent(p), r, d, trials, seed, tol);
  Table t{{"trial", "seed", "p", "r", "d", "max_abs", "max_im", "margin_abs", "margin_im"}, {}};
  std::string notes;
  for (const LensTrial& tr : rep.trials) {
    if (tr.failed) {
      notes += "trial " + std::to_string(tr.trial) + ": " + tr.diagnostic + "\n";
      continue;
    }
    t.add({std::int64_t{tr.trial}, tr.seed, p, std::int64_t{r}, std::int64_t{d}, tr.max_abs,
           tr.max_im, tr.margin_abs, tr.margin_im});
  }
  if (rep.violations > 0)
    notes += std::to_string(rep.violations) + " trial(s) outside the lens beyond tol\n";
  return finish(t, format, rep.ok(), notes);
}

RunResult kesten(const Params& ps, std::uint64_t, const std::string& format) {
  const int r = static_cast<int>(ps.integer("r", 1, 64));
  const std::vector<long long> ns = ps.integers("n", 0, 1000);
  const double tol = tolerance(ps, "tol");
  const long long cap = ps.integer("cap", 1, 50'000'000);
  for (long long n : ns)
    if (ball_size(r, static_cast<int>(n)) > static_cast<std::uint64_t>(cap))
      throw UsageError("ball(" + std::to_string(r) + ", " + std::to_string(n) + ") has " +
                       std::to_string(ball_size(r, static_cast<int>(n))) +
                       " words, over cap " + std::to_string(cap));

  const double target = kesten_radius(r);
  Table t{{"n", "ball_size", "radius", "kesten_target", "gap"}, {}};
  bool ok = true;
  double previous = -1.0;
  for (long long n : ns) {
    const CayleyBall ball(r, static_cast<int>(n), static_cast<std::uint64_t>(cap));
    const SparseRadius sr = spectral_radius_sparse(ball, tol);
    if (sr.radius <= previous || sr.radius > target + 1e-9) ok = false;
    previous = sr.radius;
    t.add({std::int64_t{n}, static_cast<std::uint64_t>(ball.size()), sr.radius, target,
           target - sr.radius});
  }
  return finish(t, format, ok, ok ? "" : "radii not strictly increasing or above the target\n");
}

RunResult folner(const Params& ps, std::uint64_t seed, const std::string& format) {
  const std::string group = ps.choice("group", {"s3", "z"});
  const std::string kind = ps.choice("norm", {"average", "sup"});
  const double p = exponent_in("p", ps.number("p"), 1e6);
  const double cond = ps.number("cond");
  if (!(cond >= 1.0) || cond > 1e8) throw UsageError("cond must lie in [1, 1e8]");
  const std::vector<long long> windows = ps.integers("windows", 1, 4096);
  const int samples = static_cast<int>(ps.integer("samples", 1, 100000));
  const std::vector<double> phases = ps.numbers("phases");
  if (group == "z" && phases.size() != 3) throw UsageError("phases needs three angles");

  const PExponent pe(p);
  const ComplexMatrix s = conditioned_matrix(3, cond, derive_seed(seed, 0));
  const std::uint64_t sample_seed = derive_seed(seed, 1);

  std::optional<AmenableRep> rep;
  if (group == "s3") {
    const ComplexMatrix s_inv = s.inverse();
    std::vector<ComplexMatrix> mats;
    for (const auto& m : permutation_representation(3)) mats.push_back(s * m * s_inv);
    rep = AmenableRep::finite(symmetric_group(3), std::move(mats));
  } else {
    rep = AmenableRep::integers(conjugated_rotation(s, phases));
  }

  struct Job {
    std::string label;
    std::vector<long> window;
  };
  std::vector<Job> jobs;
  if (group == "s3") {
    jobs.push_back({"full", rep->whole_group()});
  } else {
    for (long long n : windows) jobs.push_back({std::to_string(n), integer_window(static_cast<long>(n))});
  }

  Table t{{"N", "window_size", "defect", "uniform_bound", "p"}, {}};
  std::vector<double> defects;
  for (const Job& job : jobs) {
    double defect = 0.0;
    if (kind == "average") {
      defect = isometry_defect(*rep, folner_norm(*rep, job.window, pe), samples, sample_seed);
    } else {
      defect = sup_norm_defect(*rep, sup_norm(*rep, job.window, pe), samples, sample_seed);
    }
    const UniformBound ub = uniform_bound(*rep, job.window, pe);
    defects.push_back(defect);
    t.add({job.label, static_cast<std::uint64_t>(job.window.size()), defect, ub.value, p});
  }

  bool ok = true;
  std::string notes;
  if (group == "s3") {
    ok = defects.front() <= 1e-10;
    if (!ok) notes = "full-group defect above 1e-10\n";
  } else {
    for (std::size_t i = 1; i < defects.size(); ++i)
      if (!(defects[i] < defects[i - 1])) ok = false;
    if (!ok) notes = "defect not strictly decreasing over the windows\n";
  }
  return finish(t, format, ok, notes);
}

RunResult littlewood(const Params& ps, std::uint64_t seed, const std::string& format) {
  const std::string group = ps.choice("group", {"zn", "s3", "s4", "ball"});
  const std::string fkind = ps.choice("f", {"delta", "indicator", "random"});
  const int rank = static_cast<int>(ps.integer("rank", 1, 8));
  const int length = static_cast<int>(ps.integer("length", 1, 64));
  std::vector<long long> ns;
  if (group == "zn") ns = ps.integers("n", 1, 300);
  else if (group == "ball") ns = ps.integers("n", 0, 64);
  else ns = {group == "s3" ? 3 : 4};
  if (fkind == "indicator" && group != "ball")
    throw UsageError("f=indicator (sphere indicator) needs group=ball");
  if (group == "ball")
    for (long long n : ns)
      if (ball_size(rank, static_cast<int>(n)) > 300)
        throw UsageError("ball(" + std::to_string(rank) + ", " + std::to_string(n) +
                         ") is too large for the LP (over 300 elements)");

  Table t{{"n", "index_size", "t1_lower", "l1", "l2", "ratio_q2"}, {}};
  ordered_json docs = ordered_json::array();
  bool ok = true;
  std::string notes;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const long long n = ns[k];
    Rng rng(derive_seed(seed, k));
    std::optional<GroupIndexSet> index;
    GroupFunction f;
    if (group == "ball") {
      index = GroupIndexSet::ball(CayleyBall(rank, static_cast<int>(n)));
    } else {
      const FiniteGroup g = group == "zn" ? cyclic_group(static_cast<int>(n))
                                         : symmetric_group(group == "s3" ? 3 : 4);
      index = GroupIndexSet::finite(g);
    }
    if (fkind == "delta") {
      f[group == "ball" ? GroupElement{Word{}} : GroupElement{0}] = 1.0;
    } else if (fkind == "indicator") {
      f = sphere_indicator(rank, length);
    } else if (group == "ball") {
      // Random values on the words of length at most `length` inside the ball.
      const CayleyBall support(rank, std::min<int>(length, static_cast<int>(n)));
      for (const Word& w : support.words()) f[w] = rng.uniform(-1.0, 1.0);
    } else {
      for (const GroupElement& e : index->elements()) f[e] = rng.uniform(-1.0, 1.0);
    }

    const LittlewoodInstance inst = build_instance(f, *index);
    const T1Result res = t1_norm(inst);
    if (res.status != LpStatus::Optimal) {
      ok = false;
      notes += "n=" + std::to_string(n) + ": LP status " + to_string(res.status) + "\n";
    }
    const double l1 = lq_norm(f, 1.0);
    const double l2 = lq_norm(f, 2.0);
    const double ratio = res.value > 0.0 ? lq_t1_ratio(f, 2.0, res.value) : 0.0;
    t.add({std::int64_t{n}, static_cast<std::uint64_t>(inst.index.size()), res.value, l1, l2,
           ratio});
    if (format == "json") {
      std::ostringstream s;
      write_result_json(s, inst, res);
      ordered_json doc = ordered_json::parse(s.str());
      ordered_json row = table_json(Table{t.columns, {t.rows.back()}}).front();
      row["result"] = std::move(doc);
      docs.push_back(std::move(row));
    }
  }
  if (format == "json") return {ok ? kExitOk : kExitNumeric, docs.dump(2) + "\n", notes};
  return finish(t, format, ok, notes);
}

RunResult witness(const Params& ps, std::uint64_t, const std::string& format) {
  std::vector<double> pvals = ps.numbers("p");
  for (double& p : pvals) p = exponent_in("p", p, 1e6);
  Table t{{"p", "theta", "r", "z0_re", "z0_im", "ellipse_margin", "lens_margin"}, {}};
  for (double p : pvals) {
    PExponent pe(p);
    // The lens only depends on theta, which is symmetric under p -> p'.
    if (p > 2.0) pe = conjugate(pe);
    const Witness w = pytlik_witness(pe);
    t.add({p, w.theta, std::int64_t{w.r}, w.z0.real(), w.z0.imag(), w.ellipse_margin,
           w.lens_margin});
  }
  return finish(t, format, true);
}

RunResult pspace_check(const Params& ps, std::uint64_t seed, const std::string& format) {
  std::vector<double> pvals = ps.numbers("p");
  for (double& p : pvals) p = exponent_in("p", p, 1e6);
  const int size = static_cast<int>(ps.integer("size", 1, 32));
  const int d = static_cast<int>(ps.integer("d", 1, 256));
  const int trials = static_cast<int>(ps.integer("trials", 1, 1000000));

  Table t{{"trial", "seed", "p", "lhs", "rhs", "slack", "ok"}, {}};
  bool all_ok = true;
  for (std::size_t pi = 0; pi < pvals.size(); ++pi) {
    const PExponent pe(pvals[pi]);
    for (int k = 0; k < trials; ++k) {
      const std::uint64_t s = derive_seed(derive_seed(seed, pi), static_cast<std::uint64_t>(k));
      Rng rng(s);
      ComplexMatrix m(size, size);
      for (Eigen::Index i = 0; i < size; ++i)
        for (Eigen::Index j = 0; j < size; ++j) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
      // Dividing by an upper bound on the p-norm makes m a p-contraction.
      m /= opnorm_interp_upper(m, pe);
      std::vector<ComplexVector> xs;
      for (int j = 0; j < size; ++j) {
        ComplexVector x(d);
        for (Eigen::Index i = 0; i < d; ++i) x[i] = Complex(rng.gaussian(), rng.gaussian());
        xs.push_back(std::move(x));
      }
      const PSpaceSides sides = pspace_sides(m, xs, pe.value());
      const bool ok = pspace_inequality_check(m, xs, pe);
      all_ok = all_ok && ok;
      t.add({std::int64_t{k}, s, pe.value(), sides.lhs, sides.rhs, sides.rhs - sides.lhs, ok});
    }
  }
  return finish(t, format, all_ok, all_ok ? "" : "inequality violated\n");
}

using Handler = RunResult (*)(const Params&, std::uint64_t, const std::string&);

Handler handler_for(const std::string& name) {
  if (name == "lemma-estimate") return lemma_estimate;
  if (name == "lens") return lens;
  if (name == "kesten") return kesten;
  if (name == "folner") return folner;
  if (name == "littlewood") return littlewood;
  if (name == "witness") return witness;
  if (name == "pspace-check") return pspace_check;
  return nullptr;
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs{
      {"lemma-estimate",
       "Boyd lower bound, interpolation bound and linear bound for A(alpha)",
       {{"p", "1.1,1.5,1.9", "exponents in (1, 2]"},
        {"alpha", "-0.5,-0.25,-0.1,-0.05,-0.01,0.01,0.05,0.1,0.25,0.5", "alpha grid"},
        {"tol", "1e-12", "slack allowed in each comparison"}},
       "csv"},
      {"lens",
       "spectrum of mu_1 for random isometry families against the lens",
       {{"p", "1.5", "exponent"},
        {"r", "2", "number of generators"},
        {"d", "20", "dimension"},
        {"trials", "100", "number of seeded trials"},
        {"tol", "1e-8", "allowed excursion outside the lens"}},
       "csv"},
      {"kesten",
       "spectral radius of truncated mu_1 on Cayley balls",
       {{"r", "2", "rank of the free group"},
        {"n", "1..8", "ball radii (list, ranges a..b allowed)"},
        {"tol", "1e-10", "relative eigen-residual for the power iteration"},
        {"cap", "1000000", "largest ball allowed"}},
       "csv"},
      {"folner",
       "isometry defect of the averaged norm over Folner windows",
       {{"group", "z", "s3 or z"},
        {"norm", "average", "average or sup"},
        {"p", "1.5", "exponent"},
        {"cond", "10", "condition number of the conjugating matrix"},
        {"windows", "8,16,32,64", "window sizes N for group z"},
        {"samples", "200", "random vectors per window"},
        {"phases", "0.7,2.1,-1.3", "rotation angles for group z"}},
       "csv"},
      {"littlewood",
       "T1 norm of a function on a group by linear programming",
       {{"group", "zn", "zn, s3, s4 or ball"},
        {"n", "3,6,12", "orders for zn, radii for ball"},
        {"f", "delta", "delta, indicator or random"},
        {"rank", "2", "free group rank for group ball"},
        {"length", "1", "sphere radius for f=indicator, support radius for random on balls"}},
       "csv"},
      {"witness",
       "ellipse point outside the lens",
       {{"p", "1.05,1.2,1.5,2.0", "exponents"}},
       "json"},
      {"pspace-check",
       "random trials of the p-space matrix inequality",
       {{"p", "1.2,1.5", "exponents"},
        {"size", "3", "matrix size"},
        {"d", "5", "dimension of the l^p space"},
        {"trials", "1000", "trials per exponent"}},
       "csv"},
  };
  return specs;
}

const CommandSpec* find_command(const std::string& name) {
  for (const auto& s : command_specs())
    if (s.name == name) return &s;
  return nullptr;
}

Settings load_config(const std::string& path, const std::string& name) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  Settings out;
  for (const auto& [section, body] : tree) {
    const CommandSpec* spec = find_command(section);
    if (!spec) {
      if (!body.data().empty() || body.empty())
        throw ConfigError(path + ": keys outside a [subcommand] section: " + section);
      throw ConfigError(path + ": unknown section [" + section + "]");
    }
    if (section != name) continue;
    for (const auto& [key, value] : body) {
      const bool known = std::any_of(spec->params.begin(), spec->params.end(),
                                     [&](const Param& p) { return p.key == key; });
      if (!known) throw ConfigError(path + ": unknown key " + key + " in [" + section + "]");
      out[key] = value.data();
    }
  }
  return out;
}

RunResult run_command(const std::string& name, const Settings& settings, std::uint64_t seed,
                      const std::string& format) {
  const CommandSpec* spec = find_command(name);
  const Handler h = handler_for(name);
  if (!spec || !h) return {kExitUsage, "", "unknown subcommand: " + name + "\n"};
  const std::string fmt_name = format.empty() ? spec->default_format : format;
  if (fmt_name != "csv" && fmt_name != "json")
    return {kExitUsage, "", "format must be csv or json\n"};
  try {
    const Params ps(*spec, settings);
    return h(ps, seed, fmt_name);
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string(e.what()) + "\n"};
  } catch (const PreconditionError& e) {
    return {kExitUsage, "", std::string(e.what()) + "\n"};
  } catch (const NumericError& e) {
    return {kExitNumeric, "", std::string(e.what()) + "\n"};
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Numerical checks for p-space operator estimates", "piso-lab"};
  app.require_subcommand(1);

  std::string config;
  std::string out_path;
  std::uint64_t seed = 7;
  std::string format;
  app.add_option("--config", config, "INI file with one [subcommand] section per command");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--seed", seed, "64-bit seed for every random draw");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.fallthrough();

  std::map<std::string, std::map<std::string, std::string>> overrides;
  for (const CommandSpec& spec : command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    for (const Param& p : spec.params) {
      sub->add_option_function<std::string>(
          "--" + p.key, [&overrides, name = spec.name, key = p.key](const std::string& v) {
            overrides[name][key] = v;
          },
          p.help + " (default " + p.default_value + ")");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Settings settings;
  if (!config.empty()) {
    try {
      settings = load_config(config, name);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  for (const auto& [k, v] : overrides[name]) settings[k] = v;

  RunResult res = run_command(name, settings, seed, format);
  if (!res.diagnostics.empty()) std::cerr << res.diagnostics;
  if (!res.output.empty()) {
    if (out_path.empty()) {
      std::cout << res.output << std::flush;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << res.output;
      if (!f) {
        std::cerr << "cannot write " << out_path << "\n";
        return kExitUsage;
      }
    }
  }
  return res.exit_code;
}

}  // namespace piso::cli
