#include "satnum/exact_lp.hpp"

#include <stdexcept>

namespace satnum {

namespace {

enum class Op { Le, Ge, Eq };

struct StdRow {
  std::vector<std::pair<int, Rational>> coeffs;  // structural column -> coefficient
  Op op = Op::Le;
  Rational rhs;
};

// Dense tableau; column `cols` holds the right-hand side. The objective row
// stores reduced costs and, in its rhs slot, minus the objective value.
class Tableau {
 public:
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> obj;
  std::vector<int> basis;
  int cols = 0;

  void pivot(std::size_t r, int q) {
    std::vector<Rational>& prow = a[r];
    const Rational inv = 1 / prow[q];
    std::vector<int> nz;
    for (int j = 0; j <= cols; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[q]) == 0) return;
      const Rational f = row[q];
      for (int j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != r) eliminate(a[i]);
    }
    eliminate(obj);
    basis[r] = q;
  }

  // Minimizes over columns [0, allowed). Bland: lowest entering index, ties
  // in the ratio test broken by lowest basic column. Returns false when
  // unbounded.
  bool optimize(int allowed) {
    for (;;) {
      int q = -1;
      for (int j = 0; j < allowed; ++j) {
        if (sgn(obj[j]) < 0) {
          q = j;
          break;
        }
      }
      if (q < 0) return true;
      std::size_t r = a.size();
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i][q]) <= 0) continue;
        Rational ratio = a[i][cols] / a[i][q];
        if (r == a.size() || ratio < best || (ratio == best && basis[i] < basis[r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (r == a.size()) return false;
      pivot(r, q);
    }
  }

  void set_objective(const std::vector<Rational>& c) {
    obj.assign(static_cast<std::size_t>(cols) + 1, Rational(0));
    for (int j = 0; j < cols && j < static_cast<int>(c.size()); ++j) obj[j] = c[j];
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int b = basis[i];
      if (b >= static_cast<int>(c.size()) || sgn(c[b]) == 0) continue;
      const Rational cb = c[b];
      for (int j = 0; j <= cols; ++j) {
        if (sgn(a[i][j]) != 0) obj[j] -= cb * a[i][j];
      }
    }
  }

  Rational column_value(int j) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (basis[i] == j) return a[i][cols];
    }
    return 0;
  }
};

// Standard form: every structural column is >= 0.
class StandardForm {
 public:
  explicit StandardForm(const InequalitySystem& sys) : num_vars_(sys.num_vars), box_(sys.box) {
    sys.validate();
    structural_ = box_ ? num_vars_ : 2 * num_vars_;
    for (const auto& row : sys.rows) add_row(row);
    if (box_) {
      for (int v = 0; v < num_vars_; ++v) rows_.push_back({{{v, Rational(1)}}, Op::Le, Rational(1)});
    }
  }

  int structural() const { return structural_; }

  // Objective over original variables -> cost vector over structural columns.
  std::vector<Rational> costs(const std::vector<std::pair<Var, Rational>>& objective,
                              bool negate) const {
    std::vector<Rational> c(static_cast<std::size_t>(structural_), Rational(0));
    for (const auto& [v, w] : objective) {
      const Rational s = negate ? Rational(-w) : w;
      c[v] += s;
      if (!box_) c[num_vars_ + v] -= s;
    }
    return c;
  }

  RationalPoint point(const Tableau& t) const {
    RationalPoint p(static_cast<std::size_t>(num_vars_));
    for (int v = 0; v < num_vars_; ++v) {
      p[v] = t.column_value(v);
      if (!box_) p[v] -= t.column_value(num_vars_ + v);
    }
    return p;
  }

  // Builds the tableau and runs phase 1. Returns false when infeasible.
  bool phase_one(Tableau& t) const {
    int slack_cols = 0;
    int art_cols = 0;
    std::vector<StdRow> rows = rows_;
    for (auto& r : rows) {
      if (sgn(r.rhs) < 0 || (sgn(r.rhs) == 0 && r.op == Op::Ge)) {
        for (auto& [j, c] : r.coeffs) c = -c;
        r.rhs = -r.rhs;
        if (r.op == Op::Le) {
          r.op = Op::Ge;
        } else if (r.op == Op::Ge) {
          r.op = Op::Le;
        }
      }
      if (r.op != Op::Eq) ++slack_cols;
      if (r.op != Op::Le) ++art_cols;
    }
    const int first_slack = structural_;
    const int first_art = structural_ + slack_cols;
    t.cols = first_art + art_cols;
    t.a.assign(rows.size(), std::vector<Rational>(static_cast<std::size_t>(t.cols) + 1));
    t.basis.assign(rows.size(), -1);
    int s = first_slack;
    int art = first_art;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto& row = t.a[i];
      for (const auto& [j, c] : rows[i].coeffs) row[j] += c;
      row[t.cols] = rows[i].rhs;
      if (rows[i].op == Op::Le) {
        row[s] = 1;
        t.basis[i] = s++;
      } else {
        if (rows[i].op == Op::Ge) row[s++] = -1;
        row[art] = 1;
        t.basis[i] = art++;
      }
    }
    if (art_cols > 0) {
      std::vector<Rational> c(static_cast<std::size_t>(t.cols), Rational(0));
      for (int j = first_art; j < t.cols; ++j) c[j] = 1;
      t.set_objective(c);
      t.optimize(t.cols);
      if (sgn(t.obj[t.cols]) != 0) return false;
      // Drive zero-level artificials out of the basis, dropping redundant rows.
      for (std::size_t i = 0; i < t.a.size();) {
        if (t.basis[i] < first_art) {
          ++i;
          continue;
        }
        int q = -1;
        for (int j = 0; j < first_art; ++j) {
          if (sgn(t.a[i][j]) != 0) {
            q = j;
            break;
          }
        }
        if (q >= 0) {
          t.pivot(i, q);
          ++i;
        } else {
          t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
          t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
      for (auto& row : t.a) {
        row[first_art] = row[t.cols];
        row.resize(static_cast<std::size_t>(first_art) + 1);
      }
      t.cols = first_art;
    }
    return true;
  }

 private:
  void add_row(const BoundedInequality& row) {
    std::vector<std::pair<int, Rational>> coeffs;
    for (const Term& t : row.terms) {
      coeffs.emplace_back(t.var, Rational(t.coeff));
      if (!box_) coeffs.emplace_back(num_vars_ + t.var, Rational(-t.coeff));
    }
    // Sides implied by the box carry no information.
    const bool need_lower = row.lower && !(box_ && Rational(row.box_min()) >= *row.lower);
    const bool need_upper = row.upper && !(box_ && Rational(row.box_max()) <= *row.upper);
    if (need_lower && need_upper && *row.lower == *row.upper) {
      rows_.push_back({coeffs, Op::Eq, *row.lower});
      return;
    }
    if (need_lower) rows_.push_back({coeffs, Op::Ge, *row.lower});
    if (need_upper) rows_.push_back({coeffs, Op::Le, *row.upper});
  }

  int num_vars_;
  bool box_;
  int structural_ = 0;
  std::vector<StdRow> rows_;
};

LpResult optimize_from(Tableau& t, const StandardForm& form,
                       const std::vector<std::pair<Var, Rational>>& objective, Sense sense) {
  const bool negate = sense == Sense::Max;
  t.set_objective(form.costs(objective, negate));
  if (!t.optimize(t.cols)) return {LpStatus::Unbounded, std::nullopt, std::nullopt};
  Rational value = -t.obj[t.cols];
  if (negate) value = -value;
  return {LpStatus::Optimal, value, form.point(t)};
}

}  // namespace

LpResult solve(const LpProblem& problem) {
  for (const auto& [v, w] : problem.objective) {
    if (v < 0 || v >= problem.system.num_vars) {
      throw std::invalid_argument("objective variable out of range");
    }
  }
  StandardForm form(problem.system);
  Tableau t;
  if (!form.phase_one(t)) return {LpStatus::Infeasible, std::nullopt, std::nullopt};
  return optimize_from(t, form, problem.objective, problem.sense);
}

bool lp_feasible(const InequalitySystem& system) {
  StandardForm form(system);
  Tableau t;
  return form.phase_one(t);
}

std::optional<Interval> variable_interval(const InequalitySystem& system, Var v) {
  if (!system.box) throw std::invalid_argument("variable_interval needs a boxed system");
  LpProblem p{system, {{v, Rational(1)}}, Sense::Min};
  LpResult lo = solve(p);
  if (lo.status == LpStatus::Infeasible) return std::nullopt;
  p.sense = Sense::Max;
  LpResult hi = solve(p);
  return Interval{*lo.value, *hi.value};
}

std::optional<std::vector<Interval>> variable_intervals(const InequalitySystem& system) {
  if (!system.box) throw std::invalid_argument("variable_intervals needs a boxed system");
  StandardForm form(system);
  Tableau t;
  if (!form.phase_one(t)) return std::nullopt;
  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(system.num_vars));
  for (Var v = 0; v < system.num_vars; ++v) {
    const std::vector<std::pair<Var, Rational>> obj{{v, Rational(1)}};
    LpResult lo = optimize_from(t, form, obj, Sense::Min);
    LpResult hi = optimize_from(t, form, obj, Sense::Max);
    out.push_back({*lo.value, *hi.value});
  }
  return out;
}

InequalitySystem fix_coordinates(InequalitySystem system,
                                 const std::vector<std::pair<Var, Rational>>& fixed) {
  for (const auto& [v, value] : fixed) {
    system.rows.push_back(BoundedInequality::make({{v, Integer(1)}}, value, value));
  }
  return system;
}

}  // namespace satnum
