#include "satnum/margin.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "satnum/errors.hpp"
#include "satnum/exact_lp.hpp"

namespace satnum {

namespace {

std::string float_text(const Rational& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double_nearest(q));
  return buf;
}

}  // namespace

std::string DecisionLine::label() const {
  if (fixed.empty()) return "-";
  std::string out;
  for (const auto& [v, val] : fixed) {
    if (!out.empty()) out += ';';
    out += "x" + std::to_string(v + 1) + "=" + std::to_string(val);
  }
  return out;
}

bool MarginReport::all_lines_exclude() const {
  return std::all_of(lines.begin(), lines.end(), [](const LineReport& l) { return l.excludes_infeasible; });
}

std::optional<Interval> decision_interval(const InequalitySystem& projected, const DecisionLine& line) {
  if (!projected.box) throw std::invalid_argument("decision intervals need a boxed system");
  const Var x = line.dominant_var;
  std::vector<std::optional<int>> value(static_cast<std::size_t>(projected.num_vars));
  for (const auto& [v, val] : line.fixed) {
    if (v == x) throw std::invalid_argument("the dominant variable cannot be fixed");
    value.at(static_cast<std::size_t>(v)) = val;
  }
  Rational lo = 0;
  Rational hi = 1;
  for (const auto& row : projected.rows) {
    Integer a = 0;
    Integer s = 0;
    for (const auto& t : row.terms) {
      if (t.var == x) {
        a = t.coeff;
      } else if (value.at(static_cast<std::size_t>(t.var))) {
        s += t.coeff * *value[static_cast<std::size_t>(t.var)];
      } else {
        throw std::invalid_argument("row mentions x" + std::to_string(t.var + 1) +
                                    ", which is neither fixed nor the dominant variable");
      }
    }
    // row.lower <= a*x + s <= row.upper
    auto apply = [&](const Rational& bound, bool is_lower) {
      const Rational rhs = bound - Rational(s);
      if (sgn(a) == 0) {
        if (is_lower ? rhs > 0 : rhs < 0) {
          lo = 1;
          hi = 0;
        }
        return;
      }
      const Rational lim = rhs / Rational(a);
      if ((sgn(a) > 0) == is_lower) {
        lo = std::max(lo, lim);
      } else {
        hi = std::min(hi, lim);
      }
    };
    if (row.lower) apply(*row.lower, true);
    if (row.upper) apply(*row.upper, false);
  }
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

std::optional<Interval> lp_decision_interval(const InequalitySystem& system, const DecisionLine& line) {
  std::vector<std::pair<Var, Rational>> fixed;
  for (const auto& [v, val] : line.fixed) fixed.emplace_back(v, Rational(val));
  return variable_interval(fix_coordinates(system, fixed), line.dominant_var);
}

MarginReport decision_margin(const InequalitySystem& system, Var dominant_var, int infeasible_value,
                             const std::vector<Var>& keep, const MarginOptions& options) {
  if (infeasible_value != 0 && infeasible_value != 1) {
    throw std::invalid_argument("infeasible value must be 0 or 1");
  }
  if (std::find(keep.begin(), keep.end(), dominant_var) == keep.end()) {
    throw std::invalid_argument("keep set must contain the dominant variable");
  }
  const bool present = std::any_of(system.rows.begin(), system.rows.end(), [&](const BoundedInequality& r) {
    return sgn(r.coeff(dominant_var)) != 0;
  });
  if (!present) {
    throw std::invalid_argument("dominant variable x" + std::to_string(dominant_var + 1) + " appears in no row");
  }

  std::vector<Var> others;
  for (Var v : keep) {
    if (v != dominant_var && std::find(others.begin(), others.end(), v) == others.end()) others.push_back(v);
  }
  std::sort(others.begin(), others.end());
  if (others.size() >= 63 || (std::size_t{1} << others.size()) > options.line_cap) {
    throw CapExceededError(std::to_string(others.size()) + " fixed coordinates give more than " +
                           std::to_string(options.line_cap) + " decision lines");
  }

  MarginReport rep;
  rep.dominant_var = dominant_var;
  rep.infeasible_value = infeasible_value;
  rep.projection_vars = others;
  rep.projection_vars.insert(rep.projection_vars.begin(), dominant_var);
  std::sort(rep.projection_vars.begin(), rep.projection_vars.end());
  rep.projected = fm_project(system, rep.projection_vars, options.fm).first;

  const std::size_t count = std::size_t{1} << others.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    LineReport lr;
    lr.line.dominant_var = dominant_var;
    for (std::size_t k = 0; k < others.size(); ++k) {
      const int bit = static_cast<int>((mask >> (others.size() - 1 - k)) & 1U);
      lr.line.fixed.emplace_back(others[k], bit);
    }
    lr.interval = decision_interval(rep.projected, lr.line);
    lr.excludes_infeasible = !lr.interval || !lr.interval->contains(infeasible_value);
    if (lr.interval && lr.excludes_infeasible) {
      lr.distance = infeasible_value == 0 ? lr.interval->lower : Rational(1) - lr.interval->upper;
      if (!rep.margin || *lr.distance < *rep.margin) rep.margin = *lr.distance;
    }
    rep.lines.push_back(std::move(lr));
  }
  return rep;
}

InequalitySystem aggregate_system(const SynthesizedInstance& inst, const AggregateInequality& agg) {
  InequalitySystem sys;
  sys.num_vars = inst.cnf.num_vars;
  sys.rows = {agg.row};
  return sys;
}

MarginReport decision_margin(const SynthesizedInstance& inst, const std::vector<Var>& keep,
                             const MarginOptions& options) {
  const InequalitySystem sys = cnf_to_system(inst.cnf);
  MarginReport rep = decision_margin(sys, inst.dominant_var, 1 - inst.expected_dominant_value, keep, options);
  const AggregateInequality agg = chain_aggregate(inst);
  const Integer a1 = abs(agg.coeff(inst.dominant_var));
  for (Var v : inst.candidate_vars) {
    if (v == inst.dominant_var || std::find(keep.begin(), keep.end(), v) == keep.end()) continue;
    const Integer a2 = abs(agg.coeff(v));
    if (sgn(a2) != 0 && sgn(a1) != 0) {
      rep.ratio_bound = Rational(a2, a1);
      rep.ratio_bound->canonicalize();
      break;
    }
  }
  return rep;
}

CoupledFamilySpec sweep_spec(const SweepTemplate& tmpl, int e) {
  CoupledFamilySpec spec = canonical_family_spec(tmpl.fragment, e, tmpl.c, tmpl.b);
  spec.coupler_value = tmpl.coupler_value;
  if (tmpl.digits == DigitPattern::TwoCandidate) {
    std::vector<int> second(static_cast<std::size_t>(e), 0);
    second.back() = 1;
    spec.d = 2;
    spec.digits = {std::vector<int>(static_cast<std::size_t>(e), 1), second};
  }
  return spec;
}

std::vector<Var> sweep_keep(const SweepTemplate& tmpl, const SynthesizedInstance& inst) {
  std::vector<Var> keep = {inst.dominant_var};
  if (tmpl.companion == Companion::Coupler && !inst.coupler_vars.empty()) {
    keep.push_back(inst.coupler_vars.front());
  } else if (tmpl.companion == Companion::Candidate) {
    for (Var v : inst.candidate_vars) {
      if (v != inst.dominant_var) {
        keep.push_back(v);
        break;
      }
    }
  }
  return keep;
}

std::vector<SweepRow> margin_decay_sweep(const SweepTemplate& tmpl, int e_from, int e_to,
                                         const MarginOptions& options) {
  if (e_from < 1 || e_to < e_from) throw std::invalid_argument("sweep needs 1 <= e_from <= e_to");
  std::vector<SweepRow> rows;
  for (int e = e_from; e <= e_to; ++e) {
    SweepRow row;
    row.spec = sweep_spec(tmpl, e);
    const SynthesizedInstance inst = synthesize(row.spec);
    row.aggregate = chain_aggregate(inst);
    row.a1 = row.aggregate.coeff(inst.dominant_var);
    if (inst.candidate_vars.size() > 1) row.a2 = row.aggregate.coeff(inst.candidate_vars[1]);
    const std::vector<Var> keep = sweep_keep(tmpl, inst);
    row.report = decision_margin(inst, keep, options);
    row.aggregate_margin = decision_margin(aggregate_system(inst, row.aggregate), inst.dominant_var,
                                           1 - inst.expected_dominant_value, keep, options)
                               .margin;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string margin_csv(const MarginReport& report) {
  std::string out = "line,lower,upper,excludes_infeasible,distance,distance_float\n";
  for (const auto& l : report.lines) {
    out += l.line.label() + ",";
    out += l.interval ? to_string(l.interval->lower, true) + "," + to_string(l.interval->upper, true) : "EMPTY,EMPTY";
    out += std::string(",") + (l.excludes_infeasible ? "true" : "false") + ",";
    out += l.distance ? to_string(*l.distance, true) + "," + float_text(*l.distance) : ",";
    out += "\n";
  }
  out += "margin,,,,";
  out += report.margin ? to_string(*report.margin, true) + "," + float_text(*report.margin) : ",";
  out += "\n";
  if (report.ratio_bound) {
    out += "ratio_bound,,,," + to_string(*report.ratio_bound, true) + "," + float_text(*report.ratio_bound) + "\n";
  }
  return out;
}

}  // namespace satnum
