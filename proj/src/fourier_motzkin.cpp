#include "satnum/fourier_motzkin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "satnum/errors.hpp"
#include "satnum/exact_lp.hpp"

namespace satnum {

namespace {

std::string var_name(Var v) { return "x" + std::to_string(v + 1); }

std::string expr_text(const std::vector<Term>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += to_string(terms[i].coeff) + "*" + var_name(terms[i].var);
  }
  return out;
}

std::string row_key(const std::vector<Term>& terms) {
  std::string key;
  for (const auto& t : terms) {
    key += std::to_string(t.var);
    key += ':';
    key += t.coeff.get_str(16);
    key += ',';
  }
  return key;
}

Integer content(const std::vector<Term>& terms) {
  Integer g = 0;
  for (const auto& t : terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Divides by the coefficient gcd; returns the divisor (1 for constant rows).
Integer normalize_row(GeqRow& row) {
  Integer g = content(row.terms);
  if (g <= 1) return 1;
  for (auto& t : row.terms) t.coeff /= g;
  row.bound /= Rational(g);
  return g;
}

Integer negative_part_sum(const std::vector<Term>& terms) {
  Integer s = 0;
  for (const auto& t : terms) {
    if (sgn(t.coeff) < 0) s += t.coeff;
  }
  return s;
}

// The row holds everywhere on the feasible domain (box, or all of R^n).
bool implied(const GeqRow& row, bool box) {
  if (row.terms.empty()) return row.bound <= 0;
  return box && Rational(negative_part_sum(row.terms)) >= row.bound;
}

bool contradiction(const GeqRow& row) { return row.terms.empty() && row.bound > 0; }

// True when `strong` implies `weak` for every point of the unit box.
bool dominates(const GeqRow& strong, const GeqRow& weak) {
  // weak.x = strong.x + (weak - strong).x >= strong.bound + min_box (weak - strong).x
  Integer slack = 0;
  auto a = weak.terms.begin();
  auto b = strong.terms.begin();
  while (a != weak.terms.end() || b != strong.terms.end()) {
    Integer diff;
    if (b == strong.terms.end() || (a != weak.terms.end() && a->var < b->var)) {
      diff = a->coeff;
      ++a;
    } else if (a == weak.terms.end() || b->var < a->var) {
      diff = -b->coeff;
      ++b;
    } else {
      diff = a->coeff - b->coeff;
      ++a;
      ++b;
    }
    if (sgn(diff) < 0) slack += diff;
  }
  return strong.bound + Rational(slack) >= weak.bound;
}

BoundedInequality as_lower_row(const GeqRow& row) {
  BoundedInequality out;
  out.terms = row.terms;
  out.lower = row.bound;
  return out;
}

class Eliminator {
 public:
  Eliminator(const InequalitySystem& system, const FmOptions& options)
      : options_(options), box_(system.box), num_vars_(system.num_vars) {
    system.validate();
    for (const auto& r : system.rows) {
      if (r.lower) add_input({r.terms, *r.lower});
      if (r.upper) {
        GeqRow neg{r.terms, -*r.upper};
        for (auto& t : neg.terms) t.coeff = -t.coeff;
        add_input(std::move(neg));
      }
    }
    cleanup();
  }

  bool appears(Var v) const {
    return std::any_of(working_.begin(), working_.end(),
                       [&](std::size_t id) { return sgn(trace_.rows[id].coeff(v)) != 0; });
  }

  void eliminate(Var v) {
    EliminationStep step;
    step.var = v;
    std::vector<std::size_t> lower;
    std::vector<std::size_t> upper;
    std::vector<std::size_t> rest;
    for (std::size_t id : working_) {
      const int s = sgn(trace_.rows[id].coeff(v));
      (s > 0 ? lower : s < 0 ? upper : rest).push_back(id);
    }
    if (box_ && (!lower.empty() || !upper.empty())) {
      lower.push_back(add_row({{{v, 1}}, 0}));
      upper.push_back(add_row({{{v, -1}}, -1}));
    }
    const std::size_t expected = rest.size() + lower.size() * upper.size();
    if (expected > options_.max_rows * 4) {
      throw BlowupError(options_.max_rows, steps_done_ + 1, expected);
    }
    for (std::size_t l : lower) {
      for (std::size_t u : upper) {
        const Integer a = trace_.rows[l].coeff(v);
        const Integer c = -trace_.rows[u].coeff(v);
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        const Integer ml = c / g;
        const Integer mu = a / g;
        GeqRow derived = combine(trace_.rows[l], ml, trace_.rows[u], mu);
        const Integer norm = normalize_row(derived);
        const bool keep = !implied(derived, box_);
        const std::size_t id = add_row(std::move(derived));
        step.combinations.push_back({l, u, Rational(ml, norm), Rational(mu, norm), id});
        step.combinations.back().lower_multiplier.canonicalize();
        step.combinations.back().upper_multiplier.canonicalize();
        if (keep) rest.push_back(id);
      }
    }
    working_ = std::move(rest);
    cleanup();
    ++steps_done_;
    if (working_.size() > options_.max_rows) {
      throw BlowupError(options_.max_rows, steps_done_, working_.size());
    }
    step.rows_after = working_.size();
    trace_.steps.push_back(std::move(step));
  }

  // Fewest lower*upper pairings; ties go to the smaller index.
  Var pick(const std::vector<Var>& candidates) const {
    Var best = candidates.front();
    std::size_t best_score = SIZE_MAX;
    for (Var v : candidates) {
      std::size_t lo = box_ ? 1 : 0;
      std::size_t up = box_ ? 1 : 0;
      for (std::size_t id : working_) {
        const int s = sgn(trace_.rows[id].coeff(v));
        if (s > 0) ++lo;
        if (s < 0) ++up;
      }
      const std::size_t score = lo * up;
      if (score < best_score) {
        best_score = score;
        best = v;
      }
    }
    return best;
  }

  InequalitySystem result() const {
    InequalitySystem out;
    out.num_vars = num_vars_;
    out.box = box_;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t id : working_) {
      const GeqRow& r = trace_.rows[id];
      // Rows whose leading coefficient is negative become upper bounds on
      // the negated expression so opposite halves merge into one row.
      const bool flip = !r.terms.empty() && sgn(r.terms.front().coeff) < 0;
      std::vector<Term> terms = r.terms;
      if (flip) {
        for (auto& t : terms) t.coeff = -t.coeff;
      }
      const std::string key = row_key(terms);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, out.rows.size()).first;
        out.rows.push_back(BoundedInequality{terms, std::nullopt, std::nullopt});
      }
      auto& row = out.rows[it->second];
      if (flip) {
        const Rational ub = -r.bound;
        if (!row.upper || ub < *row.upper) row.upper = ub;
      } else if (!row.lower || r.bound > *row.lower) {
        row.lower = r.bound;
      }
      if (row.lower && row.upper && *row.lower > *row.upper) {
        // Opposite halves clash; their sum is the constant row 0 >= lower - upper.
        const Rational gap = *row.lower - *row.upper;
        out.rows = {BoundedInequality{{}, gap, std::nullopt}};
        return out;
      }
    }
    return out;
  }

  EliminationTrace take_trace(InequalitySystem final_system) {
    trace_.final_system = std::move(final_system);
    return std::move(trace_);
  }

 private:
  std::size_t add_row(GeqRow row) {
    trace_.rows.push_back(std::move(row));
    return trace_.rows.size() - 1;
  }

  void add_input(GeqRow row) {
    normalize_row(row);
    const bool keep = !implied(row, box_);
    const std::size_t id = add_row(std::move(row));
    if (keep) working_.push_back(id);
  }

  static GeqRow combine(const GeqRow& l, const Integer& ml, const GeqRow& u, const Integer& mu) {
    GeqRow out;
    out.bound = l.bound * Rational(ml) + u.bound * Rational(mu);
    auto a = l.terms.begin();
    auto b = u.terms.begin();
    while (a != l.terms.end() || b != u.terms.end()) {
      Term t;
      if (b == u.terms.end() || (a != l.terms.end() && a->var < b->var)) {
        t = {a->var, a->coeff * ml};
        ++a;
      } else if (a == l.terms.end() || b->var < a->var) {
        t = {b->var, b->coeff * mu};
        ++b;
      } else {
        t = {a->var, a->coeff * ml + b->coeff * mu};
        ++a;
        ++b;
      }
      if (sgn(t.coeff) != 0) out.terms.push_back(std::move(t));
    }
    return out;
  }

  void cleanup() {
    for (std::size_t id : working_) {
      if (contradiction(trace_.rows[id])) {
        working_ = {id};
        return;
      }
    }
    // Same left-hand side: keep the strongest bound.
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<std::size_t> unique;
    for (std::size_t id : working_) {
      const std::string key = row_key(trace_.rows[id].terms);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, unique.size());
        unique.push_back(id);
      } else if (trace_.rows[id].bound > trace_.rows[unique[it->second]].bound) {
        unique[it->second] = id;
      }
    }
    working_ = std::move(unique);

    if (box_ && working_.size() <= options_.dominance_limit) {
      std::vector<bool> dropped(working_.size(), false);
      for (std::size_t i = 0; i < working_.size(); ++i) {
        for (std::size_t j = 0; j < working_.size() && !dropped[i]; ++j) {
          if (i == j || dropped[j]) continue;
          if (dominates(trace_.rows[working_[j]], trace_.rows[working_[i]])) dropped[i] = true;
        }
      }
      std::vector<std::size_t> kept;
      for (std::size_t i = 0; i < working_.size(); ++i) {
        if (!dropped[i]) kept.push_back(working_[i]);
      }
      working_ = std::move(kept);
    }

    if (options_.lp_redundancy) {
      for (std::size_t i = 0; i < working_.size();) {
        InequalitySystem others;
        others.num_vars = num_vars_;
        others.box = box_;
        for (std::size_t j = 0; j < working_.size(); ++j) {
          if (j != i) others.rows.push_back(as_lower_row(trace_.rows[working_[j]]));
        }
        const GeqRow& row = trace_.rows[working_[i]];
        LpProblem lp{std::move(others), {}, Sense::Min};
        for (const auto& t : row.terms) lp.objective.emplace_back(t.var, Rational(t.coeff));
        const LpResult res = solve(lp);
        if (res.status == LpStatus::Optimal && *res.value >= row.bound) {
          working_.erase(working_.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          ++i;
        }
      }
    }
  }

  FmOptions options_;
  bool box_;
  int num_vars_;
  EliminationTrace trace_;
  std::vector<std::size_t> working_;
  std::size_t steps_done_ = 0;
};

void check_var(const InequalitySystem& system, Var v) {
  if (v < 0 || v >= system.num_vars) {
    throw std::invalid_argument("variable " + var_name(v) + " out of range");
  }
}

}  // namespace

Integer GeqRow::coeff(Var v) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), v,
                             [](const Term& t, Var x) { return t.var < x; });
  return it != terms.end() && it->var == v ? it->coeff : Integer(0);
}

std::string format_geq(const GeqRow& row) {
  return expr_text(row.terms) + " >= " + to_string(row.bound);
}

std::string EliminationTrace::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) out << "row" << i << ": " << format_geq(rows[i]) << "\n";
  for (const auto& step : steps) {
    for (const auto& c : step.combinations) {
      out << "step " << var_name(step.var) << ": row" << c.lower_row << " * "
          << to_string(c.lower_multiplier, true) << " + row" << c.upper_row << " * "
          << to_string(c.upper_multiplier, true) << " -> row" << c.new_row << "\n";
    }
  }
  return out.str();
}

std::pair<InequalitySystem, EliminationTrace> fm_eliminate(const InequalitySystem& system, Var v,
                                                           const FmOptions& options) {
  check_var(system, v);
  Eliminator el(system, options);
  if (!el.appears(v)) {
    EliminationTrace trace = el.take_trace(system);
    trace.steps.push_back({v, {}, 0});
    return {system, std::move(trace)};
  }
  el.eliminate(v);
  InequalitySystem out = el.result();
  return {out, el.take_trace(out)};
}

std::pair<InequalitySystem, EliminationTrace> fm_project(const InequalitySystem& system,
                                                         const std::vector<Var>& keep,
                                                         const FmOptions& options,
                                                         const std::vector<Var>& order) {
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  std::vector<bool> kept(static_cast<std::size_t>(system.num_vars), false);
  for (Var v : keep) {
    check_var(system, v);
    kept[static_cast<std::size_t>(v)] = true;
  }
  std::vector<bool> present(kept.size(), false);
  for (const auto& r : system.rows) {
    for (const auto& t : r.terms) {
      if (t.var >= 0 && t.var < system.num_vars) present[static_cast<std::size_t>(t.var)] = true;
    }
  }
  std::vector<Var> todo;
  if (options.order == EliminationOrder::Given) {
    for (Var v : order) {
      check_var(system, v);
      if (!kept[v] && present[v] && std::find(todo.begin(), todo.end(), v) == todo.end()) todo.push_back(v);
    }
  }
  for (Var v = 0; v < system.num_vars; ++v) {
    if (!kept[v] && present[v] && std::find(todo.begin(), todo.end(), v) == todo.end()) todo.push_back(v);
  }

  Eliminator el(system, options);
  if (todo.empty()) return {system, el.take_trace(system)};
  while (!todo.empty()) {
    Var v = options.order == EliminationOrder::Given ? todo.front() : el.pick(todo);
    todo.erase(std::find(todo.begin(), todo.end(), v));
    if (el.appears(v)) el.eliminate(v);
  }
  InequalitySystem out = el.result();
  return {out, el.take_trace(out)};
}

InequalitySystem integral_tighten(const InequalitySystem& system) {
  InequalitySystem out = system;
  for (auto& row : out.rows) {
    if (row.lower) row.lower = Rational(ceil(*row.lower));
    if (row.upper) row.upper = Rational(floor(*row.upper));
  }
  return out;
}

AggregateInequality chain_aggregate(const SynthesizedInstance& inst) {
  if (inst.cnf.has_xor()) throw FragmentError("chain aggregation needs OR clauses");
  const std::size_t n = static_cast<std::size_t>(inst.cnf.num_vars);
  const std::size_t e = inst.chain_rows.size();
  if (e == 0) throw std::invalid_argument("instance has no chains");
  if (inst.coupler_vars.size() + 1 != e) {
    throw std::invalid_argument("expected one coupler between consecutive chains");
  }

  struct Dense {
    std::vector<Integer> coeff;
    Integer lower = 0;
    Integer upper = 0;
  };
  std::vector<Dense> chains(e, Dense{std::vector<Integer>(n, 0)});
  for (std::size_t j = 0; j < e; ++j) {
    for (std::size_t r : inst.chain_rows[j]) {
      const BoundedInequality row = clause_to_inequality(inst.cnf.clauses.at(r));
      for (const auto& t : row.terms) chains[j].coeff[static_cast<std::size_t>(t.var)] += t.coeff;
      chains[j].lower += row.lower->get_num();
      chains[j].upper += row.upper->get_num();
    }
  }

  AggregateInequality agg;
  Dense acc = chains[0];
  agg.chain_multipliers = {1};
  for (std::size_t j = 0; j + 1 < e; ++j) {
    const Var y = inst.coupler_vars[j];
    const auto yi = static_cast<std::size_t>(y);
    const Integer r = acc.coeff[yi];
    const Integer t = chains[j + 1].coeff[yi];
    if (sgn(r) == 0 || sgn(t) == 0 || sgn(r) == sgn(t)) {
      throw CancellationError(y, "coupler " + var_name(y) + " does not appear with opposite signs in chains " +
                                     std::to_string(j + 1) + " and " + std::to_string(j + 2));
    }
    agg.multipliers.push_back(abs(chains[j].coeff[yi]));
    agg.multipliers.push_back(abs(t));
    const Integer alpha = abs(t);
    const Integer beta = abs(r);
    for (std::size_t v = 0; v < n; ++v) acc.coeff[v] = alpha * acc.coeff[v] + beta * chains[j + 1].coeff[v];
    acc.lower = alpha * acc.lower + beta * chains[j + 1].lower;
    acc.upper = alpha * acc.upper + beta * chains[j + 1].upper;
    for (auto& m : agg.chain_multipliers) m *= alpha;
    agg.chain_multipliers.push_back(beta);
  }

  std::vector<bool> candidate(n, false);
  for (Var v : inst.candidate_vars) candidate[static_cast<std::size_t>(v)] = true;
  std::vector<Term> terms;
  for (std::size_t v = 0; v < n; ++v) {
    if (sgn(acc.coeff[v]) == 0) continue;
    if (!candidate[v]) {
      throw CancellationError(static_cast<Var>(v), "variable " + var_name(static_cast<Var>(v)) +
                                                       " keeps coefficient " + to_string(acc.coeff[v]) +
                                                       " after aggregation");
    }
    terms.push_back({static_cast<Var>(v), acc.coeff[v]});
  }
  agg.b_min = acc.lower;
  agg.b_max = acc.upper;
  agg.row = BoundedInequality::make(std::move(terms), Rational(acc.lower), Rational(acc.upper));
  return agg;
}

std::vector<Integer> nested_chain_weights(const std::vector<Integer>& multipliers, int e) {
  if (e < 1 || multipliers.size() != static_cast<std::size_t>(2 * (e - 1))) {
    throw std::invalid_argument("need 2(e-1) multipliers");
  }
  std::vector<Integer> w(static_cast<std::size_t>(e), 1);
  for (int j = 0; j < e; ++j) {
    for (int k = 0; k < e - 1; ++k) {
      w[j] *= k < j ? multipliers[2 * k] : multipliers[2 * k + 1];
    }
  }
  return w;
}

std::optional<std::vector<Integer>> decompose_base_b(const Integer& value, const Integer& b, int e) {
  if (b < 1 || e < 1) throw std::invalid_argument("decompose_base_b needs b >= 1 and e >= 1");
  if (value < 0) return std::nullopt;
  std::vector<Integer> digits(static_cast<std::size_t>(e), 0);
  if (b == 1) {
    digits.back() = value;
    return digits;
  }
  Integer rest = value;
  for (int j = e - 1; j >= 0; --j) {
    digits[j] = rest % b;
    rest /= b;
  }
  if (rest != 0) return std::nullopt;
  return digits;
}

long max_exponent(long n, long d, long c) {
  if (n <= d) throw std::invalid_argument("max_exponent needs n > d (no chains otherwise)");
  if (c < 1) throw std::invalid_argument("max_exponent needs c >= 1");
  return (n - d + 1) / (c + 1);
}

NumberSystemReport number_system(const CoupledFamilySpec& spec, const SynthesizedInstance& inst,
                                 const AggregateInequality& agg) {
  NumberSystemReport rep;
  rep.basis = spec.b;
  rep.exponent = spec.e;
  std::vector<Integer> mult;
  for (int j = 0; j + 1 < spec.e; ++j) {
    auto [p, q] = spec.multiplicities_at(j);
    mult.push_back(p);
    mult.push_back(q);
  }
  const std::vector<Integer> w = nested_chain_weights(mult, spec.e);
  rep.reconstruction_ok = true;
  for (int i = 0; i < spec.d; ++i) {
    const Var x = inst.candidate_vars.at(static_cast<std::size_t>(i));
    rep.digits.emplace_back(x, spec.digits.at(static_cast<std::size_t>(i)));
    Integer expect = 0;
    for (int j = 0; j < spec.e; ++j) expect += spec.digits[i][j] * w[j];
    const Integer got = abs(agg.coeff(x));
    rep.coefficients.push_back(got);
    rep.expected.push_back(expect);
    if (got != expect) rep.reconstruction_ok = false;
  }
  return rep;
}

}  // namespace satnum
