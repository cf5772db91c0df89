#include "satnum/reduction.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "satnum/errors.hpp"

namespace satnum {

BoundedInequality BoundedInequality::make(std::vector<Term> terms, std::optional<Rational> lower,
                                          std::optional<Rational> upper) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  return {std::move(merged), std::move(lower), std::move(upper)};
}

Integer BoundedInequality::coeff(Var v) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), v,
                             [](const Term& t, Var x) { return t.var < x; });
  return (it != terms.end() && it->var == v) ? it->coeff : Integer(0);
}

Rational BoundedInequality::value(const std::vector<Rational>& point) const {
  Rational sum = 0;
  for (const Term& t : terms) sum += t.coeff * point[t.var];
  return sum;
}

bool BoundedInequality::holds(const std::vector<Rational>& point) const {
  const Rational v = value(point);
  if (lower && v < *lower) return false;
  if (upper && v > *upper) return false;
  return true;
}

Integer BoundedInequality::box_min() const {
  Integer s = 0;
  for (const Term& t : terms) {
    if (t.coeff < 0) s += t.coeff;
  }
  return s;
}

Integer BoundedInequality::box_max() const {
  Integer s = 0;
  for (const Term& t : terms) {
    if (t.coeff > 0) s += t.coeff;
  }
  return s;
}

void InequalitySystem::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const Term& t : rows[i].terms) {
      if (t.var < 0 || t.var >= num_vars) {
        throw std::invalid_argument("row " + std::to_string(i) + " references variable " +
                                    std::to_string(t.var + 1) + " beyond " +
                                    std::to_string(num_vars));
      }
    }
    if (rows[i].lower && rows[i].upper && *rows[i].lower > *rows[i].upper) {
      throw std::invalid_argument("row " + std::to_string(i) + " has lower > upper");
    }
  }
}

BoundedInequality clause_to_inequality(const Clause& clause) {
  if (clause.is_xor()) throw FragmentError("XOR clauses have no single bounded linear row");
  std::vector<Term> terms;
  long p = 0;
  long n = 0;
  for (const Literal& l : clause.literals) {
    terms.push_back({l.var, Integer(l.negated ? -1 : 1)});
    (l.negated ? n : p) += 1;
  }
  return BoundedInequality::make(std::move(terms), Rational(1 - n), Rational(p));
}

InequalitySystem cnf_to_system(const Cnf& cnf) {
  InequalitySystem sys;
  sys.num_vars = cnf.num_vars;
  sys.box = true;
  sys.rows.reserve(cnf.clauses.size());
  for (const Clause& c : cnf.clauses) sys.rows.push_back(clause_to_inequality(c));
  return sys;
}

bool satisfies(const InequalitySystem& system, const RationalPoint& p) {
  if (p.size() != static_cast<std::size_t>(system.num_vars)) {
    throw std::invalid_argument("point has " + std::to_string(p.size()) +
                                " coordinates, system has " + std::to_string(system.num_vars) +
                                " variables");
  }
  if (system.box) {
    for (const Rational& x : p) {
      if (x < 0 || x > 1) return false;
    }
  }
  return std::all_of(system.rows.begin(), system.rows.end(),
                     [&](const BoundedInequality& r) { return r.holds(p); });
}

RationalPoint to_point(const Assignment& a) {
  RationalPoint p;
  p.reserve(a.size());
  for (auto v : a) p.emplace_back(static_cast<int>(v));
  return p;
}

std::vector<Assignment> integral_points(const InequalitySystem& system, int cap) {
  if (!system.box) throw std::invalid_argument("integral_points needs a boxed system");
  if (system.num_vars > cap || system.num_vars > 62) {
    throw CapExceededError("enumerating " + std::to_string(system.num_vars) +
                           " variables exceeds the cap of " + std::to_string(cap));
  }
  const int n = system.num_vars;
  // Integer rows over 0/1 points: compare against ceil(lower) / floor(upper)
  // using machine integers once coefficients are known to be small.
  struct Row {
    std::vector<std::pair<int, long>> terms;
    std::optional<Integer> lo, hi;
  };
  std::vector<Row> rows;
  for (const auto& r : system.rows) {
    Row row;
    for (const Term& t : r.terms) row.terms.emplace_back(t.var, t.coeff.get_si());
    if (r.lower) row.lo = ceil(*r.lower);
    if (r.upper) row.hi = floor(*r.upper);
    rows.push_back(std::move(row));
  }
  const bool small = std::all_of(system.rows.begin(), system.rows.end(), [](const auto& r) {
    return std::all_of(r.terms.begin(), r.terms.end(),
                       [](const Term& t) { return t.coeff.fits_slong_p() && abs(t.coeff) < (1L << 40); });
  });

  std::vector<Assignment> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  Assignment a(static_cast<std::size_t>(n));
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int i = 0; i < n; ++i) a[i] = (m >> (n - 1 - i)) & 1U;
    bool ok = true;
    if (small) {
      for (const Row& r : rows) {
        long s = 0;
        for (auto [v, c] : r.terms) s += a[v] ? c : 0;
        if ((r.lo && *r.lo > s) || (r.hi && *r.hi < s)) {
          ok = false;
          break;
        }
      }
    } else {
      ok = satisfies(system, to_point(a));
    }
    if (ok) out.push_back(a);
  }
  return out;
}

std::string format_row(const BoundedInequality& row) {
  std::ostringstream out;
  if (row.lower) out << to_string(*row.lower) << " <= ";
  if (row.terms.empty()) {
    out << "0";
  } else {
    for (std::size_t i = 0; i < row.terms.size(); ++i) {
      if (i) out << " + ";
      out << to_string(row.terms[i].coeff) << "*x" << row.terms[i].var + 1;
    }
  }
  if (row.upper) out << " <= " << to_string(*row.upper);
  return out.str();
}

std::string format_system(const InequalitySystem& system) {
  std::ostringstream out;
  for (const auto& r : system.rows) out << format_row(r) << '\n';
  if (system.box && system.num_vars > 0) {
    out << "0 <= x1..x" << system.num_vars << " <= 1\n";
  }
  return out.str();
}

}  // namespace satnum
