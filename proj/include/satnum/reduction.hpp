#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satnum/cnf.hpp"
#include "satnum/rational.hpp"
#include "satnum/solvers.hpp"

namespace satnum {

struct Term {
  Var var = 0;
  Integer coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// `lower <= sum coeff * x <= upper`, sparse, terms sorted by variable with
/// no zero coefficients. A missing bound means that side is unconstrained;
/// clause rows always carry both.
struct BoundedInequality {
  std::vector<Term> terms;
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  /// Sorts terms, merges duplicates and drops zeros.
  static BoundedInequality make(std::vector<Term> terms, std::optional<Rational> lower,
                                std::optional<Rational> upper);

  Integer coeff(Var v) const;
  Rational value(const std::vector<Rational>& point) const;
  bool holds(const std::vector<Rational>& point) const;

  /// Extremes of the expression over the unit box.
  Integer box_min() const;
  Integer box_max() const;

  friend bool operator==(const BoundedInequality&, const BoundedInequality&) = default;
};

struct InequalitySystem {
  int num_vars = 0;
  std::vector<BoundedInequality> rows;
  /// 0 <= x_i <= 1 for every variable, kept out of `rows`.
  bool box = true;

  /// Throws std::invalid_argument on an out-of-range variable or lower > upper.
  void validate() const;
  friend bool operator==(const InequalitySystem&, const InequalitySystem&) = default;
};

using RationalPoint = std::vector<Rational>;

struct Interval {
  Rational lower;
  Rational upper;

  bool contains(const Rational& v) const { return lower <= v && v <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// p positive and n negative literals give +1/-1 coefficients with bounds
/// [1 - n, p]. Throws FragmentError for XOR clauses.
BoundedInequality clause_to_inequality(const Clause& clause);

/// One row per clause in clause order, box on. Throws FragmentError when an
/// XOR clause is present.
InequalitySystem cnf_to_system(const Cnf& cnf);

/// Throws std::invalid_argument on a dimension mismatch.
bool satisfies(const InequalitySystem& system, const RationalPoint& p);

/// All 0/1 points of a boxed system in lexicographic order. Throws
/// CapExceededError past `cap` variables and std::invalid_argument when the
/// box flag is off.
std::vector<Assignment> integral_points(const InequalitySystem& system,
                                        int cap = kDefaultBruteForceCap);

/// `<lower> <= <c1>*x1 + <c2>*x2 <= <upper>` per row (missing sides omitted),
/// then `0 <= x1..xn <= 1` when boxed.
std::string format_row(const BoundedInequality& row);
std::string format_system(const InequalitySystem& system);

RationalPoint to_point(const Assignment& a);

}  // namespace satnum
