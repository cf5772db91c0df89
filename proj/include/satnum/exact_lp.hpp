#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "satnum/reduction.hpp"

namespace satnum {

enum class Sense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
  InequalitySystem system;
  std::vector<std::pair<Var, Rational>> objective;
  Sense sense = Sense::Min;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::optional<Rational> value;
  std::optional<RationalPoint> witness;
};

/// Exact two-phase simplex with Bland's rule over the rational relaxation.
/// Unboxed variables are free (split into positive and negative parts).
LpResult solve(const LpProblem& problem);

/// Feasibility only.
bool lp_feasible(const InequalitySystem& system);

/// [min, max] of one variable over a boxed system; nullopt when infeasible.
/// Throws std::invalid_argument for an unboxed system.
std::optional<Interval> variable_interval(const InequalitySystem& system, Var v);

/// Every variable's interval. Phase 1 runs once and each optimization starts
/// from the previous optimal basis, so this is far cheaper than calling
/// variable_interval per variable. The results are identical.
std::optional<std::vector<Interval>> variable_intervals(const InequalitySystem& system);

/// Adds `x_v = value` rows for each fixed coordinate.
InequalitySystem fix_coordinates(InequalitySystem system,
                                 const std::vector<std::pair<Var, Rational>>& fixed);

}  // namespace satnum
