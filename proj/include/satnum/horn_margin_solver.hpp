#pragma once

#include <vector>

#include "satnum/cnf.hpp"
#include "satnum/reduction.hpp"

namespace satnum {

struct HornSolveReport {
  /// method "horn_lp_margin".
  SolveResult result;
  bool lp_feasible = false;
  /// Per-variable LP range; empty when the relaxation is infeasible.
  std::vector<Interval> intervals;
  /// Variables whose LP lower bound is positive; they alone are set to 1.
  std::vector<Var> selected;
  SolveResult unit_prop;
  /// Same decision as unit propagation and, when SAT, the same witness.
  bool agreed_with_unit_prop = false;
};

/// Relax to the LP, read off every variable's range, set exactly the
/// variables whose range excludes 0, then check the assignment. Throws
/// FragmentError unless the formula is Horn.
HornSolveReport solve_horn_margin(const Cnf& cnf);

}  // namespace satnum
