#include "satnum/horn_margin_solver.hpp"

#include "satnum/errors.hpp"
#include "satnum/exact_lp.hpp"
#include "satnum/solvers.hpp"

namespace satnum {

HornSolveReport solve_horn_margin(const Cnf& cnf) {
  if (!classify(cnf).horn) throw FragmentError("solve_horn_margin needs a Horn formula");
  HornSolveReport rep;
  rep.result.method = "horn_lp_margin";
  rep.unit_prop = solve_horn_unit_prop(cnf);

  auto intervals = variable_intervals(cnf_to_system(cnf));
  rep.lp_feasible = intervals.has_value();
  if (rep.lp_feasible) {
    rep.intervals = std::move(*intervals);
    Assignment a(static_cast<std::size_t>(cnf.num_vars), 0);
    for (Var v = 0; v < cnf.num_vars; ++v) {
      if (rep.intervals[static_cast<std::size_t>(v)].lower > 0) {
        rep.selected.push_back(v);
        a[static_cast<std::size_t>(v)] = 1;
      }
    }
    if (evaluate(cnf, a)) {
      rep.result.status = SatStatus::Sat;
      rep.result.witness = std::move(a);
    }
  }
  rep.agreed_with_unit_prop = rep.result.status == rep.unit_prop.status &&
                              (!rep.result.sat() || rep.result.witness == rep.unit_prop.witness);
  return rep;
}

}  // namespace satnum
