#pragma once

#include <cstddef>
#include <vector>

#include "satnum/cnf.hpp"

namespace satnum {

inline constexpr int kDefaultBruteForceCap = 24;

/// Every model in lexicographic order (x1 most significant, 0 before 1).
/// Throws CapExceededError when num_vars exceeds `cap`.
std::vector<Assignment> brute_force_models(const Cnf& cnf, int cap = kDefaultBruteForceCap);

/// Values a variable takes across all models.
struct ValueSet {
  bool zero = false;
  bool one = false;

  bool dominant() const { return zero != one; }
  /// Only meaningful when dominant().
  int value() const { return one ? 1 : 0; }
  friend bool operator==(const ValueSet&, const ValueSet&) = default;
};

/// Per-variable value sets over the brute-force model list. Throws UnsatError
/// when there are no models (dominance is undefined).
std::vector<ValueSet> dominant_variables(const Cnf& cnf, int cap = kDefaultBruteForceCap);

/// Implication graph + strongly connected components. Throws FragmentError
/// unless the formula is TWO_SAT.
SolveResult solve_2sat(const Cnf& cnf);

/// Minimal model by unit propagation. Throws FragmentError unless HORN.
SolveResult solve_horn_unit_prop(const Cnf& cnf);

/// Gaussian elimination over GF(2); free variables take 0. Throws
/// FragmentError when an OR clause is present.
SolveResult solve_xor_gauss(const Cnf& cnf);

/// Brute force as a solver (first model in lexicographic order).
SolveResult solve_brute_force(const Cnf& cnf, int cap = kDefaultBruteForceCap);

}  // namespace satnum
