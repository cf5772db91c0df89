#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satnum/chain_synth.hpp"
#include "satnum/reduction.hpp"

namespace satnum {

/// `sum terms >= bound`. The one-sided form every elimination works on.
struct GeqRow {
  std::vector<Term> terms;
  Rational bound;

  Integer coeff(Var v) const;
  friend bool operator==(const GeqRow&, const GeqRow&) = default;
};

std::string format_geq(const GeqRow& row);

/// new_row = lower_multiplier * rows[lower_row] + upper_multiplier * rows[upper_row]
struct Combination {
  std::size_t lower_row = 0;
  std::size_t upper_row = 0;
  Rational lower_multiplier;
  Rational upper_multiplier;
  std::size_t new_row = 0;
};

struct EliminationStep {
  Var var = 0;
  std::vector<Combination> combinations;
  /// Rows of the working set after the step (ids into EliminationTrace::rows).
  std::size_t rows_after = 0;
};

struct EliminationTrace {
  /// Every row ever seen: input halves, box rows used in pairings, and derived
  /// rows. Combinations refer to these ids.
  std::vector<GeqRow> rows;
  std::vector<EliminationStep> steps;
  InequalitySystem final_system;

  /// `row<i>: <row>` for each row, then one
  /// `step x<v>: row<i> * <p/q> + row<j> * <r/s> -> row<k>` line per combination.
  std::string to_text() const;
};

enum class EliminationOrder { Given, Greedy };

struct FmOptions {
  EliminationOrder order = EliminationOrder::Greedy;
  std::size_t max_rows = 100000;
  /// Drop rows implied by the others (one LP per row) after each step.
  bool lp_redundancy = false;
  /// Pairwise dominance pruning is skipped above this many rows.
  std::size_t dominance_limit = 4000;
};

/// One elimination step. A variable absent from every row leaves the system
/// unchanged.
std::pair<InequalitySystem, EliminationTrace> fm_eliminate(const InequalitySystem& system, Var v,
                                                           const FmOptions& options = {});

/// Eliminates every variable outside `keep`. With EliminationOrder::Given the
/// variables are taken from `order` (any left out follow in index order).
/// Throws BlowupError past options.max_rows and std::invalid_argument when
/// keep is empty. The result keeps the original variable indexing.
std::pair<InequalitySystem, EliminationTrace> fm_project(const InequalitySystem& system,
                                                         const std::vector<Var>& keep,
                                                         const FmOptions& options = {},
                                                         const std::vector<Var>& order = {});

/// Rounds each bound of an all-integer-coefficient row inwards (ceil of lower,
/// floor of upper). Valid for integral points only; never applied implicitly.
InequalitySystem integral_tighten(const InequalitySystem& system);

/// The single surviving row of the multiplier-weighted sum of all chains.
struct AggregateInequality {
  /// Over candidate variables only; both bounds present.
  BoundedInequality row;
  Integer b_min;
  Integer b_max;
  /// Per coupler j: (occurrences in chain j, occurrences in chain j+1), i.e.
  /// the multiplier pairs n_1, n_2, ..., n_{2(e-1)}.
  std::vector<Integer> multipliers;
  /// Factor applied to every clause row of chain j in the sum.
  std::vector<Integer> chain_multipliers;

  Integer coeff(Var v) const { return row.coeff(v); }
};

/// Throws CancellationError naming the first variable that survives although
/// it is not a candidate, and FragmentError for XOR instances.
AggregateInequality chain_aggregate(const SynthesizedInstance& inst);

/// Chain weights from the multiplier pairs: chain j gets
/// prod_{k<j} n_odd(k) * prod_{k>=j} n_even(k). With (1, b) everywhere this
/// is b^(e-1-j).
std::vector<Integer> nested_chain_weights(const std::vector<Integer>& multipliers, int e);

/// Digits of `value` in base b, most significant first, e positions.
/// b = 1 puts everything in the last position. nullopt when value < 0 or
/// value >= b^e.
std::optional<std::vector<Integer>> decompose_base_b(const Integer& value, const Integer& b, int e);

/// floor((n - d + 1) / (c + 1)). Throws std::invalid_argument unless n > d
/// and c >= 1.
long max_exponent(long n, long d, long c);

struct NumberSystemReport {
  Integer basis;
  int exponent = 0;
  /// Candidate variable with its generator digit row.
  std::vector<std::pair<Var, std::vector<int>>> digits;
  /// Aggregate coefficient magnitude per candidate.
  std::vector<Integer> coefficients;
  /// Value predicted from the digit row (positional, or nested weights when
  /// the family spec overrides multiplicities).
  std::vector<Integer> expected;
  bool reconstruction_ok = false;
};

NumberSystemReport number_system(const CoupledFamilySpec& spec, const SynthesizedInstance& inst,
                                 const AggregateInequality& agg);

}  // namespace satnum
