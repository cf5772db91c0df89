#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satnum/chain_synth.hpp"
#include "satnum/fourier_motzkin.hpp"
#include "satnum/reduction.hpp"

namespace satnum {

/// The axis-parallel line through 0/1 points that agree on `fixed`; only the
/// dominant variable moves along it.
struct DecisionLine {
  Var dominant_var = 0;
  std::vector<std::pair<Var, int>> fixed;

  /// e.g. "x2=0;x5=1", or "-" with no fixed coordinates.
  std::string label() const;
};

struct LineReport {
  DecisionLine line;
  /// Feasible range of the dominant variable on the line; nullopt when empty.
  std::optional<Interval> interval;
  bool excludes_infeasible = true;
  /// Distance from the infeasible value to the nearest endpoint, for lines
  /// with a nonempty interval that excludes the infeasible value.
  std::optional<Rational> distance;
};

struct MarginReport {
  Var dominant_var = 0;
  int infeasible_value = 0;
  std::vector<Var> projection_vars;
  InequalitySystem projected;
  std::vector<LineReport> lines;
  /// Minimum distance over the lines that exclude the infeasible value;
  /// nullopt when no line has a decision point.
  std::optional<Rational> margin;
  /// |a2| / |a1| from the chain aggregate, when a companion candidate with a
  /// nonzero coefficient is kept.
  std::optional<Rational> ratio_bound;

  /// True when every line keeps the infeasible value out.
  bool all_lines_exclude() const;
};

struct MarginOptions {
  FmOptions fm;
  std::size_t line_cap = 4096;
};

/// Interval of the dominant variable on `line` in a projected system whose
/// rows mention only the dominant variable and the fixed ones. Box applied.
/// Throws std::invalid_argument for an unboxed system or a row that mentions
/// any other variable.
std::optional<Interval> decision_interval(const InequalitySystem& projected, const DecisionLine& line);

/// Same interval by exact LP on the unprojected system.
std::optional<Interval> lp_decision_interval(const InequalitySystem& system, const DecisionLine& line);

/// Projects onto `keep` and measures every decision line. Throws
/// std::invalid_argument when keep lacks the dominant variable or the
/// dominant variable appears in no row, CapExceededError past line_cap lines,
/// and BlowupError from the projection.
MarginReport decision_margin(const InequalitySystem& system, Var dominant_var, int infeasible_value,
                             const std::vector<Var>& keep, const MarginOptions& options = {});

/// decision_margin on a synthesized instance with ratio_bound filled in
/// from its chain aggregate.
MarginReport decision_margin(const SynthesizedInstance& inst, const std::vector<Var>& keep,
                             const MarginOptions& options = {});

/// The aggregate row alone as a boxed system over the instance's variables.
InequalitySystem aggregate_system(const SynthesizedInstance& inst, const AggregateInequality& agg);

enum class DigitPattern { Canonical, TwoCandidate };
enum class Companion { None, Coupler, Candidate };

struct SweepTemplate {
  FamilyFragment fragment = FamilyFragment::General3Sat;
  int c = 3;
  std::optional<int> b;
  /// TwoCandidate: two candidates, all-ones digits for x1 and a single digit in the
  /// last chain for x2.
  DigitPattern digits = DigitPattern::Canonical;
  Companion companion = Companion::None;
  int coupler_value = 1;
};

struct SweepRow {
  CoupledFamilySpec spec;
  AggregateInequality aggregate;
  Integer a1;
  std::optional<Integer> a2;
  MarginReport report;
  /// Margin of the aggregate row alone with the same kept variables.
  std::optional<Rational> aggregate_margin;
};

CoupledFamilySpec sweep_spec(const SweepTemplate& tmpl, int e);
std::vector<Var> sweep_keep(const SweepTemplate& tmpl, const SynthesizedInstance& inst);

std::vector<SweepRow> margin_decay_sweep(const SweepTemplate& tmpl, int e_from, int e_to,
                                         const MarginOptions& options = {});

/// `line,lower,upper,excludes_infeasible,distance,distance_float` per line,
/// then `margin` and (when known) `ratio_bound` summary rows.
std::string margin_csv(const MarginReport& report);

}  // namespace satnum
