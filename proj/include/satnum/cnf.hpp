#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace satnum {

/// Variables are 0-based inside the library. DIMACS I/O is the only place
/// that sees 1-based indices.
using Var = int;

struct Literal {
  Var var = 0;
  bool negated = false;

  static Literal pos(Var v) { return {v, false}; }
  static Literal neg(Var v) { return {v, true}; }
  /// From a nonzero DIMACS integer (1-based, sign = polarity).
  static Literal from_dimacs(int lit);
  int to_dimacs() const { return negated ? -(var + 1) : var + 1; }
  Literal operator~() const { return {var, !negated}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

enum class ClauseKind { Or, Xor };

/// An OR clause is satisfied when some literal is true. An XOR clause is
/// satisfied when the XOR of its literal values equals `parity`; after
/// normalization every XOR literal is positive and negations live in `parity`.
struct Clause {
  std::vector<Literal> literals;
  ClauseKind kind = ClauseKind::Or;
  bool parity = true;

  static Clause make_or(std::vector<Literal> lits) { return {std::move(lits), ClauseKind::Or, true}; }
  static Clause make_xor(std::vector<Literal> lits, bool parity = true) {
    return {std::move(lits), ClauseKind::Xor, parity};
  }

  bool is_xor() const { return kind == ClauseKind::Xor; }
  std::size_t width() const { return literals.size(); }
  std::size_t positive_count() const;
  std::size_t negative_count() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Cnf {
  int num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws std::invalid_argument when a literal is out of range.
  void validate() const;
  bool has_xor() const;
  bool all_xor() const;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// One 0/1 value per variable.
using Assignment = std::vector<std::uint8_t>;

enum class NormalizeOutcome { Kept, Tautology, Empty };

/// Normalizes in place. OR: duplicate literals removed (first occurrence order
/// kept); a clause holding x and not-x is a tautology. XOR: variables sorted,
/// duplicates cancel pairwise, negations fold into parity; an XOR that cancels
/// to nothing is a tautology (parity 0) or empty (parity 1).
NormalizeOutcome normalize(Clause& clause);

bool evaluate(const Clause& clause, const Assignment& a);

/// True iff every clause holds. Throws std::invalid_argument when the
/// assignment length differs from num_vars.
bool evaluate(const Cnf& cnf, const Assignment& a);

enum class Fragment { TwoSat, Horn, DualHorn, Xor, GeneralK };

/// Fragment membership. A formula can carry several tags at once.
/// OR-based tags (TWO_SAT, HORN, DUAL_HORN, GENERAL_K) require that no XOR
/// clause is present; XOR requires that every clause is XOR.
struct FragmentSet {
  bool two_sat = false;
  bool horn = false;
  bool dual_horn = false;
  bool xor_sat = false;
  std::optional<int> general_k;

  bool contains(Fragment f) const;
  /// e.g. "TWO_SAT,HORN,GENERAL_K(2)"; "NONE" when empty.
  std::string to_string() const;

  friend bool operator==(const FragmentSet&, const FragmentSet&) = default;
};

FragmentSet classify(const Cnf& cnf);

enum class SatStatus { Sat, Unsat };

struct SolveResult {
  SatStatus status = SatStatus::Unsat;
  std::optional<Assignment> witness;
  std::string method;

  bool sat() const { return status == SatStatus::Sat; }
};

}  // namespace satnum
