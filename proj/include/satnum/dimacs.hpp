#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "satnum/cnf.hpp"

namespace satnum {

struct ParseOptions {
  /// When false, clauses are kept exactly as written (duplicates, tautologies,
  /// negated XOR literals). Used to study XOR multiplicity effects.
  bool normalize = true;
};

struct DimacsParse {
  Cnf cnf;
  /// An empty clause was read (or an XOR clause cancelled to 0 = 1). The
  /// offending clause is not stored in `cnf`.
  bool trivially_unsat = false;
  std::vector<std::string> warnings;
};

/// Parses DIMACS CNF with the `x` XOR-line extension. Throws DimacsError on a
/// malformed header, an out-of-range literal, a clause missing its
/// terminating 0, or a clause count that disagrees with the header.
DimacsParse parse_dimacs(std::string_view text, const ParseOptions& options = {});

/// Convenience wrapper: parse and throw UnsatError if the input was
/// trivially unsatisfiable.
Cnf parse_cnf(std::string_view text, const ParseOptions& options = {});

/// Writes `p cnf` plus one clause per line. Each comment line is emitted as
/// `c <line>` before the header. XOR clauses with parity 0 are written with
/// their first literal negated.
std::string write_dimacs(const Cnf& cnf, const std::vector<std::string>& comments = {});

/// `v 1 -2 3 0` style value line.
std::string format_assignment(const Assignment& a);

}  // namespace satnum
