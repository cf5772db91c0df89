#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "satnum/cnf.hpp"

namespace satnum {

enum class Polarity { Positive, Negative };

/// An implication chain over `c` fresh variables:
/// (z1) & (-z1 | z2) & ... & (-z_{c-1} | z_c) & (-z_c), which is UNSAT and
/// becomes SAT as soon as any one of its c+1 clauses is satisfied by an
/// inserted literal. Negative polarity mirrors every literal.
struct ChainSpec {
  int c = 1;
  Polarity polarity = Polarity::Positive;
};

Cnf make_chain(const ChainSpec& spec, ClauseKind kind = ClauseKind::Or);

/// A fresh variable inserted into `multiplicity` clauses of a chain with one
/// shared sign. `signs`, when non-empty, lists the sign per occurrence and is
/// rejected unless all entries agree.
struct DominantBlockSpec {
  int multiplicity = 1;
  Polarity polarity = Polarity::Positive;
  std::vector<Polarity> signs;
};

enum class FamilyFragment { General3Sat, TwoSat, HornCoupler, HornDominant, Xor };

std::string to_string(FamilyFragment f);
/// Accepts the names produced by to_string. Throws std::invalid_argument.
FamilyFragment parse_family_fragment(std::string_view name);

/// Parameters of a coupled chain family: `e` chains of `c` internal
/// variables, `e - 1` couplers, `d` candidates. Candidate i is inserted
/// digits[i][j] times into chain j. Coupler j sits between chains j and j+1;
/// by default it appears once in chain j and `b` times in chain j+1.
struct CoupledFamilySpec {
  int e = 1;
  int b = 1;
  int c = 1;
  int d = 1;
  std::vector<std::vector<int>> digits;
  /// Value the couplers are pushed towards: 1 puts the single occurrence
  /// positive and the b-fold occurrence negative, 0 the reverse.
  int coupler_value = 1;
  FamilyFragment fragment = FamilyFragment::General3Sat;
  /// Clause width budget. Defaults to 2 for TWO_SAT and 3 otherwise.
  std::optional<int> width;
  /// Optional per-coupler override of coupler_value (size e - 1).
  std::vector<int> coupler_polarity;
  /// Optional per-coupler (occurrences in chain j, occurrences in chain j+1);
  /// defaults to (1, b).
  std::vector<std::pair<int, int>> coupler_multiplicities;

  int clause_width() const;
  int coupler_value_at(int j) const;
  std::pair<int, int> multiplicities_at(int j) const;
  Polarity candidate_polarity() const;
  /// Total variables: c*e + (e - 1) + d.
  int num_vars() const { return c * e + (e - 1) + d; }
};

struct PlacementOptions {
  /// When set, ties between equally free clauses are broken by a seeded
  /// permutation instead of clause order.
  std::optional<std::uint64_t> shuffle_seed;
};

struct SynthesizedInstance {
  Cnf cnf;
  /// Clause indices of each chain; together they partition cnf.clauses.
  std::vector<std::vector<std::size_t>> chain_rows;
  std::vector<Var> coupler_vars;
  std::vector<Var> candidate_vars;
  std::vector<Polarity> candidate_polarity;
  Var dominant_var = 0;
  int expected_dominant_value = 1;
};

/// Slots available for foreign variables in a chain of m clauses at width k.
/// Throws std::invalid_argument unless k >= 2 and m >= 1.
long capacity(long m, long k);

/// Inserts a fresh variable into a chain from make_chain. Throws
/// FragmentError on mixed signs and CapacityError when the occurrences do not
/// fit under `width`.
SynthesizedInstance attach_dominant(const Cnf& chain, const DominantBlockSpec& block,
                                    std::optional<int> width = std::nullopt,
                                    const PlacementOptions& placement = {});

/// Throws CapacityError when a chain cannot host its insertions and
/// FragmentError when the family spec breaks the fragment's rules.
SynthesizedInstance synthesize(const CoupledFamilySpec& spec, const PlacementOptions& placement = {});

/// The default member of each fragment family, e.g. all-ones digits for
/// GENERAL_3SAT or first-and-last-chain connections for TWO_SAT.
CoupledFamilySpec canonical_family_spec(FamilyFragment fragment, int e, int c,
                                        std::optional<int> b = std::nullopt);

SynthesizedInstance synthesize_fragment_family(FamilyFragment fragment, int e, int c,
                                               std::optional<int> b = std::nullopt);

/// The instance plus unit clauses switching every non-dominant candidate off,
/// which is the setting where the dominant candidate is forced.
Cnf pin_other_candidates(const SynthesizedInstance& inst);

/// DIMACS with `c` annotation lines recording chains, couplers and candidates.
std::string write_instance(const SynthesizedInstance& inst,
                           const std::vector<std::string>& extra_comments = {});

/// Reads back write_instance output. Throws DimacsError when annotations are
/// missing.
SynthesizedInstance read_instance(std::string_view text);

}  // namespace satnum
