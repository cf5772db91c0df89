#include "satnum/chain_synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "satnum/dimacs.hpp"
#include "satnum/errors.hpp"

namespace satnum {

namespace {

Literal signed_lit(Var v, Polarity p) {
  return p == Polarity::Positive ? Literal::pos(v) : Literal::neg(v);
}

void append_chain(Cnf& cnf, Var first, int c, Polarity polarity, ClauseKind kind) {
  auto lit = [&](Var v, bool negated) {
    return Literal{v, polarity == Polarity::Positive ? negated : !negated};
  };
  auto push = [&](std::vector<Literal> lits) { cnf.clauses.push_back({std::move(lits), kind, true}); };
  push({lit(first, false)});
  for (int k = 1; k < c; ++k) push({lit(first + k - 1, true), lit(first + k, false)});
  push({lit(first + c - 1, true)});
}

struct Insertion {
  Literal lit;
  int multiplicity = 1;
  std::string role;
};

// Spreads each insertion over distinct clauses of one chain. Largest
// multiplicity first, each occurrence into the clauses with most free width;
// this finds a placement whenever one exists. Under `horn`, a positive
// literal may only enter a clause that has no positive literal yet.
void place(std::vector<Clause>& clauses, std::vector<Insertion> items, std::optional<int> width,
           bool horn, std::mt19937_64* rng, int chain_label) {
  const std::size_t m = clauses.size();
  std::vector<std::size_t> priority(m);
  std::iota(priority.begin(), priority.end(), std::size_t{0});
  if (rng) {
    for (std::size_t i = m; i > 1; --i) std::swap(priority[i - 1], priority[(*rng)() % i]);
  }
  std::vector<std::size_t> rank(m);
  for (std::size_t i = 0; i < m; ++i) rank[priority[i]] = i;

  auto residual = [&](std::size_t ci) -> long {
    if (!width) return 1L << 30;
    return static_cast<long>(*width) - static_cast<long>(clauses[ci].width());
  };

  const std::string where = "chain " + std::to_string(chain_label);
  if (width) {
    long need = 0;
    long have = 0;
    std::string detail;
    for (const auto& it : items) {
      need += it.multiplicity;
      detail += (detail.empty() ? "" : ", ") + it.role + " x" + std::to_string(it.multiplicity);
    }
    for (std::size_t ci = 0; ci < m; ++ci) have += std::max(0L, residual(ci));
    if (need > have) {
      throw CapacityError("capacity violation: " + where + " needs " + std::to_string(need) +
                          " insertion slots (" + detail + ") but " + std::to_string(m) +
                          " clauses at width " + std::to_string(*width) + " hold " +
                          std::to_string(have));
    }
  }

  // Positive Horn insertions have a forced clause, so they go first.
  std::stable_sort(items.begin(), items.end(), [&](const Insertion& a, const Insertion& b) {
    const bool fa = horn && !a.lit.negated;
    const bool fb = horn && !b.lit.negated;
    if (fa != fb) return fa;
    return a.multiplicity > b.multiplicity;
  });

  for (const auto& it : items) {
    if (static_cast<std::size_t>(it.multiplicity) > m) {
      throw CapacityError("capacity violation: " + where + ": " + it.role + " needs " +
                          std::to_string(it.multiplicity) + " distinct clauses, the chain has " +
                          std::to_string(m));
    }
    std::vector<std::size_t> open;
    for (std::size_t ci = 0; ci < m; ++ci) {
      const auto& lits = clauses[ci].literals;
      const bool has_var = std::any_of(lits.begin(), lits.end(),
                                       [&](const Literal& l) { return l.var == it.lit.var; });
      if (has_var || residual(ci) <= 0) continue;
      if (horn && !it.lit.negated && clauses[ci].positive_count() > 0) continue;
      open.push_back(ci);
    }
    std::stable_sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
      if (residual(a) != residual(b)) return residual(a) > residual(b);
      return rank[a] < rank[b];
    });
    if (open.size() < static_cast<std::size_t>(it.multiplicity)) {
      if (horn && !it.lit.negated) {
        throw FragmentError("Horn violation: " + where + " has no clause free of positive " +
                            "literals left for " + it.role);
      }
      throw CapacityError("capacity violation: " + where + ": no room for " + it.role + " x" +
                          std::to_string(it.multiplicity));
    }
    for (int k = 0; k < it.multiplicity; ++k) clauses[open[k]].literals.push_back(it.lit);
  }
}

bool is_horn(FamilyFragment f) {
  return f == FamilyFragment::HornCoupler || f == FamilyFragment::HornDominant;
}

void validate_spec(const CoupledFamilySpec& s) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (s.e < 1) fail("e must be >= 1");
  if (s.b < 1) fail("b must be >= 1");
  if (s.c < 1) fail("c must be >= 1");
  if (s.d < 1) fail("d must be >= 1");
  if (s.coupler_value != 0 && s.coupler_value != 1) fail("coupler_value must be 0 or 1");
  if (s.clause_width() < 2) fail("clause width must be >= 2");
  if (s.digits.size() != static_cast<std::size_t>(s.d)) fail("digits must have d rows");
  for (const auto& row : s.digits) {
    if (row.size() != static_cast<std::size_t>(s.e)) fail("every digit row must have e entries");
    for (int v : row) {
      if (v < 0) fail("digits must be nonnegative");
    }
  }
  if (!s.coupler_polarity.empty()) {
    if (s.coupler_polarity.size() != static_cast<std::size_t>(s.e - 1)) {
      fail("coupler_polarity must have e - 1 entries");
    }
    for (int v : s.coupler_polarity) {
      if (v != 0 && v != 1) fail("coupler_polarity entries must be 0 or 1");
    }
  }
  if (!s.coupler_multiplicities.empty()) {
    if (s.coupler_multiplicities.size() != static_cast<std::size_t>(s.e - 1)) {
      fail("coupler_multiplicities must have e - 1 entries");
    }
    for (auto [p, q] : s.coupler_multiplicities) {
      if (p < 1 || q < 1) fail("coupler multiplicities must be >= 1");
    }
  }
  const bool any_connected = std::any_of(s.digits.begin(), s.digits.end(), [](const auto& row) {
    return std::any_of(row.begin(), row.end(), [](int v) { return v > 0; });
  });
  if (!any_connected) fail("no candidate is connected to any chain");

  int max_mult = 1;
  for (int j = 0; j + 1 < s.e; ++j) {
    auto [p, q] = s.multiplicities_at(j);
    max_mult = std::max({max_mult, p, q});
  }
  switch (s.fragment) {
    case FamilyFragment::TwoSat:
      if (s.clause_width() != 2) throw FragmentError("TWO_SAT families use clause width 2");
      if (max_mult > 1) {
        throw FragmentError("TWO_SAT: a chain holds at most two foreign variables, so every "
                            "coupler connects once on each side (b = 1)");
      }
      break;
    case FamilyFragment::Xor: {
      int max_digit = 0;
      for (const auto& row : s.digits) max_digit = std::max(max_digit, *std::max_element(row.begin(), row.end()));
      if (max_mult > 1 || max_digit > 1) {
        throw FragmentError("XOR: repeated insertion into one chain changes its parity, so "
                            "couplers and candidates connect at most once per chain");
      }
      break;
    }
    case FamilyFragment::HornDominant:
      for (const auto& row : s.digits) {
        for (int v : row) {
          if (v > 1) {
            throw FragmentError("HORN_DOMINANT: a positive candidate takes the chain's only "
                                "positive slot and connects at most once per chain");
          }
        }
      }
      break;
    default:
      break;
  }
}

}  // namespace

std::string to_string(FamilyFragment f) {
  switch (f) {
    case FamilyFragment::General3Sat: return "GENERAL_3SAT";
    case FamilyFragment::TwoSat: return "TWO_SAT";
    case FamilyFragment::HornCoupler: return "HORN_COUPLER";
    case FamilyFragment::HornDominant: return "HORN_DOMINANT";
    case FamilyFragment::Xor: return "XOR";
  }
  return "?";
}

FamilyFragment parse_family_fragment(std::string_view name) {
  for (auto f : {FamilyFragment::General3Sat, FamilyFragment::TwoSat, FamilyFragment::HornCoupler,
                 FamilyFragment::HornDominant, FamilyFragment::Xor}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown fragment '" + std::string(name) + "'");
}

int CoupledFamilySpec::clause_width() const {
  if (width) return *width;
  return fragment == FamilyFragment::TwoSat ? 2 : 3;
}

int CoupledFamilySpec::coupler_value_at(int j) const {
  return coupler_polarity.empty() ? coupler_value : coupler_polarity.at(static_cast<std::size_t>(j));
}

std::pair<int, int> CoupledFamilySpec::multiplicities_at(int j) const {
  return coupler_multiplicities.empty() ? std::pair{1, b}
                                        : coupler_multiplicities.at(static_cast<std::size_t>(j));
}

Polarity CoupledFamilySpec::candidate_polarity() const {
  return fragment == FamilyFragment::HornCoupler ? Polarity::Negative : Polarity::Positive;
}

Cnf make_chain(const ChainSpec& spec, ClauseKind kind) {
  if (spec.c < 1) throw std::invalid_argument("a chain needs at least one variable");
  Cnf cnf;
  cnf.num_vars = spec.c;
  append_chain(cnf, 0, spec.c, spec.polarity, kind);
  if (kind == ClauseKind::Xor) {
    for (auto& cl : cnf.clauses) normalize(cl);
  }
  return cnf;
}

long capacity(long m, long k) {
  if (k < 2 || m < 1) throw std::invalid_argument("capacity needs k >= 2 and m >= 1");
  return m * (k - 2) + 2;
}

SynthesizedInstance attach_dominant(const Cnf& chain, const DominantBlockSpec& block,
                                    std::optional<int> width, const PlacementOptions& placement) {
  if (block.multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
  if (!block.signs.empty()) {
    if (block.signs.size() != static_cast<std::size_t>(block.multiplicity)) {
      throw std::invalid_argument("one sign per occurrence expected");
    }
    if (std::any_of(block.signs.begin(), block.signs.end(),
                    [&](Polarity p) { return p != block.signs.front(); })) {
      throw FragmentError("mixed signs: with both polarities some clause is satisfied whatever "
                          "the inserted variable's value, so the chain is always satisfied");
    }
  }
  const Polarity pol = block.signs.empty() ? block.polarity : block.signs.front();
  const bool xor_chain = chain.all_xor() && !chain.clauses.empty();
  if (xor_chain && block.multiplicity > 1) {
    throw FragmentError("XOR: repeated insertion into one chain changes its parity");
  }

  SynthesizedInstance inst;
  const Var dom = chain.num_vars;
  inst.cnf.num_vars = chain.num_vars + 1;
  std::vector<Clause> clauses = chain.clauses;
  std::optional<std::mt19937_64> rng;
  if (placement.shuffle_seed) rng.emplace(*placement.shuffle_seed);
  place(clauses, {{signed_lit(dom, pol), block.multiplicity, "dominant variable"}}, width, false,
        rng ? &*rng : nullptr, 1);
  for (auto& cl : clauses) {
    if (cl.is_xor()) normalize(cl);
  }
  inst.cnf.clauses = std::move(clauses);
  inst.chain_rows.emplace_back(inst.cnf.clauses.size());
  std::iota(inst.chain_rows[0].begin(), inst.chain_rows[0].end(), std::size_t{0});
  inst.candidate_vars = {dom};
  inst.candidate_polarity = {pol};
  inst.dominant_var = dom;
  inst.expected_dominant_value = pol == Polarity::Positive ? 1 : 0;
  return inst;
}

SynthesizedInstance synthesize(const CoupledFamilySpec& spec, const PlacementOptions& placement) {
  validate_spec(spec);
  const int e = spec.e;
  const int c = spec.c;
  const ClauseKind kind = spec.fragment == FamilyFragment::Xor ? ClauseKind::Xor : ClauseKind::Or;
  const bool horn = is_horn(spec.fragment);
  const Polarity cand_pol = spec.candidate_polarity();

  SynthesizedInstance inst;
  inst.cnf.num_vars = spec.num_vars();
  for (int j = 0; j + 1 < e; ++j) inst.coupler_vars.push_back(c * e + j);
  for (int i = 0; i < spec.d; ++i) {
    inst.candidate_vars.push_back(c * e + (e - 1) + i);
    inst.candidate_polarity.push_back(cand_pol);
  }

  std::optional<std::mt19937_64> rng;
  if (placement.shuffle_seed) rng.emplace(*placement.shuffle_seed);

  for (int j = 0; j < e; ++j) {
    Cnf chain;
    append_chain(chain, j * c, c, Polarity::Positive, kind);
    std::vector<Insertion> items;
    if (j > 0) {
      const Var y = inst.coupler_vars[j - 1];
      const int mult = spec.multiplicities_at(j - 1).second;
      const Polarity p = spec.coupler_value_at(j - 1) == 1 ? Polarity::Negative : Polarity::Positive;
      items.push_back({signed_lit(y, p), mult, "coupler y" + std::to_string(j)});
    }
    if (j + 1 < e) {
      const Var y = inst.coupler_vars[j];
      const int mult = spec.multiplicities_at(j).first;
      const Polarity p = spec.coupler_value_at(j) == 1 ? Polarity::Positive : Polarity::Negative;
      items.push_back({signed_lit(y, p), mult, "coupler y" + std::to_string(j + 1)});
    }
    for (int i = 0; i < spec.d; ++i) {
      const int a = spec.digits[i][j];
      if (a > 0) {
        items.push_back({signed_lit(inst.candidate_vars[i], cand_pol), a,
                         "candidate x" + std::to_string(i + 1)});
      }
    }
    if (horn) {
      int positives = 0;
      for (const auto& it : items) {
        if (!it.lit.negated) positives += it.multiplicity;
      }
      if (positives > 1) {
        throw FragmentError("Horn violation: chain " + std::to_string(j + 1) + " would carry " +
                            std::to_string(positives) + " positive insertions; a Horn chain " +
                            "has a single clause without a positive literal");
      }
    }
    place(chain.clauses, std::move(items), spec.clause_width(), horn, rng ? &*rng : nullptr, j + 1);

    std::vector<std::size_t> rows;
    for (auto& cl : chain.clauses) {
      if (cl.is_xor()) normalize(cl);
      rows.push_back(inst.cnf.clauses.size());
      inst.cnf.clauses.push_back(std::move(cl));
    }
    inst.chain_rows.push_back(std::move(rows));
  }

  for (int i = 0; i < spec.d; ++i) {
    const auto& row = spec.digits[i];
    if (std::any_of(row.begin(), row.end(), [](int v) { return v > 0; })) {
      inst.dominant_var = inst.candidate_vars[i];
      break;
    }
  }
  inst.expected_dominant_value = cand_pol == Polarity::Positive ? 1 : 0;
  return inst;
}

CoupledFamilySpec canonical_family_spec(FamilyFragment fragment, int e, int c, std::optional<int> b) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  CoupledFamilySpec s;
  s.e = e;
  s.c = c;
  s.d = 1;
  s.fragment = fragment;
  s.coupler_value = 1;
  std::vector<int> row(static_cast<std::size_t>(e), 0);
  switch (fragment) {
    case FamilyFragment::General3Sat:
    case FamilyFragment::HornCoupler:
      s.b = b.value_or(2);
      std::fill(row.begin(), row.end(), 1);
      break;
    case FamilyFragment::TwoSat:
      s.b = b.value_or(1);
      if (e == 1) {
        row[0] = 2;
      } else {
        row.front() = 1;
        row.back() = 1;
      }
      break;
    case FamilyFragment::HornDominant:
      s.b = b.value_or(2);
      row.back() = 1;
      break;
    case FamilyFragment::Xor:
      s.b = b.value_or(1);
      row.front() = 1;
      break;
  }
  s.digits = {row};
  return s;
}

SynthesizedInstance synthesize_fragment_family(FamilyFragment fragment, int e, int c,
                                               std::optional<int> b) {
  return synthesize(canonical_family_spec(fragment, e, c, b));
}

Cnf pin_other_candidates(const SynthesizedInstance& inst) {
  Cnf cnf = inst.cnf;
  const bool xor_inst = cnf.all_xor() && !cnf.clauses.empty();
  for (std::size_t i = 0; i < inst.candidate_vars.size(); ++i) {
    const Var v = inst.candidate_vars[i];
    if (v == inst.dominant_var) continue;
    const Polarity p = i < inst.candidate_polarity.size() ? inst.candidate_polarity[i] : Polarity::Positive;
    // "Off" makes the candidate's inserted literal false.
    if (xor_inst) {
      cnf.clauses.push_back(Clause::make_xor({Literal::pos(v)}, p == Polarity::Negative));
    } else {
      cnf.clauses.push_back(Clause::make_or({p == Polarity::Positive ? Literal::neg(v) : Literal::pos(v)}));
    }
  }
  return cnf;
}

std::string write_instance(const SynthesizedInstance& inst,
                           const std::vector<std::string>& extra_comments) {
  std::vector<std::string> comments = extra_comments;
  for (std::size_t j = 0; j < inst.chain_rows.size(); ++j) {
    std::string line = "chain " + std::to_string(j + 1) + " rows";
    for (std::size_t r : inst.chain_rows[j]) line += " " + std::to_string(r + 1);
    comments.push_back(line);
  }
  std::string line = "couplers";
  for (Var v : inst.coupler_vars) line += " " + std::to_string(v + 1);
  comments.push_back(line);
  line = "candidates";
  for (std::size_t i = 0; i < inst.candidate_vars.size(); ++i) {
    const bool neg = i < inst.candidate_polarity.size() && inst.candidate_polarity[i] == Polarity::Negative;
    line += " " + std::string(neg ? "-" : "") + std::to_string(inst.candidate_vars[i] + 1);
  }
  comments.push_back(line);
  comments.push_back("dominant " + std::to_string(inst.dominant_var + 1) + " " +
                     std::to_string(inst.expected_dominant_value));
  return write_dimacs(inst.cnf, comments);
}

SynthesizedInstance read_instance(std::string_view text) {
  SynthesizedInstance inst;
  inst.cnf = parse_cnf(text);
  bool have_dominant = false;
  bool have_candidates = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string c;
    std::string key;
    if (!(ls >> c >> key) || c != "c") continue;
    if (key == "chain") {
      std::size_t idx = 0;
      std::string rows_kw;
      ls >> idx >> rows_kw;
      std::vector<std::size_t> rows;
      long r = 0;
      while (ls >> r) rows.push_back(static_cast<std::size_t>(r - 1));
      inst.chain_rows.push_back(std::move(rows));
    } else if (key == "couplers") {
      long v = 0;
      while (ls >> v) inst.coupler_vars.push_back(static_cast<Var>(v - 1));
    } else if (key == "candidates") {
      long v = 0;
      while (ls >> v) {
        inst.candidate_vars.push_back(static_cast<Var>(std::labs(v) - 1));
        inst.candidate_polarity.push_back(v < 0 ? Polarity::Negative : Polarity::Positive);
      }
      have_candidates = true;
    } else if (key == "dominant") {
      long v = 0;
      int val = 0;
      if (!(ls >> v >> val)) throw DimacsError(line_no, "malformed dominant annotation");
      inst.dominant_var = static_cast<Var>(v - 1);
      inst.expected_dominant_value = val;
      have_dominant = true;
    }
  }
  if (!have_dominant || !have_candidates || inst.chain_rows.empty()) {
    throw DimacsError(line_no, "missing chain/candidate/dominant annotations");
  }
  return inst;
}

}  // namespace satnum
