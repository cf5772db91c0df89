#include "satnum/cnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace satnum {

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw std::invalid_argument("literal 0 is a clause terminator");
  return lit > 0 ? Literal{lit - 1, false} : Literal{-lit - 1, true};
}

std::size_t Clause::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(literals.begin(), literals.end(), [](const Literal& l) { return !l.negated; }));
}

std::size_t Clause::negative_count() const { return literals.size() - positive_count(); }

void Cnf::validate() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (const Literal& l : clauses[i].literals) {
      if (l.var < 0 || l.var >= num_vars) {
        throw std::invalid_argument("clause " + std::to_string(i + 1) + " references variable " +
                                    std::to_string(l.var + 1) + " beyond " +
                                    std::to_string(num_vars));
      }
    }
  }
}

bool Cnf::has_xor() const {
  return std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.is_xor(); });
}

bool Cnf::all_xor() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.is_xor(); });
}

NormalizeOutcome normalize(Clause& clause) {
  if (clause.kind == ClauseKind::Or) {
    std::vector<Literal> out;
    out.reserve(clause.literals.size());
    for (const Literal& l : clause.literals) {
      if (std::find(out.begin(), out.end(), ~l) != out.end()) return NormalizeOutcome::Tautology;
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    clause.literals = std::move(out);
    return clause.literals.empty() ? NormalizeOutcome::Empty : NormalizeOutcome::Kept;
  }

  bool parity = clause.parity;
  std::vector<Var> vars;
  vars.reserve(clause.literals.size());
  for (const Literal& l : clause.literals) {
    if (l.negated) parity = !parity;
    vars.push_back(l.var);
  }
  std::sort(vars.begin(), vars.end());
  std::vector<Literal> out;
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j] == vars[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(Literal::pos(vars[i]));
    i = j;
  }
  clause.literals = std::move(out);
  clause.parity = parity;
  if (clause.literals.empty()) return parity ? NormalizeOutcome::Empty : NormalizeOutcome::Tautology;
  return NormalizeOutcome::Kept;
}

bool evaluate(const Clause& clause, const Assignment& a) {
  if (clause.kind == ClauseKind::Or) {
    return std::any_of(clause.literals.begin(), clause.literals.end(),
                       [&](const Literal& l) { return (a[l.var] != 0) != l.negated; });
  }
  bool acc = false;
  for (const Literal& l : clause.literals) acc ^= ((a[l.var] != 0) != l.negated);
  return acc == clause.parity;
}

bool evaluate(const Cnf& cnf, const Assignment& a) {
  if (a.size() != static_cast<std::size_t>(cnf.num_vars)) {
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " values, formula has " + std::to_string(cnf.num_vars) +
                                " variables");
  }
  return std::all_of(cnf.clauses.begin(), cnf.clauses.end(),
                     [&](const Clause& c) { return evaluate(c, a); });
}

bool FragmentSet::contains(Fragment f) const {
  switch (f) {
    case Fragment::TwoSat: return two_sat;
    case Fragment::Horn: return horn;
    case Fragment::DualHorn: return dual_horn;
    case Fragment::Xor: return xor_sat;
    case Fragment::GeneralK: return general_k.has_value();
  }
  return false;
}

std::string FragmentSet::to_string() const {
  std::vector<std::string> tags;
  if (two_sat) tags.emplace_back("TWO_SAT");
  if (horn) tags.emplace_back("HORN");
  if (dual_horn) tags.emplace_back("DUAL_HORN");
  if (xor_sat) tags.emplace_back("XOR");
  if (general_k) tags.push_back("GENERAL_K(" + std::to_string(*general_k) + ")");
  if (tags.empty()) return "NONE";
  std::string out = tags.front();
  for (std::size_t i = 1; i < tags.size(); ++i) out += "," + tags[i];
  return out;
}

FragmentSet classify(const Cnf& cnf) {
  FragmentSet tags;
  tags.xor_sat = cnf.all_xor();
  if (cnf.has_xor()) return tags;

  tags.two_sat = tags.horn = tags.dual_horn = true;
  int k = 0;
  for (const Clause& c : cnf.clauses) {
    k = std::max(k, static_cast<int>(c.width()));
    if (c.width() > 2) tags.two_sat = false;
    if (c.positive_count() > 1) tags.horn = false;
    if (c.negative_count() > 1) tags.dual_horn = false;
  }
  tags.general_k = k;
  return tags;
}

}  // namespace satnum
