#pragma once

// Independent oracles and random instance generators shared by the tests.
// Nothing here calls the library code it is used to check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "satnum/cnf.hpp"
#include "satnum/rational.hpp"
#include "satnum/reduction.hpp"

namespace testsupport {

using satnum::Assignment;
using satnum::Clause;
using satnum::Cnf;
using satnum::Integer;
using satnum::Literal;
using satnum::Rational;
using satnum::Var;

inline bool clause_holds(const Clause& c, std::uint32_t bits, int n) {
  auto val = [&](Var v) { return ((bits >> (n - 1 - v)) & 1U) != 0; };
  if (c.kind == satnum::ClauseKind::Xor) {
    bool acc = false;
    for (const auto& l : c.literals) acc ^= (val(l.var) != l.negated);
    return acc == c.parity;
  }
  return std::any_of(c.literals.begin(), c.literals.end(),
                     [&](const Literal& l) { return val(l.var) != l.negated; });
}

/// Models as bit patterns, x1 in the most significant position.
inline std::set<std::vector<std::uint8_t>> models(const Cnf& cnf) {
  std::set<std::vector<std::uint8_t>> out;
  const int n = cnf.num_vars;
  for (std::uint32_t bits = 0; bits < (1U << n); ++bits) {
    bool ok = true;
    for (const auto& c : cnf.clauses) {
      if (!clause_holds(c, bits, n)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::uint8_t> a(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) a[v] = static_cast<std::uint8_t>((bits >> (n - 1 - v)) & 1U);
    out.insert(a);
  }
  return out;
}

inline bool satisfiable(const Cnf& cnf) { return !models(cnf).empty(); }

inline Literal random_literal(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> var(0, n - 1);
  return {var(rng), (rng() & 1U) != 0};
}

/// Random OR clauses of width 1..max_width over distinct variables.
inline Cnf random_cnf(std::mt19937_64& rng, int n, int m, int max_width) {
  Cnf cnf;
  cnf.num_vars = n;
  std::uniform_int_distribution<int> width(1, std::min(max_width, n));
  std::vector<Var> vars(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) vars[v] = v;
  for (int i = 0; i < m; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    Clause c;
    const int w = width(rng);
    for (int k = 0; k < w; ++k) c.literals.push_back({vars[k], (rng() & 1U) != 0});
    cnf.clauses.push_back(c);
  }
  return cnf;
}

inline Cnf random_2sat(std::mt19937_64& rng, int n, int m) { return random_cnf(rng, n, m, 2); }

/// Horn: at most one positive literal per clause. Unit positives appear with
/// some probability so that both SAT and UNSAT outcomes occur.
inline Cnf random_horn(std::mt19937_64& rng, int n, int m, int max_width = 3) {
  Cnf cnf = random_cnf(rng, n, m, max_width);
  for (auto& c : cnf.clauses) {
    bool seen_positive = false;
    for (auto& l : c.literals) {
      if (!l.negated) {
        if (seen_positive) l.negated = true;
        seen_positive = true;
      }
    }
  }
  return cnf;
}

inline Cnf random_xor(std::mt19937_64& rng, int n, int m, int max_width = 4) {
  Cnf cnf = random_cnf(rng, n, m, max_width);
  for (auto& c : cnf.clauses) {
    c.kind = satnum::ClauseKind::Xor;
    c.parity = (rng() & 1U) != 0;
    for (auto& l : c.literals) l.negated = false;
    std::sort(c.literals.begin(), c.literals.end());
  }
  return cnf;
}

/// Random boxed system with small integer coefficients and optional sides.
inline satnum::InequalitySystem random_system(std::mt19937_64& rng, int n, int m, int max_coeff = 3) {
  satnum::InequalitySystem sys;
  sys.num_vars = n;
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  std::uniform_int_distribution<int> support(1, std::min(n, 4));
  std::vector<Var> vars(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) vars[v] = v;
  for (int i = 0; i < m; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<satnum::Term> terms;
    const int s = support(rng);
    Integer lo = 0;
    Integer hi = 0;
    for (int k = 0; k < s; ++k) {
      int c = coeff(rng);
      if (c == 0) c = 1;
      terms.push_back({vars[k], c});
      (c < 0 ? lo : hi) += c;
    }
    // Bounds somewhere inside the box range so rows actually cut.
    std::uniform_int_distribution<long> pick(lo.get_si() * 2, hi.get_si() * 2);
    Rational a(pick(rng), 2);
    Rational b(pick(rng), 2);
    a.canonicalize();
    b.canonicalize();
    if (a > b) std::swap(a, b);
    std::optional<Rational> lower = a;
    std::optional<Rational> upper = b;
    const auto side = rng() % 3;
    if (side == 1) lower.reset();
    if (side == 2) upper.reset();
    sys.rows.push_back(satnum::BoundedInequality::make(std::move(terms), lower, upper));
  }
  return sys;
}

/// Exact solution of a square system by Gauss-Jordan; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

struct Hyperplane {
  std::vector<Rational> a;
  Rational rhs;
};

/// Vertices of a boxed system: every basic solution of n tight constraints
/// (row sides plus box faces) that satisfies everything. Exponential; for
/// n <= 4 or so.
inline std::vector<std::vector<Rational>> vertices(const satnum::InequalitySystem& sys) {
  const int n = sys.num_vars;
  std::vector<Hyperplane> planes;
  for (const auto& r : sys.rows) {
    std::vector<Rational> a(static_cast<std::size_t>(n), 0);
    for (const auto& t : r.terms) a[t.var] = Rational(t.coeff);
    if (r.lower) planes.push_back({a, *r.lower});
    if (r.upper) planes.push_back({a, *r.upper});
  }
  for (int v = 0; v < n; ++v) {
    std::vector<Rational> a(static_cast<std::size_t>(n), 0);
    a[v] = 1;
    planes.push_back({a, 0});
    planes.push_back({a, 1});
  }
  std::vector<std::vector<Rational>> out;
  std::vector<int> pick(static_cast<std::size_t>(n));
  const int m = static_cast<int>(planes.size());
  // Iterate over n-subsets of planes.
  std::vector<bool> mask(static_cast<std::size_t>(m), false);
  std::fill(mask.begin(), mask.begin() + n, true);
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (int i = 0; i < m; ++i) {
      if (mask[i]) {
        a.push_back(planes[i].a);
        b.push_back(planes[i].rhs);
      }
    }
    auto x = solve_square(a, b);
    if (!x) continue;
    if (satnum::satisfies(sys, *x) &&
        std::find(out.begin(), out.end(), *x) == out.end()) {
      out.push_back(*x);
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace testsupport
