#include "satnum/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "satnum/errors.hpp"

namespace satnum {

namespace {

// Bit (n-1-i) of a mask holds x_{i+1}, so counting upwards visits
// assignments in lexicographic order.
struct MaskedClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  bool is_xor = false;
  bool parity = true;
};

std::vector<MaskedClause> mask_clauses(const Cnf& cnf) {
  const int n = cnf.num_vars;
  std::vector<MaskedClause> out;
  out.reserve(cnf.clauses.size());
  for (const Clause& c : cnf.clauses) {
    MaskedClause m;
    m.is_xor = c.is_xor();
    m.parity = c.parity;
    for (const Literal& l : c.literals) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - l.var);
      if (m.is_xor) {
        // XOR of a repeated literal cancels; toggling the mask bit does that.
        m.pos ^= bit;
        if (l.negated) m.parity = !m.parity;
      } else if (l.negated) {
        m.neg |= bit;
      } else {
        m.pos |= bit;
      }
    }
    out.push_back(m);
  }
  return out;
}

bool holds(const std::vector<MaskedClause>& clauses, std::uint64_t mask) {
  for (const MaskedClause& c : clauses) {
    if (c.is_xor) {
      if ((std::popcount(mask & c.pos) % 2 == 1) != c.parity) return false;
    } else if (((mask & c.pos) | (~mask & c.neg)) == 0) {
      return false;
    }
  }
  return true;
}

Assignment unmask(std::uint64_t mask, int n) {
  Assignment a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a[i] = (mask >> (n - 1 - i)) & 1U;
  return a;
}

void check_cap(const Cnf& cnf, int cap) {
  if (cnf.num_vars > cap || cnf.num_vars > 62) {
    throw CapExceededError("brute force over " + std::to_string(cnf.num_vars) +
                           " variables exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

std::vector<Assignment> brute_force_models(const Cnf& cnf, int cap) {
  check_cap(cnf, cap);
  const auto clauses = mask_clauses(cnf);
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  std::vector<Assignment> models;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (holds(clauses, m)) models.push_back(unmask(m, cnf.num_vars));
  }
  return models;
}

std::vector<ValueSet> dominant_variables(const Cnf& cnf, int cap) {
  check_cap(cnf, cap);
  const auto clauses = mask_clauses(cnf);
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  const std::uint64_t all = total - 1;
  std::uint64_t seen_one = 0;
  std::uint64_t seen_zero = 0;
  bool any = false;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (!holds(clauses, m)) continue;
    any = true;
    seen_one |= m;
    seen_zero |= ~m & all;
  }
  if (!any) throw UnsatError("dominance is undefined for an unsatisfiable formula");
  std::vector<ValueSet> out(static_cast<std::size_t>(cnf.num_vars));
  for (int i = 0; i < cnf.num_vars; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (cnf.num_vars - 1 - i);
    out[i].one = (seen_one & bit) != 0;
    out[i].zero = (seen_zero & bit) != 0;
  }
  return out;
}

SolveResult solve_brute_force(const Cnf& cnf, int cap) {
  check_cap(cnf, cap);
  const auto clauses = mask_clauses(cnf);
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (holds(clauses, m)) return {SatStatus::Sat, unmask(m, cnf.num_vars), "brute_force"};
  }
  return {SatStatus::Unsat, std::nullopt, "brute_force"};
}

SolveResult solve_2sat(const Cnf& cnf) {
  if (!classify(cnf).two_sat) throw FragmentError("solve_2sat needs a 2-SAT formula");
  const int n = cnf.num_vars;
  // Node 2v is x_v, node 2v+1 is not-x_v.
  auto node = [](const Literal& l) { return 2 * l.var + (l.negated ? 1 : 0); };
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(2 * n));
  for (const Clause& c : cnf.clauses) {
    const Literal a = c.literals[0];
    const Literal b = c.width() == 2 ? c.literals[1] : c.literals[0];
    adj[node(~a)].push_back(node(b));
    adj[node(~b)].push_back(node(a));
  }

  // Iterative Tarjan; components are numbered in reverse topological order.
  const int nodes = 2 * n;
  std::vector<int> index(nodes, -1), low(nodes, 0), comp(nodes, -1);
  std::vector<char> on_stack(nodes, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int counter = 0;
  int comps = 0;
  for (int s = 0; s < nodes; ++s) {
    if (index[s] != -1) continue;
    call.emplace_back(s, 0);
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge == 0 && index[v] == -1) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
      }
      if (edge < adj[v].size()) {
        const int w = adj[v][edge++];
        if (index[w] == -1) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  Assignment a(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return {SatStatus::Unsat, std::nullopt, "2sat_scc"};
    // Tarjan finishes sinks first; a literal whose component comes earlier
    // (closer to the sinks) is the one to make true.
    a[v] = comp[2 * v] < comp[2 * v + 1] ? 1 : 0;
  }
  return {SatStatus::Sat, std::move(a), "2sat_scc"};
}

SolveResult solve_horn_unit_prop(const Cnf& cnf) {
  if (!classify(cnf).horn) throw FragmentError("solve_horn_unit_prop needs a Horn formula");
  const int n = cnf.num_vars;
  const std::size_t m = cnf.clauses.size();
  // A clause fires once all its negative literals' variables are true.
  std::vector<int> pending(m, 0);
  std::vector<std::vector<std::size_t>> watchers(static_cast<std::size_t>(n));
  std::vector<int> head(m, -1);
  std::vector<Var> queue;
  Assignment a(static_cast<std::size_t>(n), 0);

  auto fire = [&](std::size_t ci) -> bool {
    if (head[ci] < 0) return false;
    if (!a[head[ci]]) {
      a[head[ci]] = 1;
      queue.push_back(head[ci]);
    }
    return true;
  };

  for (std::size_t ci = 0; ci < m; ++ci) {
    for (const Literal& l : cnf.clauses[ci].literals) {
      if (l.negated) {
        ++pending[ci];
        watchers[l.var].push_back(ci);
      } else {
        head[ci] = l.var;
      }
    }
  }
  for (std::size_t ci = 0; ci < m; ++ci) {
    if (pending[ci] == 0 && !fire(ci)) {
      return {SatStatus::Unsat, std::nullopt, "horn_unit_propagation"};
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (std::size_t ci : watchers[queue[qi]]) {
      if (--pending[ci] == 0 && !fire(ci)) {
        return {SatStatus::Unsat, std::nullopt, "horn_unit_propagation"};
      }
    }
  }
  return {SatStatus::Sat, std::move(a), "horn_unit_propagation"};
}

SolveResult solve_xor_gauss(const Cnf& cnf) {
  if (!cnf.all_xor()) throw FragmentError("solve_xor_gauss needs an XOR-only formula");
  const int n = cnf.num_vars;
  const std::size_t words = static_cast<std::size_t>(n) / 64 + 1;
  // Column n is the right-hand side.
  std::vector<std::vector<std::uint64_t>> rows;
  auto flip = [](std::vector<std::uint64_t>& r, int col) {
    r[static_cast<std::size_t>(col) / 64] ^= std::uint64_t{1} << (col % 64);
  };
  auto test = [](const std::vector<std::uint64_t>& r, int col) {
    return (r[static_cast<std::size_t>(col) / 64] >> (col % 64)) & 1U;
  };
  for (const Clause& c : cnf.clauses) {
    std::vector<std::uint64_t> r(words, 0);
    bool parity = c.parity;
    for (const Literal& l : c.literals) {
      flip(r, l.var);
      if (l.negated) parity = !parity;
    }
    if (parity) flip(r, n);
    rows.push_back(std::move(r));
  }

  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !test(rows[p], col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && test(rows[i], col)) {
        for (std::size_t w = 0; w < words; ++w) rows[i][w] ^= rows[rank][w];
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (test(rows[i], n)) return {SatStatus::Unsat, std::nullopt, "xor_gauss"};
  }
  // Reduced row echelon form: with free variables at 0 each pivot equals its rhs.
  Assignment a(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < rank; ++i) a[pivot_col[i]] = static_cast<std::uint8_t>(test(rows[i], n));
  return {SatStatus::Sat, std::move(a), "xor_gauss"};
}

}  // namespace satnum
