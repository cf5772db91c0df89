#include "satnum/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "satnum/errors.hpp"

namespace satnum {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view tok, long long& out) {
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

DimacsParse parse_dimacs(std::string_view text, const ParseOptions& options) {
  DimacsParse result;
  bool have_header = false;
  long long declared_clauses = 0;
  long long read_clauses = 0;

  Clause current;
  bool in_clause = false;
  std::size_t clause_line = 0;

  auto finish_clause = [&](std::size_t line_no) {
    ++read_clauses;
    in_clause = false;
    Clause c = std::move(current);
    current = Clause{};
    if (!options.normalize) {
      if (c.literals.empty()) {
        result.trivially_unsat = true;
        result.warnings.push_back("line " + std::to_string(line_no) + ": empty clause");
      } else {
        result.cnf.clauses.push_back(std::move(c));
      }
      return;
    }
    switch (normalize(c)) {
      case NormalizeOutcome::Kept:
        result.cnf.clauses.push_back(std::move(c));
        break;
      case NormalizeOutcome::Tautology:
        result.warnings.push_back("line " + std::to_string(line_no) +
                                  ": tautological clause dropped");
        break;
      case NormalizeOutcome::Empty:
        result.trivially_unsat = true;
        result.warnings.push_back("line " + std::to_string(line_no) + ": empty clause");
        break;
    }
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.front() == "c" || toks.front().front() == 'c') continue;
    if (toks.front() == "%") break;

    if (toks.front() == "p") {
      if (have_header) throw DimacsError(line_no, "duplicate header");
      long long nv = 0;
      long long nc = 0;
      if (toks.size() != 4 || toks[1] != "cnf" || !parse_int(toks[2], nv) ||
          !parse_int(toks[3], nc) || nv < 0 || nc < 0 || nv > (1LL << 30)) {
        throw DimacsError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      have_header = true;
      result.cnf.num_vars = static_cast<int>(nv);
      declared_clauses = nc;
      continue;
    }
    if (!have_header) throw DimacsError(line_no, "clause data before 'p cnf' header");

    for (std::size_t t = 0; t < toks.size(); ++t) {
      std::string_view tok = toks[t];
      if (tok.front() == 'x') {
        if (in_clause) throw DimacsError(line_no, "XOR marker inside an open clause");
        current.kind = ClauseKind::Xor;
        current.parity = true;
        in_clause = true;
        clause_line = line_no;
        tok.remove_prefix(1);
        if (tok.empty()) continue;
      }
      long long v = 0;
      if (!parse_int(tok, v)) {
        throw DimacsError(line_no, "unexpected token '" + std::string(tok) + "'");
      }
      if (v == 0) {
        finish_clause(line_no);
        continue;
      }
      if (!in_clause) {
        in_clause = true;
        clause_line = line_no;
      }
      if (v > result.cnf.num_vars || -v > result.cnf.num_vars) {
        throw DimacsError(line_no, "literal " + std::to_string(v) + " exceeds variable count " +
                                       std::to_string(result.cnf.num_vars));
      }
      current.literals.push_back(Literal::from_dimacs(static_cast<int>(v)));
    }
  }

  if (!have_header) throw DimacsError(line_no, "missing 'p cnf' header");
  if (in_clause) throw DimacsError(clause_line, "clause not terminated by 0");
  if (read_clauses != declared_clauses) {
    throw DimacsError(line_no, "header declares " + std::to_string(declared_clauses) +
                                   " clauses, found " + std::to_string(read_clauses));
  }
  return result;
}

Cnf parse_cnf(std::string_view text, const ParseOptions& options) {
  DimacsParse p = parse_dimacs(text, options);
  if (p.trivially_unsat) throw UnsatError("formula contains an empty clause");
  return std::move(p.cnf);
}

std::string write_dimacs(const Cnf& cnf, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    if (c.is_xor()) out << "x ";
    bool flip = c.is_xor() && !c.parity;
    for (const Literal& l : c.literals) {
      Literal w = flip ? ~l : l;
      flip = false;
      out << w.to_dimacs() << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

std::string format_assignment(const Assignment& a) {
  std::ostringstream out;
  out << 'v';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << ' ' << (a[i] ? "" : "-") << (i + 1);
  }
  out << " 0";
  return out.str();
}

}  // namespace satnum
