// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Limits and tolerances are fixed here and never relaxed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "satnum/chain_synth.hpp"
#include "satnum/dimacs.hpp"
#include "satnum/errors.hpp"
#include "satnum/exact_lp.hpp"
#include "satnum/fourier_motzkin.hpp"
#include "satnum/horn_margin_solver.hpp"
#include "satnum/margin.hpp"
#include "satnum/reduction.hpp"
#include "satnum/solvers.hpp"
#include "support.hpp"

using namespace satnum;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

const char* kFourClause = "p cnf 4 4\n1 -2 -4 0\n1 -3 0\n2 3 0\n-2 4 0\n";

Outcome reduction_rows() {
  Outcome o;
  const std::string text = format_system(cnf_to_system(parse_cnf(kFourClause)));
  const std::string expect =
      "-1 <= 1*x1 + -1*x2 + -1*x4 <= 1\n"
      "0 <= 1*x1 + -1*x3 <= 1\n"
      "1 <= 1*x2 + 1*x3 <= 2\n"
      "0 <= -1*x2 + 1*x4 <= 1\n";
  if (text.rfind(expect, 0) != 0) o.fail("rows differ:\n" + text);
  o.detail = o.pass ? "4 rows match exactly" : o.detail;
  return o;
}

Outcome reduction_faithfulness() {
  Outcome o;
  std::mt19937_64 rng(2001);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const int m = static_cast<int>(rng() % 41);
    const Cnf cnf = testsupport::random_cnf(rng, n, m, 1 + static_cast<int>(rng() % 4));
    const auto pts = integral_points(cnf_to_system(cnf));
    const auto ms = brute_force_models(cnf);
    if (std::set<Assignment>(pts.begin(), pts.end()) != std::set<Assignment>(ms.begin(), ms.end())) {
      o.fail("instance " + std::to_string(t) + " differs");
    }
  }
  if (o.pass) o.detail = "500/500 instances identical";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::mt19937_64 rng(3001);
  int sat[3] = {0, 0, 0};
  auto check = [&](const Cnf& cnf, const SolveResult& r, int kind, int t) {
    const bool truth = solve_brute_force(cnf).sat();
    if (r.sat() != truth) o.fail(r.method + " decision wrong on instance " + std::to_string(t));
    if (r.sat() && (!r.witness || !evaluate(cnf, *r.witness))) o.fail(r.method + " witness fails");
    sat[kind] += truth;
  };
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Cnf two = testsupport::random_2sat(rng, n, static_cast<int>(rng() % (2 * n + 4)));
    check(two, solve_2sat(two), 0, t);
    const Cnf horn = testsupport::random_horn(rng, n, static_cast<int>(rng() % (2 * n + 4)));
    check(horn, solve_horn_unit_prop(horn), 1, t);
    const Cnf x = testsupport::random_xor(rng, n, static_cast<int>(rng() % (n + 4)));
    check(x, solve_xor_gauss(x), 2, t);
  }
  if (o.pass) {
    o.detail = "1500/1500 agree (SAT counts 2-SAT " + std::to_string(sat[0]) + ", Horn " +
               std::to_string(sat[1]) + ", XOR " + std::to_string(sat[2]) + ")";
  }
  return o;
}

Outcome fm_exactness() {
  Outcome o;
  std::mt19937_64 rng(4001);
  long in = 0;
  long total = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const InequalitySystem sys = testsupport::random_system(rng, n, 1 + static_cast<int>(rng() % 12));
    std::vector<Var> keep;
    for (Var v = 0; v < n; ++v) {
      if (rng() % 2) keep.push_back(v);
    }
    if (keep.empty() || keep.size() == static_cast<std::size_t>(n)) keep = {static_cast<Var>(rng() % n)};
    const InequalitySystem proj = fm_project(sys, keep).first;
    for (int k = 0; k < 200; ++k) {
      RationalPoint p(static_cast<std::size_t>(n), 0);
      for (Var v : keep) {
        const long den = 1 + static_cast<long>(rng() % 8);
        p[v] = Rational(static_cast<long>(rng() % (den + 3)) - 1, den);
        p[v].canonicalize();
      }
      std::vector<std::pair<Var, Rational>> fixed;
      for (Var v : keep) fixed.emplace_back(v, p[v]);
      // Coordinates outside keep stay at 0; the projection does not mention them.
      const bool member = satisfies(proj, p);
      const bool extends = lp_feasible(fix_coordinates(sys, fixed));
      in += member;
      ++total;
      if (member != extends) o.fail("system " + std::to_string(t) + " point " + std::to_string(k));
    }
  }
  if (o.pass) {
    o.detail = std::to_string(total) + "/" + std::to_string(total) + " points agree (" + std::to_string(in) +
               " inside)";
  }
  return o;
}

// Every 2 x e digit matrix with entries in {0, 1, 2} that the generator can
// place is checked.
Outcome number_system_grid() {
  Outcome o;
  int instances = 0;
  std::string empty_cells;
  for (int b = 2; b <= 5; ++b) {
    for (int e = 1; e <= 4; ++e) {
      int realized = 0;
      const int cells = 2 * e;
      int combos = 1;
      for (int k = 0; k < cells; ++k) combos *= 3;
      for (int code = 0; code < combos; ++code) {
        CoupledFamilySpec s;
        s.e = e;
        s.b = b;
        s.c = 3;
        s.d = 2;
        s.digits.assign(2, std::vector<int>(static_cast<std::size_t>(e), 0));
        int rest = code;
        for (int k = 0; k < cells; ++k) {
          s.digits[k / e][k % e] = rest % 3;
          rest /= 3;
        }
        for (int cv = 0; cv <= 1; ++cv) {
          s.coupler_value = cv;
          SynthesizedInstance inst;
          try {
            inst = synthesize(s);
          } catch (const CapacityError&) {
            continue;
          } catch (const std::invalid_argument&) {
            continue;  // no connected candidate
          }
          ++realized;
          const AggregateInequality agg = chain_aggregate(inst);
          for (int i = 0; i < 2; ++i) {
            Integer expect = 0;
            Integer weight = 1;
            for (int j = e - 1; j >= 0; --j) {
              expect += s.digits[i][j] * weight;
              weight *= b;
            }
            if (agg.coeff(inst.candidate_vars[i]) != expect) {
              o.fail("b=" + std::to_string(b) + " e=" + std::to_string(e) + " candidate " + std::to_string(i + 1) +
                     ": " + to_string(agg.coeff(inst.candidate_vars[i])) + " != " + to_string(expect));
            }
          }
          if (!number_system(s, inst, agg).reconstruction_ok) o.fail("reconstruction flag false");
          if (agg.b_min != 1) {
            o.fail("b_min = " + to_string(agg.b_min) + " for coupler value " + std::to_string(cv));
          }
        }
      }
      instances += realized;
      if (realized == 0) {
        empty_cells += (empty_cells.empty() ? "" : ", ") + std::string("(") + std::to_string(b) + "," +
                       std::to_string(e) + ")";
      }
    }
  }
  // Growth: all-ones digits give (b^e - 1)/(b - 1).
  for (int b = 2; b <= 4; ++b) {
    for (int e = 1; e <= 4; ++e) {
      const auto inst = synthesize_fragment_family(FamilyFragment::General3Sat, e, 3, b);
      Integer be;
      mpz_ui_pow_ui(be.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
      if (chain_aggregate(inst).coeff(inst.dominant_var) != (be - 1) / (b - 1)) o.fail("geometric growth broken");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(instances) + " instances exact, b_min = 1 throughout";
    if (!empty_cells.empty()) {
      o.detail += "; cells (b,e) with no placeable digit rows at c=3: " + empty_cells +
                  " (coupler multiplicity b exceeds the c+1 = 4 chain clauses)";
    }
  }
  return o;
}

Outcome margin_dichotomy() {
  Outcome o;
  std::ostringstream info;

  SweepTemplate k3;
  k3.b = 2;
  const std::vector<Rational> expect = {1, Rational(1, 3), Rational(1, 7), Rational(1, 15)};
  const auto rows = margin_decay_sweep(k3, 1, 4);
  info << "3-SAT";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& m = rows[i].report.margin;
    info << " " << (m ? to_string(*m) : "none");
    if (!m || *m != expect[i]) o.fail("3-SAT margin at e=" + std::to_string(i + 1));
  }

  SweepTemplate two;
  two.fragment = FamilyFragment::TwoSat;
  for (auto companion : {Companion::None, Companion::Coupler}) {
    two.companion = companion;
    Rational lowest = 1;
    for (const auto& r : margin_decay_sweep(two, 1, 6)) {
      const auto inst = synthesize(r.spec);
      std::vector<Var> keep = sweep_keep(two, inst);
      const auto trace = fm_project(cnf_to_system(inst.cnf), keep).second;
      for (const auto& row : trace.rows) {
        for (const auto& t : row.terms) {
          if (abs(t.coeff) > 2) o.fail("2-SAT row coefficient " + to_string(t.coeff));
        }
      }
      for (const auto& t : r.aggregate.row.terms) {
        if (abs(t.coeff) > 2) o.fail("2-SAT aggregate coefficient " + to_string(t.coeff));
      }
      if (!r.report.margin || *r.report.margin < Rational(1, 2)) o.fail("2-SAT margin below 1/2");
      if (r.report.margin) lowest = std::min(lowest, *r.report.margin);
    }
    info << "; 2-SAT min " << to_string(lowest);
  }

  SweepTemplate hc;
  hc.fragment = FamilyFragment::HornCoupler;
  hc.b = 2;
  info << "; Horn coupler";
  const auto horn = margin_decay_sweep(hc, 1, 4);
  for (std::size_t i = 0; i < horn.size(); ++i) {
    const auto& m = horn[i].report.margin;
    info << " " << (m ? to_string(*m) : "none");
    if (!m || *m != expect[i]) o.fail("Horn coupler margin at e=" + std::to_string(i + 1));
  }

  SweepTemplate hd;
  hd.fragment = FamilyFragment::HornDominant;
  hd.b = 2;
  info << "; Horn dominant";
  for (const auto& r : margin_decay_sweep(hd, 1, 4)) {
    if (abs(r.a1) > 1) o.fail("Horn dominant coefficient " + to_string(r.a1));
    if (!r.report.margin || *r.report.margin != 1) o.fail("Horn dominant margin");
    info << " " << (r.report.margin ? to_string(*r.report.margin) : "none");
    // The positive candidate cannot occupy an earlier chain, nor repeat.
    for (int j = 0; j + 1 < r.spec.e; ++j) {
      CoupledFamilySpec s = r.spec;
      s.digits[0][j] = 1;
      try {
        synthesize(s);
        o.fail("Horn dominant accepted a candidate in chain " + std::to_string(j + 1));
      } catch (const FragmentError&) {
      }
    }
    CoupledFamilySpec twice = r.spec;
    twice.digits[0].back() = 2;
    try {
      synthesize(twice);
      o.fail("Horn dominant accepted a repeated positive candidate");
    } catch (const FragmentError&) {
    }
  }
  o.detail = info.str();
  return o;
}

Outcome ratio_bound() {
  Outcome o;
  int count = 0;
  for (int cv = 0; cv <= 1 && count < 20; ++cv) {
    for (int b = 2; b <= 3 && count < 20; ++b) {
      for (int e = 2; e <= 4 && count < 20; ++e) {
        for (int pattern = 0; pattern < 3 && count < 20; ++pattern) {
          CoupledFamilySpec s = canonical_family_spec(FamilyFragment::General3Sat, e, 2, b);
          s.coupler_value = cv;
          s.d = 2;
          std::vector<int> second(static_cast<std::size_t>(e), 0);
          second.back() = 1;
          if (pattern == 1) second.front() = 1;
          if (pattern == 2) second[1] = 1;
          s.digits = {std::vector<int>(static_cast<std::size_t>(e), 1), second};
          SynthesizedInstance inst;
          try {
            inst = synthesize(s);
          } catch (const CapacityError&) {
            continue;
          }
          ++count;
          const Var x1 = inst.candidate_vars[0];
          const Var x2 = inst.candidate_vars[1];
          const MarginReport rep = decision_margin(inst, {x1, x2});
          const std::string id = "cv=" + std::to_string(cv) + " b=" + std::to_string(b) + " e=" + std::to_string(e) +
                                 " pattern " + std::to_string(pattern);
          if (!rep.ratio_bound || !rep.margin) {
            o.fail(id + ": missing margin or bound");
            continue;
          }
          if (*rep.margin > *rep.ratio_bound) o.fail(id + ": margin above a2/a1");
          for (const auto& l : rep.lines) {
            if (l.line.fixed.front().second == 1 && (!l.interval || !l.interval->contains(0))) {
              o.fail(id + ": x2 = 1 does not admit x1 = 0");
            }
            if (l.line.fixed.front().second == 0 && !l.excludes_infeasible) {
              o.fail(id + ": x2 = 0 line admits x1 = 0");
            }
          }
        }
      }
    }
  }
  if (count < 20) o.fail("only " + std::to_string(count) + " instances");
  if (o.pass) o.detail = std::to_string(count) + "/20 instances with margin <= a2/a1";
  return o;
}

Outcome horn_solver() {
  Outcome o;
  std::mt19937_64 rng(8001);
  int sat = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 25);
    const int m = 1 + static_cast<int>(rng() % 80);
    const Cnf cnf = testsupport::random_horn(rng, n, m, 1 + static_cast<int>(rng() % 4));
    const HornSolveReport rep = solve_horn_margin(cnf);
    const SolveResult up = solve_horn_unit_prop(cnf);
    if (rep.result.status != up.status || rep.result.witness != up.witness || !rep.agreed_with_unit_prop) {
      o.fail("instance " + std::to_string(t) + " disagrees");
    }
    if (rep.result.sat() && !evaluate(cnf, *rep.result.witness)) o.fail("witness fails");
    sat += rep.result.sat();
  }
  if (o.pass) o.detail = "1000/1000 agree (" + std::to_string(sat) + " SAT)";
  return o;
}

Outcome dominance() {
  Outcome o;
  const auto vs = dominant_variables(parse_cnf(kFourClause));
  if (!(vs[0] == ValueSet{false, true})) o.fail("x1 is not pinned to 1");
  for (int v = 1; v < 4; ++v) {
    if (!(vs[v] == ValueSet{true, true})) o.fail("x" + std::to_string(v + 1) + " is not free");
  }
  int checked = 0;
  auto verify = [&](const SynthesizedInstance& inst, const std::string& id) {
    if (inst.cnf.num_vars > kDefaultBruteForceCap) return;
    const auto sets = dominant_variables(pin_other_candidates(inst));
    const ValueSet& s = sets[static_cast<std::size_t>(inst.dominant_var)];
    if (!s.dominant() || s.value() != inst.expected_dominant_value) o.fail(id + " not dominant");
    ++checked;
  };
  for (auto f : {FamilyFragment::General3Sat, FamilyFragment::TwoSat, FamilyFragment::HornCoupler,
                 FamilyFragment::HornDominant, FamilyFragment::Xor}) {
    for (int c = 1; c <= 3; ++c) {
      for (int e = 1; e <= 4; ++e) {
        verify(synthesize_fragment_family(f, e, c), to_string(f) + " e=" + std::to_string(e));
      }
    }
  }
  for (int cv = 0; cv <= 1; ++cv) {
    for (int e = 1; e <= 3; ++e) {
      for (int b = 2; b <= 3; ++b) {
        CoupledFamilySpec s = canonical_family_spec(FamilyFragment::General3Sat, e, 2, b);
        s.coupler_value = cv;
        s.d = 2;
        std::vector<int> second(static_cast<std::size_t>(e), 0);
        second.back() = 1;
        s.digits = {std::vector<int>(static_cast<std::size_t>(e), 1), second};
        verify(synthesize(s), "two-candidate e=" + std::to_string(e));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " synthesized instances confirmed; x1 -> {1}, others -> {0,1}";
  return o;
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 inequality rows of the four-clause formula", 1, reduction_rows},
      {"2 integral points equal models (500 CNFs)", 30, reduction_faithfulness},
      {"3 fragment solvers agree with brute force", 0, oracle_agreement},
      {"4 projection membership equals LP extension feasibility", 120, fm_exactness},
      {"5 aggregate coefficients are base-b numbers", 60, number_system_grid},
      {"6 margin decay by fragment", 120, margin_dichotomy},
      {"7 margin bounded by coefficient ratio a2/a1", 0, ratio_bound},
      {"8 LP-estimate Horn solver matches unit propagation", 120, horn_solver},
      {"9 dominance of designated variables", 0, dominance},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    }
    failures += !o.pass;
    std::printf("[%s] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
