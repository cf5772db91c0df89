#include <doctest.h>

#include <numeric>

#include "satnum/chain_synth.hpp"
#include "satnum/errors.hpp"
#include "satnum/family_config.hpp"
#include "satnum/solvers.hpp"
#include "support.hpp"

using namespace satnum;

namespace {

// Occurrences of variable v inside chain j, split by sign.
std::pair<int, int> occurrences(const SynthesizedInstance& inst, std::size_t j, Var v) {
  int pos = 0;
  int neg = 0;
  for (std::size_t r : inst.chain_rows[j]) {
    for (const auto& l : inst.cnf.clauses[r].literals) {
      if (l.var == v) (l.negated ? neg : pos)++;
    }
  }
  return {pos, neg};
}

bool dominant_as_expected(const SynthesizedInstance& inst) {
  const auto vs = dominant_variables(pin_other_candidates(inst));
  const ValueSet& s = vs[static_cast<std::size_t>(inst.dominant_var)];
  return s.dominant() && s.value() == inst.expected_dominant_value;
}

}  // namespace

TEST_CASE("bare chains are unsatisfiable and break at any clause") {
  for (int c = 1; c <= 10; ++c) {
    const Cnf chain = make_chain({c});
    CHECK(chain.num_vars == c);
    REQUIRE(chain.clauses.size() == static_cast<std::size_t>(c + 1));
    CHECK_FALSE(testsupport::satisfiable(chain));
    for (std::size_t k = 0; k < chain.clauses.size(); ++k) {
      Cnf cut = chain;
      cut.clauses.erase(cut.clauses.begin() + static_cast<std::ptrdiff_t>(k));
      CHECK(testsupport::satisfiable(cut));
    }
    CHECK_FALSE(testsupport::satisfiable(make_chain({c, Polarity::Negative})));
    CHECK_FALSE(testsupport::satisfiable(make_chain({c}, ClauseKind::Xor)));
  }
  const Cnf two = make_chain({2});
  CHECK(two.clauses[1].literals == std::vector<Literal>{Literal::neg(0), Literal::pos(1)});
}

TEST_CASE("capacity") {
  CHECK(capacity(5, 3) == 7);
  CHECK(capacity(5, 2) == 2);
  CHECK(capacity(1, 4) == 4);
  CHECK_THROWS_AS(capacity(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(capacity(3, 1), std::invalid_argument);
}

TEST_CASE("attaching a dominant variable") {
  const SynthesizedInstance pos = attach_dominant(make_chain({1}), {2, Polarity::Positive});
  CHECK(pos.cnf.clauses[0].literals == std::vector<Literal>{Literal::pos(0), Literal::pos(1)});
  CHECK(pos.cnf.clauses[1].literals == std::vector<Literal>{Literal::neg(0), Literal::pos(1)});
  CHECK(dominant_variables(pos.cnf)[1] == ValueSet{false, true});

  const SynthesizedInstance neg = attach_dominant(make_chain({1}), {2, Polarity::Negative});
  CHECK(dominant_variables(neg.cnf)[1] == ValueSet{true, false});
  CHECK(neg.expected_dominant_value == 0);

  CHECK_THROWS_AS(attach_dominant(make_chain({1}), {2, Polarity::Positive, {Polarity::Positive, Polarity::Negative}}),
                  FragmentError);
  CHECK_THROWS_AS(attach_dominant(make_chain({1}), {3}), CapacityError);
  CHECK_THROWS_AS(attach_dominant(make_chain({3}), {4}, 2), CapacityError);
  CHECK_NOTHROW(attach_dominant(make_chain({3}), {4}, 3));
}

TEST_CASE("dominance holds for every attachment within brute-force range") {
  for (int c = 1; c <= 5; ++c) {
    for (int m = 1; m <= c + 1; ++m) {
      for (auto p : {Polarity::Positive, Polarity::Negative}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          const auto inst = attach_dominant(make_chain({c}), {m, p}, 3, {seed});
          CHECK(dominant_as_expected(inst));
        }
      }
    }
  }
}

TEST_CASE("single-chain family degenerates to an attached dominant variable") {
  for (int m = 1; m <= 4; ++m) {
    CoupledFamilySpec s;
    s.e = 1;
    s.b = 3;
    s.c = 3;
    s.d = 1;
    s.digits = {{m}};
    CHECK(synthesize(s).cnf == attach_dominant(make_chain({3}), {m}, 3).cnf);
  }
}

TEST_CASE("two-chain family with two candidates") {
  CoupledFamilySpec s;
  s.e = 2;
  s.b = 2;
  s.c = 3;
  s.d = 2;
  s.digits = {{1, 0}, {0, 1}};
  const SynthesizedInstance inst = synthesize(s);
  CHECK(inst.cnf.num_vars == 9);
  CHECK(inst.coupler_vars == std::vector<Var>{6});
  CHECK(inst.candidate_vars == std::vector<Var>{7, 8});
  CHECK(inst.dominant_var == 7);
  CHECK(dominant_as_expected(inst));
  CHECK(occurrences(inst, 0, 6) == std::pair{1, 0});
  CHECK(occurrences(inst, 1, 6) == std::pair{0, 2});
}

TEST_CASE("structural invariants over a grid of specs") {
  int built = 0;
  for (int e = 1; e <= 3; ++e) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        for (int cv = 0; cv <= 1; ++cv) {
          for (int pattern = 0; pattern < 3; ++pattern) {
            CoupledFamilySpec s;
            s.e = e;
            s.b = b;
            s.c = c;
            s.d = 2;
            s.coupler_value = cv;
            s.digits.assign(2, std::vector<int>(static_cast<std::size_t>(e), 0));
            for (int j = 0; j < e; ++j) {
              s.digits[0][j] = pattern == 0 ? 1 : (j == 0 ? 1 : 0);
              s.digits[1][j] = pattern == 2 ? 1 : (j == e - 1 ? 1 : 0);
            }
            SynthesizedInstance inst;
            try {
              inst = synthesize(s);
            } catch (const CapacityError&) {
              continue;
            }
            ++built;
            CHECK(inst.cnf.num_vars == c * e + (e - 1) + 2);
            CHECK(classify(inst.cnf).general_k.value_or(99) <= 3);
            std::vector<std::size_t> all;
            for (const auto& rows : inst.chain_rows) all.insert(all.end(), rows.begin(), rows.end());
            std::sort(all.begin(), all.end());
            std::vector<std::size_t> expect(inst.cnf.clauses.size());
            std::iota(expect.begin(), expect.end(), std::size_t{0});
            CHECK(all == expect);
            for (int j = 0; j + 1 < e; ++j) {
              const Var y = inst.coupler_vars[j];
              const auto here = occurrences(inst, j, y);
              const auto next = occurrences(inst, j + 1, y);
              CHECK(here == (cv == 1 ? std::pair{1, 0} : std::pair{0, 1}));
              CHECK(next == (cv == 1 ? std::pair{0, b} : std::pair{b, 0}));
            }
            for (int i = 0; i < 2; ++i) {
              for (int j = 0; j < e; ++j) {
                CHECK(occurrences(inst, j, inst.candidate_vars[i]) == std::pair{s.digits[i][j], 0});
              }
            }
            if (inst.cnf.num_vars <= 16) CHECK(dominant_as_expected(inst));
          }
        }
      }
    }
  }
  CHECK(built > 50);
}

TEST_CASE("capacity and fragment violations") {
  CoupledFamilySpec s;
  s.e = 3;
  s.b = 5;
  s.c = 1;
  s.d = 1;
  s.digits = {{1, 1, 1}};
  try {
    synthesize(s);
    FAIL("expected a capacity error");
  } catch (const CapacityError& ex) {
    CHECK(std::string(ex.what()).find("chain 2") != std::string::npos);
  }

  CoupledFamilySpec two = canonical_family_spec(FamilyFragment::TwoSat, 3, 2);
  two.b = 2;
  CHECK_THROWS_AS(synthesize(two), FragmentError);

  CoupledFamilySpec hd = canonical_family_spec(FamilyFragment::HornDominant, 2, 3);
  hd.digits = {{0, 2}};
  CHECK_THROWS_AS(synthesize(hd), FragmentError);

  CoupledFamilySpec hd2 = canonical_family_spec(FamilyFragment::HornDominant, 2, 3);
  hd2.digits = {{1, 1}};
  CHECK_THROWS_AS(synthesize(hd2), FragmentError);

  CoupledFamilySpec x = canonical_family_spec(FamilyFragment::Xor, 2, 3);
  x.b = 2;
  CHECK_THROWS_AS(synthesize(x), FragmentError);

  CoupledFamilySpec bad = canonical_family_spec(FamilyFragment::General3Sat, 2, 3);
  bad.digits = {{1}};
  CHECK_THROWS_AS(synthesize(bad), std::invalid_argument);
  bad.digits = {{0, 0}};
  CHECK_THROWS_AS(synthesize(bad), std::invalid_argument);
}

TEST_CASE("fragment families") {
  for (int e = 1; e <= 4; ++e) {
    const auto two = synthesize_fragment_family(FamilyFragment::TwoSat, e, 2);
    CHECK(classify(two.cnf).two_sat);
    for (int j = 0; j + 1 < e; ++j) {
      const Var y = two.coupler_vars[j];
      CHECK(occurrences(two, j, y) == std::pair{1, 0});
      CHECK(occurrences(two, j + 1, y) == std::pair{0, 1});
    }
    CHECK(solve_2sat(two.cnf).sat());
    CHECK(dominant_as_expected(two));

    const auto hc = synthesize_fragment_family(FamilyFragment::HornCoupler, e, 2);
    CHECK(classify(hc.cnf).horn);
    CHECK(hc.expected_dominant_value == 0);
    CHECK(dominant_as_expected(hc));

    const auto hd = synthesize_fragment_family(FamilyFragment::HornDominant, e, 2);
    CHECK(classify(hd.cnf).horn);
    CHECK(dominant_as_expected(hd));

    const auto x = synthesize_fragment_family(FamilyFragment::Xor, e, 2);
    CHECK(classify(x.cnf).xor_sat);
    CHECK(solve_xor_gauss(x.cnf).sat());
    CHECK(dominant_as_expected(x));
  }
}

TEST_CASE("Horn coupler family with three negative coupler occurrences") {
  const auto inst = synthesize_fragment_family(FamilyFragment::HornCoupler, 2, 3, 3);
  CHECK(classify(inst.cnf).horn);
  const Var y = inst.coupler_vars[0];
  CHECK(occurrences(inst, 1, y) == std::pair{0, 3});
  CHECK(solve_horn_unit_prop(inst.cnf).sat());
  CHECK(dominant_as_expected(inst));
}

TEST_CASE("row and column permutations keep satisfiability") {
  std::mt19937_64 rng(81);
  for (int t = 0; t < 30; ++t) {
    CoupledFamilySpec s = canonical_family_spec(FamilyFragment::General3Sat, 1 + static_cast<int>(rng() % 3), 2);
    const auto inst = synthesize(s);
    for (const Cnf& cnf : {inst.cnf, make_chain({3})}) {
      std::vector<Var> perm(static_cast<std::size_t>(cnf.num_vars));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Cnf p = cnf;
      std::shuffle(p.clauses.begin(), p.clauses.end(), rng);
      for (auto& c : p.clauses) {
        for (auto& l : c.literals) l.var = perm[l.var];
      }
      CHECK(testsupport::satisfiable(p) == testsupport::satisfiable(cnf));
      CHECK(testsupport::models(p).size() == testsupport::models(cnf).size());
    }
  }
}

TEST_CASE("placement is deterministic; seeds give valid alternatives") {
  CoupledFamilySpec s = canonical_family_spec(FamilyFragment::General3Sat, 3, 3);
  s.d = 2;
  s.digits = {{1, 1, 1}, {1, 0, 1}};
  CHECK(write_instance(synthesize(s)) == write_instance(synthesize(s)));
  CHECK(write_instance(synthesize(s, {42})) == write_instance(synthesize(s, {42})));
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = synthesize(s, {seed});
    differs |= inst.cnf != synthesize(s).cnf;
    CHECK(dominant_as_expected(inst));
  }
  CHECK(differs);
}

TEST_CASE("annotated DIMACS round-trip") {
  CoupledFamilySpec s = canonical_family_spec(FamilyFragment::HornCoupler, 3, 2);
  const auto inst = synthesize(s);
  const auto back = read_instance(write_instance(inst, {"note"}));
  CHECK(back.cnf == inst.cnf);
  CHECK(back.chain_rows == inst.chain_rows);
  CHECK(back.coupler_vars == inst.coupler_vars);
  CHECK(back.candidate_vars == inst.candidate_vars);
  CHECK(back.candidate_polarity == inst.candidate_polarity);
  CHECK(back.dominant_var == inst.dominant_var);
  CHECK(back.expected_dominant_value == inst.expected_dominant_value);
  CHECK_THROWS_AS(read_instance("p cnf 1 1\n1 0\n"), DimacsError);
}

TEST_CASE("family config round-trip") {
  FamilyConfig cfg;
  cfg.spec = canonical_family_spec(FamilyFragment::General3Sat, 2, 3);
  cfg.spec.d = 2;
  cfg.spec.digits = {{1, 0}, {0, 1}};
  cfg.spec.coupler_multiplicities = {{1, 2}};
  cfg.seed = 9;
  const FamilyConfig back = parse_family_config(to_json(cfg));
  CHECK(back.spec.digits == cfg.spec.digits);
  CHECK(back.spec.coupler_multiplicities == cfg.spec.coupler_multiplicities);
  CHECK(back.seed == cfg.seed);
  CHECK(to_json(back) == to_json(cfg));
  CHECK_THROWS_AS(parse_family_config("{\"e\":1}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_family_config("{\"e\":1,\"b\":1,\"c\":1,\"d\":1,\"digits\":[[1]],\"bogus\":0}"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_family_config("not json"), std::invalid_argument);
}
