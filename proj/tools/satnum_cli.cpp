#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "satnum/chain_synth.hpp"
#include "satnum/dimacs.hpp"
#include "satnum/errors.hpp"
#include "satnum/experiment.hpp"
#include "satnum/family_config.hpp"
#include "satnum/fourier_motzkin.hpp"
#include "satnum/horn_margin_solver.hpp"
#include "satnum/margin.hpp"
#include "satnum/reduction.hpp"
#include "satnum/solvers.hpp"

namespace {

using namespace satnum;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

// 1-based DIMACS indices on the command line, 0-based inside.
std::vector<Var> to_vars(const std::vector<int>& ids, int num_vars) {
  std::vector<Var> out;
  for (int id : ids) {
    if (id < 1 || id > num_vars) throw UsageError("variable " + std::to_string(id) + " out of range");
    out.push_back(id - 1);
  }
  return out;
}

Cnf flip_all(const Cnf& cnf) {
  Cnf out = cnf;
  for (auto& cl : out.clauses) {
    for (auto& l : cl.literals) l = ~l;
  }
  return out;
}

SolveResult solve_by_fragment(const Cnf& cnf, const FragmentSet& tags, int cap, bool& decided) {
  decided = true;
  if (tags.xor_sat) return solve_xor_gauss(cnf);
  if (tags.two_sat) return solve_2sat(cnf);
  if (tags.horn) return solve_horn_unit_prop(cnf);
  if (tags.dual_horn) {
    SolveResult r = solve_horn_unit_prop(flip_all(cnf));
    if (r.witness) {
      for (auto& v : *r.witness) v = static_cast<std::uint8_t>(1 - v);
    }
    r.method = "dual_horn_unit_propagation";
    return r;
  }
  if (cnf.num_vars <= cap) return solve_brute_force(cnf, cap);
  decided = false;
  return {};
}

int cmd_classify(const std::string& file, int cap, bool witness) {
  const DimacsParse parsed = parse_dimacs(read_file(file));
  const FragmentSet tags = classify(parsed.cnf);
  if (parsed.trivially_unsat) {
    std::cout << tags.to_string() << "; UNSAT\n";
    return 0;
  }
  bool decided = false;
  const SolveResult r = solve_by_fragment(parsed.cnf, tags, cap, decided);
  if (!decided) {
    std::cout << tags.to_string() << "; undecided at desk scale\n";
    return 0;
  }
  std::cout << tags.to_string() << "; " << (r.sat() ? "SAT" : "UNSAT") << "\n";
  if (witness && r.witness) std::cout << format_assignment(*r.witness) << "\n";
  return 0;
}

int cmd_reduce(const std::string& file) {
  std::cout << format_system(cnf_to_system(parse_cnf(read_file(file))));
  return 0;
}

int cmd_synth(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& out) {
  FamilyConfig cfg = parse_family_config(read_file(config_path));
  if (seed) cfg.seed = seed;
  PlacementOptions placement;
  placement.shuffle_seed = cfg.seed;
  const SynthesizedInstance inst = synthesize(cfg.spec, placement);
  std::vector<std::string> header = {
      "family " + to_string(cfg.spec.fragment) + " e=" + std::to_string(cfg.spec.e) + " b=" +
      std::to_string(cfg.spec.b) + " c=" + std::to_string(cfg.spec.c) + " d=" + std::to_string(cfg.spec.d) +
      " coupler_value=" + std::to_string(cfg.spec.coupler_value) +
      (cfg.seed ? " seed=" + std::to_string(*cfg.seed) : std::string())};
  write_output(out, write_instance(inst, header));
  return 0;
}

int cmd_eliminate(const std::string& file, const std::vector<int>& keep, const std::string& order,
                  const std::vector<int>& given, const std::string& trace_path, const FmOptions& base) {
  const Cnf cnf = parse_cnf(read_file(file));
  const InequalitySystem sys = cnf_to_system(cnf);
  FmOptions opts = base;
  opts.order = order == "given" ? EliminationOrder::Given : EliminationOrder::Greedy;
  auto [projected, trace] =
      fm_project(sys, to_vars(keep, cnf.num_vars), opts, to_vars(given, cnf.num_vars));
  std::cout << format_system(projected);
  if (!trace_path.empty()) write_output(trace_path, trace.to_text());
  return 0;
}

int cmd_margin(const std::string& file, const std::string& config_path, const std::vector<int>& keep_ids,
               std::optional<int> dominant, std::optional<int> infeasible, const MarginOptions& opts,
               const std::string& out) {
  if (file.empty() == config_path.empty()) throw UsageError("give exactly one of FILE or --config");
  std::optional<SynthesizedInstance> inst;
  InequalitySystem sys;
  if (!config_path.empty()) {
    const FamilyConfig cfg = parse_family_config(read_file(config_path));
    PlacementOptions placement;
    placement.shuffle_seed = cfg.seed;
    inst = synthesize(cfg.spec, placement);
  } else {
    const std::string text = read_file(file);
    if (text.find("c dominant ") != std::string::npos) {
      inst = read_instance(text);
    } else {
      sys = cnf_to_system(parse_cnf(text));
    }
  }
  const int n = inst ? inst->cnf.num_vars : sys.num_vars;
  std::vector<Var> keep = to_vars(keep_ids, n);
  MarginReport rep;
  if (inst && !dominant && !infeasible) {
    if (keep.empty()) keep = {inst->dominant_var};
    rep = decision_margin(*inst, keep, opts);
  } else {
    if (!dominant || !infeasible) throw UsageError("--dominant and --infeasible are required for plain CNF input");
    if (inst) sys = cnf_to_system(inst->cnf);
    const Var x = to_vars({*dominant}, n).front();
    if (keep.empty()) keep = {x};
    rep = decision_margin(sys, x, *infeasible, keep, opts);
  }
  write_output(out, margin_csv(rep));
  return 0;
}

int cmd_solve_horn(const std::string& file) {
  const DimacsParse parsed = parse_dimacs(read_file(file));
  if (parsed.trivially_unsat) {
    std::cout << "reject\n";
    return 0;
  }
  const HornSolveReport rep = solve_horn_margin(parsed.cnf);
  if (!rep.agreed_with_unit_prop) {
    std::cerr << "error: LP estimate disagrees with unit propagation\n";
    return 1;
  }
  if (rep.result.sat()) {
    std::cout << "accept\n" << format_assignment(*rep.result.witness) << "\n";
  } else {
    std::cout << "reject\n";
  }
  return 0;
}

int cmd_experiment(const std::string& config_path, const MarginOptions& opts, const std::string& out) {
  const auto sweeps = config_path.empty() ? default_sweeps() : parse_sweep_config(read_file(config_path));
  write_output(out, to_csv(run_experiment(sweeps, opts)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"satnum: CNF to integer inequalities, chain families, exact elimination and margins"};
  app.require_subcommand(1);

  int cap = kDefaultBruteForceCap;
  std::size_t max_rows = 100000;
  std::size_t line_cap = 4096;
  app.add_option("--cap", cap, "brute-force variable cap")->capture_default_str();
  app.add_option("--max-rows", max_rows, "elimination row limit")->capture_default_str();
  app.add_option("--line-cap", line_cap, "decision line limit")->capture_default_str();

  std::string file;
  std::string out;
  std::string config;
  std::string order = "greedy";
  std::string trace_path;
  std::vector<int> keep;
  std::vector<int> given;
  bool witness = false;
  bool lp_redundancy = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> dominant;
  std::optional<int> infeasible;

  auto* classify_cmd = app.add_subcommand("classify", "fragment tags and SAT/UNSAT");
  classify_cmd->add_option("file", file, "DIMACS file")->required();
  classify_cmd->add_flag("--witness", witness, "print the model");

  auto* reduce_cmd = app.add_subcommand("reduce", "print the inequality system");
  reduce_cmd->add_option("file", file, "DIMACS file")->required();

  auto* synth_cmd = app.add_subcommand("synth", "generate an annotated chain family");
  synth_cmd->add_option("config", config, "family config (JSON)")->required();
  synth_cmd->add_option("--seed", seed, "shuffled placement seed");
  synth_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* elim_cmd = app.add_subcommand("eliminate", "project onto kept variables");
  elim_cmd->add_option("file", file, "DIMACS file")->required();
  elim_cmd->add_option("--keep", keep, "1-based variables to keep")->required()->delimiter(',');
  elim_cmd->add_option("--order", order, "greedy or given")->check(CLI::IsMember({"greedy", "given"}));
  elim_cmd->add_option("--given", given, "elimination order for --order given")->delimiter(',');
  elim_cmd->add_option("--trace", trace_path, "write the elimination trace here");
  elim_cmd->add_flag("--lp-redundancy", lp_redundancy, "LP-based redundant row removal");

  auto* margin_cmd = app.add_subcommand("margin", "decision margin report (CSV)");
  margin_cmd->add_option("file", file, "DIMACS file, annotated or plain");
  margin_cmd->add_option("--config", config, "family config instead of a file");
  margin_cmd->add_option("--keep", keep, "1-based projection variables")->delimiter(',');
  margin_cmd->add_option("--dominant", dominant, "1-based dominant variable (plain CNF)");
  margin_cmd->add_option("--infeasible", infeasible, "infeasible value (plain CNF)")->check(CLI::Range(0, 1));
  margin_cmd->add_option("-o,--output", out, "output file (default stdout)");

  auto* horn_cmd = app.add_subcommand("solve-horn", "LP-estimate Horn solver");
  horn_cmd->add_option("file", file, "DIMACS file")->required();

  auto* exp_cmd = app.add_subcommand("experiment", "margin sweeps as CSV");
  exp_cmd->add_option("--config", config, "sweep config (JSON); built-in sweeps otherwise");
  exp_cmd->add_option("-o,--output", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  FmOptions fm;
  fm.max_rows = max_rows;
  fm.lp_redundancy = lp_redundancy;
  MarginOptions mopts;
  mopts.fm = fm;
  mopts.line_cap = line_cap;

  try {
    if (*classify_cmd) return cmd_classify(file, cap, witness);
    if (*reduce_cmd) return cmd_reduce(file);
    if (*synth_cmd) return cmd_synth(config, seed, out);
    if (*elim_cmd) return cmd_eliminate(file, keep, order, given, trace_path, fm);
    if (*margin_cmd) return cmd_margin(file, config, keep, dominant, infeasible, mopts, out);
    if (*horn_cmd) return cmd_solve_horn(file);
    if (*exp_cmd) return cmd_experiment(config, mopts, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const satnum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
