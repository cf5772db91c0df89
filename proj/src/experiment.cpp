#include "satnum/experiment.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace satnum {

namespace {

using nlohmann::json;

DigitPattern parse_digits(const std::string& s) {
  if (s == "canonical") return DigitPattern::Canonical;
  if (s == "two_candidate") return DigitPattern::TwoCandidate;
  throw std::invalid_argument("unknown digits pattern '" + s + "'");
}

Companion parse_companion(const std::string& s) {
  if (s == "none") return Companion::None;
  if (s == "coupler") return Companion::Coupler;
  if (s == "candidate") return Companion::Candidate;
  throw std::invalid_argument("unknown companion '" + s + "'");
}

SweepConfig make_sweep(std::string family, FamilyFragment f, std::optional<int> b, int e_to,
                       DigitPattern digits = DigitPattern::Canonical,
                       Companion companion = Companion::None) {
  SweepConfig s;
  s.family = std::move(family);
  s.tmpl.fragment = f;
  s.tmpl.b = b;
  s.tmpl.c = 3;
  s.tmpl.digits = digits;
  s.tmpl.companion = companion;
  s.e_from = 1;
  s.e_to = e_to;
  return s;
}

}  // namespace

std::vector<SweepConfig> parse_sweep_config(std::string_view json_text) {
  std::vector<SweepConfig> out;
  try {
    const json j = json::parse(json_text);
    for (const auto& item : j.at("sweeps")) {
      SweepConfig s;
      s.family = item.at("family").get<std::string>();
      s.tmpl.fragment = parse_family_fragment(item.at("fragment").get<std::string>());
      if (item.contains("b")) s.tmpl.b = item.at("b").get<int>();
      s.tmpl.c = item.value("c", 3);
      s.e_from = item.at("e_from").get<int>();
      s.e_to = item.at("e_to").get<int>();
      s.tmpl.digits = parse_digits(item.value("digits", std::string("canonical")));
      s.tmpl.companion = parse_companion(item.value("companion", std::string("none")));
      s.tmpl.coupler_value = item.value("coupler_value", 1);
      out.push_back(std::move(s));
    }
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed sweep config: ") + ex.what());
  }
  return out;
}

std::vector<SweepConfig> default_sweeps() {
  return {
      make_sweep("k3_ones", FamilyFragment::General3Sat, 2, 4),
      make_sweep("two_sat", FamilyFragment::TwoSat, std::nullopt, 6),
      make_sweep("two_sat_coupler", FamilyFragment::TwoSat, std::nullopt, 6, DigitPattern::Canonical,
                 Companion::Coupler),
      make_sweep("horn_coupler", FamilyFragment::HornCoupler, 2, 4),
      make_sweep("horn_dominant", FamilyFragment::HornDominant, 2, 4),
      make_sweep("k3_two_candidate", FamilyFragment::General3Sat, 2, 4, DigitPattern::TwoCandidate,
                 Companion::Candidate),
  };
}

ExperimentRow to_experiment_row(const std::string& family, const SweepRow& row) {
  ExperimentRow r;
  r.family = family;
  r.fragment = to_string(row.spec.fragment);
  r.e = row.spec.e;
  r.b = row.spec.b;
  r.c = row.spec.c;
  r.d = row.spec.d;
  r.n = row.spec.num_vars();
  r.instance_id = family + "-e" + std::to_string(r.e);
  r.a1 = row.a1;
  r.a2 = row.a2;
  r.b_min = row.aggregate.b_min;
  r.b_max = row.aggregate.b_max;
  r.margin = row.report.margin;
  if (row.report.margin && row.aggregate_margin) r.agreed = *row.report.margin == *row.aggregate_margin;
  return r;
}

std::vector<ExperimentRow> run_experiment(const std::vector<SweepConfig>& sweeps, const MarginOptions& options) {
  std::vector<ExperimentRow> out;
  for (const auto& s : sweeps) {
    for (const auto& row : margin_decay_sweep(s.tmpl, s.e_from, s.e_to, options)) {
      out.push_back(to_experiment_row(s.family, row));
    }
  }
  return out;
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = std::string(kExperimentHeader) + "\n";
  for (const auto& r : rows) {
    std::string margin_float;
    if (r.margin) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", to_double_nearest(*r.margin));
      margin_float = buf;
    }
    out += r.instance_id + "," + r.family + "," + r.fragment + "," + std::to_string(r.n) + "," +
           std::to_string(r.e) + "," + std::to_string(r.b) + "," + std::to_string(r.c) + "," +
           std::to_string(r.d) + "," + to_string(r.a1) + "," + (r.a2 ? to_string(*r.a2) : "") + "," +
           to_string(r.b_min) + "," + to_string(r.b_max) + "," +
           (r.margin ? to_string(*r.margin, true) : "") + "," + margin_float + "," +
           (r.agreed ? (*r.agreed ? "true" : "false") : "") + "\n";
  }
  return out;
}

}  // namespace satnum
