#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satnum/margin.hpp"

namespace satnum {

struct ExperimentRow {
  std::string instance_id;
  std::string family;
  std::string fragment;
  int n = 0;
  int e = 0;
  int b = 0;
  int c = 0;
  int d = 0;
  Integer a1;
  std::optional<Integer> a2;
  Integer b_min;
  Integer b_max;
  std::optional<Rational> margin;
  /// Full-projection margin equals the margin of the aggregate row alone.
  std::optional<bool> agreed;
};

struct SweepConfig {
  std::string family;
  SweepTemplate tmpl;
  int e_from = 1;
  int e_to = 1;
};

/// {"sweeps": [{"family": "k3", "fragment": "GENERAL_3SAT", "b": 2, "c": 3,
///              "e_from": 1, "e_to": 4, "digits": "canonical",
///              "companion": "none", "coupler_value": 1}]}
/// `b`, `c` (default 3), `digits` (canonical | two_candidate), `companion`
/// (none | coupler | candidate) and `coupler_value` are optional.
/// Throws std::invalid_argument on malformed input.
std::vector<SweepConfig> parse_sweep_config(std::string_view json_text);

/// The sweeps the bundled experiment runs when no config is given.
std::vector<SweepConfig> default_sweeps();

std::vector<ExperimentRow> run_experiment(const std::vector<SweepConfig>& sweeps,
                                          const MarginOptions& options = {});

ExperimentRow to_experiment_row(const std::string& family, const SweepRow& row);

inline constexpr const char* kExperimentHeader =
    "instance_id,family,fragment,n,e,b,c,d,a1,a2,b_min,b_max,margin,margin_float,agreed";

std::string to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace satnum
