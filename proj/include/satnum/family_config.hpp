#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "satnum/chain_synth.hpp"

namespace satnum {

/// A family spec as stored on disk, plus the optional placement seed.
///
///   {"e": 2, "b": 2, "c": 3, "d": 2, "digits": [[1, 0], [0, 1]],
///    "coupler_value": 1, "fragment": "GENERAL_3SAT",
///    "width": 3, "coupler_polarity": [1], "coupler_multiplicities": [[1, 2]],
///    "seed": 7}
///
/// `width`, `coupler_polarity`, `coupler_multiplicities` and `seed` are
/// optional. Unknown keys are rejected.
struct FamilyConfig {
  CoupledFamilySpec spec;
  std::optional<std::uint64_t> seed;
};

/// Throws std::invalid_argument with the offending key on malformed input.
FamilyConfig parse_family_config(std::string_view json_text);
std::string to_json(const FamilyConfig& config);

}  // namespace satnum
