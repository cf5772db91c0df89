#include "satnum/family_config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace satnum {

namespace {

using nlohmann::json;

int get_int(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

FamilyConfig parse_family_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("family config is not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw std::invalid_argument("family config must be a JSON object");

  static const std::set<std::string> known = {"e", "b", "c", "d", "digits", "coupler_value",
                                              "fragment", "width", "coupler_polarity",
                                              "coupler_multiplicities", "seed"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown key '" + key + "' in family config");
  }

  FamilyConfig cfg;
  auto& s = cfg.spec;
  s.e = get_int(j, "e");
  s.b = get_int(j, "b");
  s.c = get_int(j, "c");
  s.d = get_int(j, "d");
  s.coupler_value = j.contains("coupler_value") ? get_int(j, "coupler_value") : 1;
  if (j.contains("fragment")) {
    if (!j.at("fragment").is_string()) throw std::invalid_argument("'fragment' must be a string");
    s.fragment = parse_family_fragment(j.at("fragment").get<std::string>());
  }
  try {
    if (!j.contains("digits")) throw std::invalid_argument("missing key 'digits'");
    s.digits = j.at("digits").get<std::vector<std::vector<int>>>();
    if (j.contains("width")) s.width = get_int(j, "width");
    if (j.contains("coupler_polarity")) s.coupler_polarity = j.at("coupler_polarity").get<std::vector<int>>();
    if (j.contains("coupler_multiplicities")) {
      for (const auto& pair : j.at("coupler_multiplicities")) {
        if (!pair.is_array() || pair.size() != 2) {
          throw std::invalid_argument("'coupler_multiplicities' entries must be [first, second]");
        }
        s.coupler_multiplicities.emplace_back(pair[0].get<int>(), pair[1].get<int>());
      }
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed family config: ") + ex.what());
  }
  return cfg;
}

std::string to_json(const FamilyConfig& config) {
  const auto& s = config.spec;
  json j;
  j["e"] = s.e;
  j["b"] = s.b;
  j["c"] = s.c;
  j["d"] = s.d;
  j["digits"] = s.digits;
  j["coupler_value"] = s.coupler_value;
  j["fragment"] = to_string(s.fragment);
  if (s.width) j["width"] = *s.width;
  if (!s.coupler_polarity.empty()) j["coupler_polarity"] = s.coupler_polarity;
  if (!s.coupler_multiplicities.empty()) {
    json arr = json::array();
    for (auto [p, q] : s.coupler_multiplicities) arr.push_back({p, q});
    j["coupler_multiplicities"] = arr;
  }
  if (config.seed) j["seed"] = *config.seed;
  return j.dump(2) + "\n";
}

}  // namespace satnum
