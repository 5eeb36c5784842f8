#include "config.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>

namespace diqss::cli {

namespace {

nlohmann::json defaults() {
  return {
      // channel
      {"T", 0.5},
      {"d", 0.0},
      {"alpha", 0.2},
      {"eta_t", nullptr},  // override; null derives 10^(-alpha d / 10)
      {"eta_M", 1.0},
      {"N", 0},
      {"R_rep", 1e7},
      // noise
      {"F", 1.0},
      {"eta_l", 1.0},
      // protocol
      {"p", 0.5},
      {"P_c", 0.5},
      {"P_GHZ", 0.25},
      {"q", 0.0},
      {"strategy", "base"},
      // entropy-bound evaluation
      {"interpretation", "A"},
      {"sense", "min"},
      {"resolution", 64},
      // simulation
      {"trials", 1000000},
      {"rounds", 1000000},
      {"seed", 1},
      {"validate_em_scale", 1.0},  // negative-control hook for cmd_validate
      // scan axis
      {"axis", ""},
      {"start", 0.0},
      {"stop", 1.0},
      {"steps", 2},
      {"scale", "linear"},
      {"outputs", nlohmann::json::array({"E_m", "E_c", "R_inf", "S", "delta"})},
      // threshold target
      {"target", "fidelity"},
      // calibration stamp path ("" consults ./diqss_calibration.json if present)
      {"stamp", ""},
  };
}

bool is_number(const nlohmann::json& v) {
  return v.is_number_float() || v.is_number_integer() || v.is_number_unsigned();
}

}  // namespace

RunConfig RunConfig::load(const std::string& config_path,
                          const std::vector<std::string>& set_pairs) {
  RunConfig cfg;
  cfg.merged_ = defaults();

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    nlohmann::json file_json;
    try {
      in >> file_json;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!file_json.is_object()) {
      throw ConfigError("config file must hold a single JSON object");
    }
    for (auto& [key, value] : file_json.items()) {
      if (!cfg.merged_.contains(key)) {
        throw ConfigError("unknown config key: " + key);
      }
      cfg.merged_[key] = value;
      cfg.explicit_.insert(key);
    }
  }

  for (const std::string& pair : set_pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects key=value, got: " + pair);
    }
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    if (!cfg.merged_.contains(key)) {
      throw ConfigError("unknown config key: " + key);
    }
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
      parsed = value;  // bare strings such as strategy=advanced
    }
    cfg.merged_[key] = parsed;
    cfg.explicit_.insert(key);
  }

  for (auto& [key, value] : cfg.merged_.items()) {
    (void)value;
    cfg.check_value(key);
  }
  cfg.apply_stamp();
  return cfg;
}

void RunConfig::check_value(const std::string& key) const {
  const auto& v = merged_.at(key);
  auto fail = [&](const char* expected) {
    throw ConfigError("config key '" + key + "' " + expected);
  };
  if (key == "eta_t") {
    if (!v.is_null() && !is_number(v)) fail("must be a number or null");
    return;
  }
  if (key == "strategy") {
    if (!v.is_string()) fail("must be a string");
    const auto s = v.get<std::string>();
    if (s != "base" && s != "postselect" && s != "advanced") {
      fail("must be one of base|postselect|advanced");
    }
    return;
  }
  if (key == "interpretation") {
    if (!v.is_string() || (v != "A" && v != "literal")) fail("must be A|literal");
    return;
  }
  if (key == "sense") {
    if (!v.is_string() || (v != "max" && v != "min")) fail("must be max|min");
    return;
  }
  if (key == "scale") {
    if (!v.is_string() || (v != "linear" && v != "log")) fail("must be linear|log");
    return;
  }
  if (key == "target") {
    if (!v.is_string() || (v != "fidelity" && v != "local_efficiency")) {
      fail("must be fidelity|local_efficiency");
    }
    return;
  }
  if (key == "axis" || key == "stamp") {
    if (!v.is_string()) fail("must be a string");
    return;
  }
  if (key == "outputs") {
    if (v.is_string()) return;
    if (!v.is_array()) fail("must be an array of output names");
    for (const auto& o : v) {
      if (!o.is_string()) fail("must contain only strings");
    }
    return;
  }
  if (key == "N" || key == "steps" || key == "resolution" || key == "trials" ||
      key == "rounds" || key == "seed") {
    if (!v.is_number_integer() && !v.is_number_unsigned()) fail("must be an integer");
    return;
  }
  if (!is_number(v)) fail("must be a number");
}

void RunConfig::apply_stamp() {
  std::string path = merged_.at("stamp").get<std::string>();
  const bool explicit_path = !path.empty();
  if (!explicit_path) path = "diqss_calibration.json";
  if (!std::filesystem::exists(path)) {
    if (explicit_path) throw ConfigError("calibration stamp not found: " + path);
    return;
  }
  std::ifstream in(path);
  nlohmann::json stamp;
  try {
    in >> stamp;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("calibration stamp is not valid JSON: " + std::string(e.what()));
  }
  if (!was_set("interpretation") && stamp.contains("interpretation")) {
    merged_["interpretation"] = stamp["interpretation"];
  }
  if (!was_set("sense") && stamp.contains("sense")) {
    merged_["sense"] = stamp["sense"];
  }
  check_value("interpretation");
  check_value("sense");
  stamp_source_ = path;
}

double RunConfig::number(const std::string& key) const {
  return merged_.at(key).get<double>();
}

long long RunConfig::integer(const std::string& key) const {
  return merged_.at(key).get<long long>();
}

std::string RunConfig::text(const std::string& key) const {
  return merged_.at(key).get<std::string>();
}

heralding::ChannelParams RunConfig::channel() const {
  heralding::ChannelParams ch;
  ch.transmittance = number("T");
  ch.distance_km = number("d");
  ch.fiber_loss_db_per_km = number("alpha");
  ch.memory_efficiency = number("eta_M");
  ch.max_storage_intervals = static_cast<int>(integer("N"));
  ch.rep_rate_hz = number("R_rep");
  if (!merged_.at("eta_t").is_null()) ch.eta_t_override = number("eta_t");
  try {
    ch.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid channel parameter: ") + e.what());
  }
  return ch;
}

quantum::NoiseParams RunConfig::noise() const {
  quantum::NoiseParams n{number("F"), number("eta_l")};
  try {
    n.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid noise parameter: ") + e.what());
  }
  return n;
}

quantum::Strategy RunConfig::strategy() const {
  const auto s = text("strategy");
  if (s == "base") return quantum::Strategy::base;
  if (s == "postselect") return quantum::Strategy::postselect;
  return quantum::Strategy::advanced;
}

keyrate::Interpretation RunConfig::interpretation() const {
  return text("interpretation") == "A" ? keyrate::Interpretation::kCorrelator
                                       : keyrate::Interpretation::kLiteral;
}

keyrate::Sense RunConfig::sense() const {
  return text("sense") == "max" ? keyrate::Sense::max : keyrate::Sense::min;
}

keyrate::ProtocolParams RunConfig::proto() const {
  keyrate::ProtocolParams pp;
  pp.first_basis_prob = number("p");
  pp.test_basis_prob = number("P_c");
  pp.gsm_success_prob = number("P_GHZ");
  pp.noise_preprocessing = number("q");
  pp.strategy = strategy();
  pp.interpretation = interpretation();
  pp.sense = sense();
  pp.solver_resolution = static_cast<int>(integer("resolution"));
  try {
    pp.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid protocol parameter: ") + e.what());
  }
  return pp;
}

mc::SimConfig RunConfig::sim(long long trials) const {
  mc::SimConfig sc;
  sc.channel = channel();
  sc.noise = noise();
  sc.proto = proto();
  sc.trials = trials;
  sc.seed = static_cast<uint64_t>(integer("seed"));
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid simulation parameter: ") + e.what());
  }
  return sc;
}

std::vector<std::string> RunConfig::outputs() const {
  const auto& v = merged_.at("outputs");
  std::vector<std::string> names;
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    size_t pos = 0;
    while (pos <= s.size()) {
      const size_t comma = s.find(',', pos);
      const std::string item = s.substr(pos, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - pos);
      if (!item.empty()) names.push_back(item);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else {
    for (const auto& o : v) names.push_back(o.get<std::string>());
  }
  if (names.empty()) throw ConfigError("outputs must name at least one column");
  return names;
}

std::string RunConfig::config_hash() const {
  const std::string canonical = merged_.dump();
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace diqss::cli
