#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "diqss/heralding/channel.hpp"
#include "diqss/keyrate/keyrate.hpp"
#include "diqss/mc/simulate.hpp"
#include "diqss/quantum/state.hpp"

namespace diqss::cli {

/// Invalid or unknown configuration input; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Flat JSON configuration: built-in defaults, overlaid by an optional config
/// file, overlaid by --set key=value pairs. Unknown keys are rejected.
class RunConfig {
 public:
  static RunConfig load(const std::string& config_path,
                        const std::vector<std::string>& set_pairs);

  const nlohmann::json& raw() const { return merged_; }
  bool was_set(const std::string& key) const { return explicit_.count(key) > 0; }

  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::string text(const std::string& key) const;

  heralding::ChannelParams channel() const;
  quantum::NoiseParams noise() const;
  keyrate::ProtocolParams proto() const;
  mc::SimConfig sim(long long trials) const;

  quantum::Strategy strategy() const;
  keyrate::Interpretation interpretation() const;
  keyrate::Sense sense() const;
  std::vector<std::string> outputs() const;

  /// Source of the interpretation/sense defaults: "builtin", or the path of
  /// the calibration stamp that supplied them.
  const std::string& stamp_source() const { return stamp_source_; }

  /// FNV-1a hash of the canonical configuration dump, hex-encoded.
  std::string config_hash() const;

 private:
  nlohmann::json merged_;
  std::set<std::string> explicit_;
  std::string stamp_source_ = "builtin";

  void apply_stamp();
  void check_value(const std::string& key) const;
};

}  // namespace diqss::cli
