#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "fluidbook/physics.hpp"

namespace fluidbook {

/// Hyperparameters of one simulation run. Defaults are the high-collision
/// reference experiment: bid 3681, spread 1, m 2000, h 10, P 0.99, 450 steps.
struct SimConfig {
  Price initial_bid = 3681;
  Price initial_spread = 1;
  double m = 2000.0;
  double h = 10.0;
  double collision_probability = 0.99;
  std::int64_t steps = 450;
  std::uint64_t seed = 1;
  std::int64_t smoothing_window = 20;
  double viscosity_clamp = 2.0;

  /// Throws ConfigError naming the first offending key.
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Overrides keyed by config key name, values still as text.
using ConfigOverrides = std::map<std::string, std::string>;

/// Parses line-oriented `key = value` text (`#` starts a comment) on top of
/// `base`, rejecting unknown keys and unparsable values. Does not validate.
SimConfig parse_config_text(const std::string& text, SimConfig base = {});

/// Reads `path` (empty path = no file), applies `overrides`, validates.
SimConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Sets one key from text. Throws ConfigError for unknown keys or bad values.
void set_config_value(SimConfig& config, const std::string& key, const std::string& value);

/// `key = value` lines that parse back to an identical SimConfig.
std::string format_config(const SimConfig& config);

}  // namespace fluidbook
