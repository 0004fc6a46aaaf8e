#include "fluidbook/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>

namespace fluidbook {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_int(const std::string& key, std::string_view text) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key, "cannot parse integer '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(const std::string& key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw ConfigError(key, "cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

// Shortest %g rendering that parses back to the same double.
std::string real_text(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    double back = 0.0;
    std::from_chars(buf, buf + std::strlen(buf), back);
    if (back == v) break;
  }
  return buf;
}

}  // namespace

void SimConfig::validate() const {
  if (initial_bid < 1) throw ConfigError("initial_bid", "must be >= 1");
  if (initial_bid < static_cast<Price>(10)) throw ConfigError("initial_bid", "must leave ten positive buy levels (>= 10)");
  if (initial_spread < 1) throw ConfigError("initial_spread", "must be >= 1");
  if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("m", "must be a positive finite number");
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h", "must be a positive finite number");
  if (!(collision_probability >= 0.0 && collision_probability <= 1.0)) {
    throw ConfigError("collision_probability", "must lie in [0, 1]");
  }
  if (steps < 1) throw ConfigError("steps", "must be >= 1");
  if (smoothing_window < 1) throw ConfigError("smoothing_window", "must be >= 1");
  if (!(viscosity_clamp >= 1.0) || !std::isfinite(viscosity_clamp)) {
    throw ConfigError("viscosity_clamp", "must be a finite number >= 1");
  }
}

void set_config_value(SimConfig& c, const std::string& key, const std::string& raw) {
  const auto value = trim(raw);
  if (key == "initial_bid") c.initial_bid = parse_int<Price>(key, value);
  else if (key == "initial_spread") c.initial_spread = parse_int<Price>(key, value);
  else if (key == "m") c.m = parse_real(key, value);
  else if (key == "h") c.h = parse_real(key, value);
  else if (key == "collision_probability") c.collision_probability = parse_real(key, value);
  else if (key == "steps") c.steps = parse_int<std::int64_t>(key, value);
  else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "smoothing_window") c.smoothing_window = parse_int<std::int64_t>(key, value);
  else if (key == "viscosity_clamp") c.viscosity_clamp = parse_real(key, value);
  else throw ConfigError(key, "unknown configuration key");
}

SimConfig parse_config_text(const std::string& text, SimConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(view), "line " + std::to_string(lineno) + " is not `key = value`");
    }
    set_config_value(base, std::string(trim(view.substr(0, eq))), std::string(view.substr(eq + 1)));
  }
  return base;
}

SimConfig parse_config(const std::string& path, const ConfigOverrides& overrides) {
  SimConfig config;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    config = parse_config_text(buf.str(), config);
  }
  for (const auto& [key, value] : overrides) set_config_value(config, key, value);
  config.validate();
  return config;
}

std::string format_config(const SimConfig& c) {
  std::ostringstream out;
  out << "initial_bid = " << c.initial_bid << '\n'
      << "initial_spread = " << c.initial_spread << '\n'
      << "m = " << real_text(c.m) << '\n'
      << "h = " << real_text(c.h) << '\n'
      << "collision_probability = " << real_text(c.collision_probability) << '\n'
      << "steps = " << c.steps << '\n'
      << "seed = " << c.seed << '\n'
      << "smoothing_window = " << c.smoothing_window << '\n'
      << "viscosity_clamp = " << real_text(c.viscosity_clamp) << '\n';
  return out.str();
}

}  // namespace fluidbook
