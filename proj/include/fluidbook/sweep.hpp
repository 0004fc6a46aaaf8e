#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fluidbook/config.hpp"
#include "fluidbook/engine.hpp"

namespace fluidbook {

enum class SurfaceKind { Speed, Spread };

/// Closed-form Reynolds numbers tabulated over (x, P). Rows follow the P axis,
/// columns the x axis (v_T for Speed, l for Spread).
struct SurfaceGrid {
  SurfaceKind kind = SurfaceKind::Speed;
  std::vector<double> x_axis;
  std::vector<double> y_axis;
  std::vector<double> values;  // row-major, y_axis.size() x x_axis.size()
  std::map<std::string, double> fixed_params;

  [[nodiscard]] double at(std::size_t row, std::size_t col) const {
    return values[row * x_axis.size() + col];
  }
  [[nodiscard]] std::string x_name() const { return kind == SurfaceKind::Speed ? "v_T" : "l"; }
};

/// Evenly spaced [first, last] with `count` points, computed by index so that
/// grid points carry no accumulated rounding drift.
std::vector<double> linspace(double first, double last, std::size_t count);

std::vector<double> default_speed_axis();        // -5 .. 5 step 0.25
std::vector<double> default_spread_axis();       // 1 .. 20 step 1
std::vector<double> default_probability_axis();  // 0 .. 0.99 step 0.01

SurfaceGrid surface_speed(const std::vector<double>& speeds, const std::vector<double>& probabilities,
                          double spread);
SurfaceGrid surface_spread(const std::vector<double>& spreads,
                           const std::vector<double>& probabilities, double speed);

struct RunSummary {
  std::size_t config_index = 0;
  std::uint64_t seed = 0;
  SimConfig config;
  double final_smoothed_mu = 0.0;
  double final_smoothed_reynolds = 0.0;
  double max_raw_reynolds = 0.0;
  double return_variance = 0.0;
  std::array<std::size_t, 3> regime_counts{};  // laminar, transitional, turbulent
  std::optional<std::string> error;
};

RunSummary summarize(const SeriesBundle& bundle, std::size_t config_index);

/// One summary per (config, seed) in config-major order. A failing cell
/// records its error and the batch carries on. Cells run on up to `threads`
/// workers (0 = hardware concurrency); output order never depends on it.
std::vector<RunSummary> batch_runs(const std::vector<SimConfig>& grid,
                                   const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

/// Cartesian product of the base config over collision probabilities and
/// initial spreads. An empty list keeps the base value.
std::vector<SimConfig> expand_grid(const SimConfig& base, const std::vector<double>& probabilities,
                                   const std::vector<Price>& spreads);

}  // namespace fluidbook
