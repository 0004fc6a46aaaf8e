#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fluidbook/agents.hpp"
#include "fluidbook/config.hpp"
#include "fluidbook/order_book.hpp"
#include "fluidbook/physics.hpp"

namespace fluidbook {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Physics readout of one simulation step.
struct TickRecord {
  std::size_t t = 0;
  Price bid = 0;  // after the step
  Price ask = 0;
  double mid = 0.0;
  double ret = 0.0;  // relative mid change over the step
  double price_change = 0.0;  // v_T
  Price spread = 1;           // l, pre-trade spread
  double traded_volume = 0.0;
  double rho_obstacle = kInfinity;
  double rho_fluid = kInfinity;
  Viscosity mu;
  double p_hat = 0.0;
  /// v_T^2 * l * P / (1 - P) with the configured collision probability.
  double reynolds = 0.0;
  /// Realised-notional form, +inf on perfect or over-full collisions.
  double reynolds_realized = 0.0;
  FlowRegime regime = FlowRegime::Laminar;
};

struct SeriesBundle {
  SimConfig config;
  std::string generator;
  std::string version;
  std::vector<TickRecord> ticks;
  std::vector<double> smoothed_mu;
  std::vector<double> smoothed_reynolds;
  std::vector<PriceLevel> final_buys;
  std::vector<PriceLevel> final_sells;
};

/// Called after every step with the mutated book and the new record.
using StepObserver = std::function<void(const OrderBook&, const TickRecord&)>;

BookParams book_params(const SimConfig& config);

/// Samples one agent, applies it, and returns the physics of the interaction.
TickRecord step(OrderBook& book, AgentSampler& sampler, const SimConfig& config, std::size_t t);

/// init_book followed by config.steps steps and the smoothing passes.
SeriesBundle run(const SimConfig& config, const StepObserver& observer = {});

/// Clamp +inf to `clamp`, divide the finite entries by their maximum, then a
/// trailing moving average of width `window` truncated at the head.
std::vector<double> smooth_viscosity(std::span<const double> raw, double clamp, std::size_t window);

/// Trailing moving average of width `window`, truncated at the head.
std::vector<double> smooth_series(std::span<const double> raw, std::size_t window);

/// Population variance of the per-tick returns.
double return_variance(const SeriesBundle& bundle);

/// Largest raw Reynolds number of the run.
double max_reynolds(const SeriesBundle& bundle);

}  // namespace fluidbook
