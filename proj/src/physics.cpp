#include "fluidbook/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fluidbook {

double kernel_weight(double r, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("kernel_weight: smoothing length h must be > 0");
  const double norm = 1.0 / (h * h * h * std::pow(std::numbers::pi, 1.5));
  return norm * std::exp(-(r * r) / (h * h));
}

double size_at(Price price, Anchors anchors, double m, double h) {
  const double to_bid = static_cast<double>(price - anchors.bid);
  const double to_ask = static_cast<double>(price - anchors.ask);
  return m * (kernel_weight(to_bid, h) + kernel_weight(to_ask, h));
}

namespace {

double notional_per_volume(double size, double price, double volume) {
  if (volume == 0.0) return kInfinity;
  return size * price / volume;
}

}  // namespace

double obstacle_density(double obstacle_size, double obstacle_price, double volume) {
  return notional_per_volume(obstacle_size, obstacle_price, volume);
}

double fluid_density(double order_size, double order_price, double volume) {
  return notional_per_volume(order_size, order_price, volume);
}

Viscosity viscosity(const InteractionOutcome& outcome) {
  const double denom = outcome.traded_volume * std::abs(outcome.price_change);
  if (denom == 0.0) return Viscosity{kInfinity};
  return Viscosity{std::abs(outcome.obstacle_notional - outcome.order_notional) / denom};
}

double collision_ratio(const InteractionOutcome& outcome) {
  if (!(outcome.obstacle_notional > 0.0)) {
    throw DegenerateBookError("collision_ratio: obstacle notional is zero");
  }
  if (!outcome.collision) return 0.0;
  return std::min(outcome.order_notional / outcome.obstacle_notional, 1.0);
}

double reynolds_tick(const InteractionOutcome& outcome) {
  const double ratio = collision_ratio(outcome);
  const double v = outcome.price_change;
  if (v == 0.0 || ratio == 0.0) return 0.0;
  if (ratio >= 1.0) return kInfinity;
  const double l = static_cast<double>(outcome.spread_before);
  return outcome.order_notional * v * v * l /
         (outcome.obstacle_notional - outcome.order_notional);
}

double reynolds_closed_form(double price_change, double spread, double probability) {
  if (!(probability >= 0.0 && probability < 1.0)) {
    throw std::invalid_argument("reynolds_closed_form: probability must lie in [0, 1)");
  }
  if (!(spread > 0.0)) throw std::invalid_argument("reynolds_closed_form: spread must be > 0");
  const double odds = probability / (1.0 - probability);
  return price_change * price_change * spread * odds;
}

FlowRegime classify_flow(double reynolds) {
  if (reynolds < kLaminarBelow) return FlowRegime::Laminar;
  if (reynolds > kTurbulentAbove) return FlowRegime::Turbulent;
  return FlowRegime::Transitional;
}

std::string_view to_string(FlowRegime regime) noexcept {
  switch (regime) {
    case FlowRegime::Laminar: return "laminar";
    case FlowRegime::Transitional: return "transitional";
    case FlowRegime::Turbulent: return "turbulent";
  }
  return "unknown";
}

}  // namespace fluidbook
