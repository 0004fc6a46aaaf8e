#pragma once

// Econophysics readouts of one fluid/obstacle interaction: kernel sizes,
// densities, viscosity, collision ratio, Reynolds number and flow regime.
// Every function here is pure. Singular inputs produce +inf rather than
// throwing; only genuinely ill-posed arguments (h <= 0, P >= 1 in the
// closed form, an empty obstacle) raise.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace fluidbook {

using Price = std::int64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Best quotes used as the two kernel anchors.
struct Anchors {
  Price bid;
  Price ask;
};

/// Result of applying one fluid agent to the book.
struct InteractionOutcome {
  double traded_volume = 0.0;      // V
  double price_change = 0.0;       // v_T, change of the mid price
  Price spread_before = 1;         // l
  double obstacle_notional = 0.0;  // S_obstacle * P_obstacle, pre-trade
  double order_notional = 0.0;     // S_order * P_order
  bool collision = false;
};

/// Raised when the opposite best level carries no notional.
class DegenerateBookError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Viscosity on the extended non-negative reals.
struct Viscosity {
  double value = kInfinity;

  [[nodiscard]] bool is_infinite() const noexcept { return value == kInfinity; }
  friend bool operator==(const Viscosity&, const Viscosity&) = default;
};

enum class FlowRegime { Laminar, Transitional, Turbulent };

inline constexpr double kLaminarBelow = 2300.0;
inline constexpr double kTurbulentAbove = 2900.0;

/// Gaussian smoothing kernel with the 3D normalisation 1/(h^3 pi^{3/2}).
double kernel_weight(double r, double h);

/// m * (W(price - bid; h) + W(price - ask; h)).
double size_at(Price price, Anchors anchors, double m, double h);

double obstacle_density(double obstacle_size, double obstacle_price, double volume);
double fluid_density(double order_size, double order_price, double volume);

/// |obstacle_notional - order_notional| / (V * |v_T|); +inf when V * v_T == 0.
Viscosity viscosity(const InteractionOutcome& outcome);

/// min(order_notional / obstacle_notional, 1), or 0 without a collision.
double collision_ratio(const InteractionOutcome& outcome);

/// Reynolds number from realised notionals. Evaluated in the unreduced
/// notional form order * v_T^2 * l / (obstacle - order), so it is an
/// independent route to reynolds_closed_form.
double reynolds_tick(const InteractionOutcome& outcome);

/// v_T^2 * l * P / (1 - P). Rejects P outside [0, 1) and l <= 0.
double reynolds_closed_form(double price_change, double spread, double probability);

FlowRegime classify_flow(double reynolds);

std::string_view to_string(FlowRegime regime) noexcept;

}  // namespace fluidbook
