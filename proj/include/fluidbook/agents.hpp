#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fluidbook/order_book.hpp"

namespace fluidbook {

/// Draws the per-tick fluid agent.
///
/// Side is Buy or Sell with probability 1/2 each. Given the side, the price is
/// the opposite best quote with probability P (a collision) and otherwise one
/// of the ten own-side levels, each with probability (1 - P) / 10. The size is
/// the kernel reconstruction at the drawn price, with no extra noise.
///
/// Uniform variates are built from the raw 64-bit engine output rather than
/// std::uniform_real_distribution so sequences are identical across standard
/// libraries.
class AgentSampler {
 public:
  static constexpr std::string_view kGenerator = "mt19937_64";

  AgentSampler(double collision_probability, double m, double h, std::uint64_t seed);

  [[nodiscard]] double collision_probability() const noexcept { return probability_; }

  Side sample_side();
  Price sample_price(const OrderBook& book, Side side);
  [[nodiscard]] double sample_size(Price price, const OrderBook& book) const;
  FluidAgent sample(const OrderBook& book);

 private:
  double uniform();

  double probability_;
  double m_;
  double h_;
  std::mt19937_64 rng_;
};

}  // namespace fluidbook
