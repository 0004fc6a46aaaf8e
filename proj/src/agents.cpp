#include "fluidbook/agents.hpp"

#include <algorithm>
#include <stdexcept>

namespace fluidbook {

AgentSampler::AgentSampler(double collision_probability, double m, double h, std::uint64_t seed)
    : probability_(collision_probability), m_(m), h_(h), rng_(seed) {
  if (!(collision_probability >= 0.0 && collision_probability <= 1.0)) {
    throw std::invalid_argument("AgentSampler: collision probability must lie in [0, 1]");
  }
  if (!(m > 0.0) || !(h > 0.0)) throw std::invalid_argument("AgentSampler: m and h must be > 0");
}

double AgentSampler::uniform() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Side AgentSampler::sample_side() { return uniform() < 0.5 ? Side::Buy : Side::Sell; }

Price AgentSampler::sample_price(const OrderBook& book, Side side) {
  const double u = uniform();
  if (u < probability_) return side == Side::Buy ? book.ask() : book.bid();
  const auto own = book.levels(side);
  const double scaled = (u - probability_) / (1.0 - probability_) * static_cast<double>(own.size());
  const auto idx = std::min(static_cast<std::size_t>(scaled), own.size() - 1);
  return own[idx].price;
}

double AgentSampler::sample_size(Price price, const OrderBook& book) const {
  return size_at(price, book.anchors(), m_, h_);
}

FluidAgent AgentSampler::sample(const OrderBook& book) {
  const Side side = sample_side();
  const Price price = sample_price(book, side);
  return FluidAgent{side, price, sample_size(price, book)};
}

}  // namespace fluidbook
