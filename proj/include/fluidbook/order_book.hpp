#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "fluidbook/physics.hpp"

namespace fluidbook {

enum class Side { Buy, Sell };

inline constexpr Side opposite(Side side) noexcept {
  return side == Side::Buy ? Side::Sell : Side::Buy;
}

struct PriceLevel {
  Price price;
  double size;
};

/// One incoming financial agent: [Side, Price, Size].
struct FluidAgent {
  Side side;
  Price price;
  double size;
};

struct BookParams {
  Price initial_bid = 3681;
  Price initial_spread = 1;
  double m = 2000.0;
  double h = 10.0;
};

/// Running account of every size change on one side of the book. The book
/// total always equals initial + passive + residual + regenerated - traded -
/// truncated (up to floating-point summation order).
struct VolumeLedger {
  double initial = 0.0;
  double passive_added = 0.0;
  double residual_posted = 0.0;
  double regenerated = 0.0;
  double traded = 0.0;
  double truncated = 0.0;

  [[nodiscard]] double expected_total() const noexcept {
    return initial + passive_added + residual_posted + regenerated - traded - truncated;
  }
  /// Sum of absolute flows, the natural scale for reconciliation error.
  [[nodiscard]] double gross_flow() const noexcept {
    return initial + passive_added + residual_posted + regenerated + traded + truncated;
  }
};

/// Ten-level-per-side limit order book with real-valued sizes, tick = 1.
///
/// Matching never walks the book: an order at the opposite best fills at most
/// that level. A full fill removes the level and regenerates one level at the
/// far end of that side. Any unfilled remainder rests at the traded price on
/// the agent's own side, becoming the new own-side best; the own side then
/// drops its farthest level to stay at ten.
class OrderBook {
 public:
  static constexpr std::size_t kDepth = 10;

  OrderBook(std::vector<PriceLevel> buys, std::vector<PriceLevel> sells, double m, double h);

  [[nodiscard]] Price bid() const noexcept { return buys_.front().price; }
  [[nodiscard]] Price ask() const noexcept { return sells_.front().price; }
  [[nodiscard]] Price spread() const noexcept { return ask() - bid(); }
  [[nodiscard]] double mid() const noexcept {
    return 0.5 * static_cast<double>(bid() + ask());
  }
  [[nodiscard]] Anchors anchors() const noexcept { return {bid(), ask()}; }
  [[nodiscard]] double mass() const noexcept { return m_; }
  [[nodiscard]] double smoothing_length() const noexcept { return h_; }

  /// Buy levels in descending price order, best first.
  [[nodiscard]] std::span<const PriceLevel> buy_levels() const noexcept { return buys_; }
  /// Sell levels in ascending price order, best first.
  [[nodiscard]] std::span<const PriceLevel> sell_levels() const noexcept { return sells_; }
  [[nodiscard]] std::span<const PriceLevel> levels(Side side) const noexcept {
    return side == Side::Buy ? buy_levels() : sell_levels();
  }

  [[nodiscard]] double total_size(Side side) const noexcept;
  [[nodiscard]] const VolumeLedger& ledger(Side side) const noexcept {
    return side == Side::Buy ? buy_ledger_ : sell_ledger_;
  }

  /// True when the agent's price lies in its sample space: own-side levels
  /// plus the opposite best quote.
  [[nodiscard]] bool admissible(const FluidAgent& agent) const noexcept;

  /// Applies the agent and reports the interaction. Throws
  /// std::invalid_argument for an inadmissible agent.
  InteractionOutcome apply(const FluidAgent& agent);

  /// Appends one level one tick beyond the current farthest price of `side`,
  /// sized by the kernel against the current anchors. Requires that side to
  /// hold kDepth - 1 levels.
  void regenerate_levels(Side side);

  /// Throws std::logic_error if the book is crossed, mis-sized, unsorted or
  /// holds a non-positive level.
  void check_invariants() const;

 private:
  std::vector<PriceLevel>& side_levels(Side side) noexcept {
    return side == Side::Buy ? buys_ : sells_;
  }
  VolumeLedger& side_ledger(Side side) noexcept {
    return side == Side::Buy ? buy_ledger_ : sell_ledger_;
  }
  PriceLevel* find_level(Side side, Price price) noexcept;

  std::vector<PriceLevel> buys_;
  std::vector<PriceLevel> sells_;
  double m_;
  double h_;
  VolumeLedger buy_ledger_;
  VolumeLedger sell_ledger_;
};

/// Builds the initial book: buy prices bid, bid-1, ..., bid-9 and sell prices
/// ask, ask+1, ..., ask+9 with ask = bid + spread, each sized by size_at
/// against the initial anchors.
OrderBook init_book(const BookParams& params);

/// Free-function form of OrderBook::apply.
InteractionOutcome apply_order(OrderBook& book, const FluidAgent& agent);

}  // namespace fluidbook
