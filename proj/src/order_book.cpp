#include "fluidbook/order_book.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fluidbook {

OrderBook::OrderBook(std::vector<PriceLevel> buys, std::vector<PriceLevel> sells, double m,
                     double h)
    : buys_(std::move(buys)), sells_(std::move(sells)), m_(m), h_(h) {
  check_invariants();
  buy_ledger_.initial = total_size(Side::Buy);
  sell_ledger_.initial = total_size(Side::Sell);
}

double OrderBook::total_size(Side side) const noexcept {
  const auto lv = levels(side);
  return std::accumulate(lv.begin(), lv.end(), 0.0,
                         [](double acc, const PriceLevel& l) { return acc + l.size; });
}

PriceLevel* OrderBook::find_level(Side side, Price price) noexcept {
  auto& lv = side_levels(side);
  auto it = std::find_if(lv.begin(), lv.end(), [price](const PriceLevel& l) { return l.price == price; });
  return it == lv.end() ? nullptr : &*it;
}

bool OrderBook::admissible(const FluidAgent& agent) const noexcept {
  if (!(agent.size > 0.0) || !std::isfinite(agent.size)) return false;
  const Price opposite_best = agent.side == Side::Buy ? ask() : bid();
  if (agent.price == opposite_best) return true;
  const auto own = levels(agent.side);
  return std::any_of(own.begin(), own.end(),
                     [&](const PriceLevel& l) { return l.price == agent.price; });
}

InteractionOutcome OrderBook::apply(const FluidAgent& agent) {
  if (!admissible(agent)) {
    throw std::invalid_argument("apply_order: agent price " + std::to_string(agent.price) +
                                " is outside its admissible sample space");
  }
  const Side own = agent.side;
  const Side other = opposite(own);
  const double mid_before = mid();

  InteractionOutcome out;
  out.spread_before = spread();
  out.obstacle_notional = side_levels(other).front().size *
                          static_cast<double>(side_levels(other).front().price);
  out.order_notional = agent.size * static_cast<double>(agent.price);

  if (agent.price != side_levels(other).front().price) {
    find_level(own, agent.price)->size += agent.size;
    side_ledger(own).passive_added += agent.size;
    return out;
  }

  out.collision = true;
  auto& book_side = side_levels(other);
  PriceLevel& best = book_side.front();
  const double volume = std::min(agent.size, best.size);
  out.traded_volume = volume;
  side_ledger(other).traded += volume;

  if (volume < best.size) {
    best.size -= volume;
  } else {
    book_side.erase(book_side.begin());
    regenerate_levels(other);
    const double residual = agent.size - volume;
    if (residual > 0.0) {
      auto& own_side = side_levels(own);
      own_side.insert(own_side.begin(), PriceLevel{agent.price, residual});
      side_ledger(own).residual_posted += residual;
      side_ledger(own).truncated += own_side.back().size;
      own_side.pop_back();
    }
  }
  out.price_change = mid() - mid_before;
  return out;
}

void OrderBook::regenerate_levels(Side side) {
  auto& lv = side_levels(side);
  if (lv.size() != kDepth - 1) {
    throw std::logic_error("regenerate_levels: side must hold " + std::to_string(kDepth - 1) +
                           " levels, has " + std::to_string(lv.size()));
  }
  const Price far = side == Side::Buy ? lv.back().price - 1 : lv.back().price + 1;
  const double size = size_at(far, anchors(), m_, h_);
  lv.push_back(PriceLevel{far, size});
  side_ledger(side).regenerated += size;
}

void OrderBook::check_invariants() const {
  auto check_side = [](std::span<const PriceLevel> lv, bool descending, const char* name) {
    if (lv.size() != kDepth) {
      throw std::logic_error(std::string("order book: ") + name + " side holds " +
                             std::to_string(lv.size()) + " levels");
    }
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (!(lv[i].size > 0.0)) {
        throw std::logic_error(std::string("order book: non-positive size on ") + name + " side");
      }
      if (i > 0 && (descending ? lv[i].price >= lv[i - 1].price : lv[i].price <= lv[i - 1].price)) {
        throw std::logic_error(std::string("order book: ") + name + " side out of order");
      }
    }
  };
  check_side(buys_, true, "buy");
  check_side(sells_, false, "sell");
  if (bid() >= ask()) throw std::logic_error("order book: crossed book");
}

OrderBook init_book(const BookParams& params) {
  if (params.initial_bid < 1) throw std::invalid_argument("init_book: initial bid must be >= 1");
  if (params.initial_spread < 1) throw std::invalid_argument("init_book: spread must be >= 1");
  if (!(params.m > 0.0)) throw std::invalid_argument("init_book: mass m must be > 0");
  if (!(params.h > 0.0)) throw std::invalid_argument("init_book: smoothing length h must be > 0");
  if (params.initial_bid - static_cast<Price>(OrderBook::kDepth) + 1 < 1) {
    throw std::invalid_argument("init_book: initial bid leaves non-positive buy levels");
  }

  const Anchors anchors{params.initial_bid, params.initial_bid + params.initial_spread};
  std::vector<PriceLevel> buys;
  std::vector<PriceLevel> sells;
  for (std::size_t i = 0; i < OrderBook::kDepth; ++i) {
    const Price off = static_cast<Price>(i);
    buys.push_back({anchors.bid - off, size_at(anchors.bid - off, anchors, params.m, params.h)});
    sells.push_back({anchors.ask + off, size_at(anchors.ask + off, anchors, params.m, params.h)});
  }
  return OrderBook(std::move(buys), std::move(sells), params.m, params.h);
}

InteractionOutcome apply_order(OrderBook& book, const FluidAgent& agent) {
  return book.apply(agent);
}

}  // namespace fluidbook
