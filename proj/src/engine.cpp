#include "fluidbook/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fluidbook {

BookParams book_params(const SimConfig& config) {
  return BookParams{config.initial_bid, config.initial_spread, config.m, config.h};
}

TickRecord step(OrderBook& book, AgentSampler& sampler, const SimConfig& config, std::size_t t) {
  const double mid_before = book.mid();
  const FluidAgent agent = sampler.sample(book);
  const Price obstacle_price = agent.side == Side::Buy ? book.ask() : book.bid();
  const double obstacle_size = book.levels(opposite(agent.side)).front().size;

  const InteractionOutcome outcome = book.apply(agent);

  TickRecord rec;
  rec.t = t;
  rec.bid = book.bid();
  rec.ask = book.ask();
  rec.mid = book.mid();
  rec.ret = (rec.mid - mid_before) / mid_before;
  rec.price_change = outcome.price_change;
  rec.spread = outcome.spread_before;
  rec.traded_volume = outcome.traded_volume;
  rec.rho_obstacle = obstacle_density(obstacle_size, static_cast<double>(obstacle_price),
                                      outcome.traded_volume);
  rec.rho_fluid = fluid_density(agent.size, static_cast<double>(agent.price), outcome.traded_volume);
  rec.mu = viscosity(outcome);
  rec.p_hat = collision_ratio(outcome);
  // P = 1 makes the odds infinite; only a moving quote sees them.
  if (config.collision_probability < 1.0) {
    rec.reynolds = reynolds_closed_form(outcome.price_change,
                                        static_cast<double>(outcome.spread_before),
                                        config.collision_probability);
  } else {
    rec.reynolds = outcome.price_change == 0.0 ? 0.0 : kInfinity;
  }
  rec.reynolds_realized = reynolds_tick(outcome);
  rec.regime = classify_flow(rec.reynolds);
  return rec;
}

SeriesBundle run(const SimConfig& config, const StepObserver& observer) {
  config.validate();
  OrderBook book = init_book(book_params(config));
  AgentSampler sampler(config.collision_probability, config.m, config.h, config.seed);

  SeriesBundle bundle;
  bundle.config = config;
  bundle.generator = std::string(AgentSampler::kGenerator);
  bundle.version = std::string(kToolVersion);
  bundle.ticks.reserve(static_cast<std::size_t>(config.steps));
  for (std::size_t t = 0; t < static_cast<std::size_t>(config.steps); ++t) {
    bundle.ticks.push_back(step(book, sampler, config, t));
    if (observer) observer(book, bundle.ticks.back());
  }

  std::vector<double> mu(bundle.ticks.size());
  std::vector<double> re(bundle.ticks.size());
  std::transform(bundle.ticks.begin(), bundle.ticks.end(), mu.begin(),
                 [](const TickRecord& r) { return r.mu.value; });
  std::transform(bundle.ticks.begin(), bundle.ticks.end(), re.begin(),
                 [](const TickRecord& r) { return r.reynolds; });
  const auto window = static_cast<std::size_t>(config.smoothing_window);
  bundle.smoothed_mu = smooth_viscosity(mu, config.viscosity_clamp, window);
  bundle.smoothed_reynolds = smooth_series(re, window);

  const auto buys = book.buy_levels();
  const auto sells = book.sell_levels();
  bundle.final_buys.assign(buys.begin(), buys.end());
  bundle.final_sells.assign(sells.begin(), sells.end());
  return bundle;
}

std::vector<double> smooth_series(std::span<const double> raw, std::size_t window) {
  if (window < 1) throw std::invalid_argument("smooth_series: window must be >= 1");
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    // Summed per window rather than as a running total so each output
    // depends only on its own window.
    const double sum = std::accumulate(raw.begin() + static_cast<std::ptrdiff_t>(first),
                                       raw.begin() + static_cast<std::ptrdiff_t>(i) + 1, 0.0);
    out[i] = sum / static_cast<double>(i + 1 - first);
  }
  return out;
}

std::vector<double> smooth_viscosity(std::span<const double> raw, double clamp, std::size_t window) {
  if (window < 1) throw std::invalid_argument("smooth_viscosity: window must be >= 1");
  double max_finite = 0.0;
  for (double v : raw) {
    if (std::isfinite(v)) max_finite = std::max(max_finite, v);
  }
  std::vector<double> normalised(raw.size());
  std::transform(raw.begin(), raw.end(), normalised.begin(), [&](double v) {
    if (!std::isfinite(v)) return clamp;
    return max_finite > 0.0 ? v / max_finite : 0.0;
  });
  return smooth_series(normalised, window);
}

double return_variance(const SeriesBundle& bundle) {
  const auto& ticks = bundle.ticks;
  if (ticks.empty()) return 0.0;
  double mean = 0.0;
  for (const auto& r : ticks) mean += r.ret;
  mean /= static_cast<double>(ticks.size());
  double var = 0.0;
  for (const auto& r : ticks) var += (r.ret - mean) * (r.ret - mean);
  return var / static_cast<double>(ticks.size());
}

double max_reynolds(const SeriesBundle& bundle) {
  double best = 0.0;
  for (const auto& r : bundle.ticks) best = std::max(best, r.reynolds);
  return best;
}

}  // namespace fluidbook
