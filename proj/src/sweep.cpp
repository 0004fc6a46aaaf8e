#include "fluidbook/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace fluidbook {

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  const auto n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = static_cast<double>(i);
    out[i] = (first * (n - k) + last * k) / n;
  }
  out.back() = last;
  return out;
}

std::vector<double> default_speed_axis() { return linspace(-5.0, 5.0, 41); }
std::vector<double> default_spread_axis() { return linspace(1.0, 20.0, 20); }
std::vector<double> default_probability_axis() { return linspace(0.0, 0.99, 100); }

namespace {

void require_open_probabilities(const std::vector<double>& probabilities) {
  for (double p : probabilities) {
    if (!(p >= 0.0 && p < 1.0)) {
      throw std::invalid_argument("surface: probability grid points must lie in [0, 1)");
    }
  }
}

}  // namespace

SurfaceGrid surface_speed(const std::vector<double>& speeds, const std::vector<double>& probabilities,
                          double spread) {
  require_open_probabilities(probabilities);
  SurfaceGrid g{SurfaceKind::Speed, speeds, probabilities, {}, {{"l", spread}}};
  g.values.reserve(speeds.size() * probabilities.size());
  for (double p : probabilities) {
    for (double v : speeds) g.values.push_back(reynolds_closed_form(v, spread, p));
  }
  return g;
}

SurfaceGrid surface_spread(const std::vector<double>& spreads,
                           const std::vector<double>& probabilities, double speed) {
  require_open_probabilities(probabilities);
  SurfaceGrid g{SurfaceKind::Spread, spreads, probabilities, {}, {{"v_T", speed}}};
  g.values.reserve(spreads.size() * probabilities.size());
  for (double p : probabilities) {
    for (double l : spreads) g.values.push_back(reynolds_closed_form(speed, l, p));
  }
  return g;
}

RunSummary summarize(const SeriesBundle& bundle, std::size_t config_index) {
  RunSummary s;
  s.config_index = config_index;
  s.seed = bundle.config.seed;
  s.config = bundle.config;
  if (!bundle.smoothed_mu.empty()) s.final_smoothed_mu = bundle.smoothed_mu.back();
  if (!bundle.smoothed_reynolds.empty()) s.final_smoothed_reynolds = bundle.smoothed_reynolds.back();
  s.max_raw_reynolds = max_reynolds(bundle);
  s.return_variance = return_variance(bundle);
  for (const auto& r : bundle.ticks) ++s.regime_counts[static_cast<std::size_t>(r.regime)];
  return s;
}

std::vector<RunSummary> batch_runs(const std::vector<SimConfig>& grid,
                                   const std::vector<std::uint64_t>& seeds, unsigned threads) {
  if (grid.empty()) throw std::invalid_argument("batch_runs: parameter grid is empty");
  const std::size_t cells = grid.size() * seeds.size();
  std::vector<RunSummary> out(cells);

  auto run_cell = [&](std::size_t i) {
    const std::size_t ci = i / seeds.size();
    SimConfig cfg = grid[ci];
    cfg.seed = seeds[i % seeds.size()];
    try {
      out[i] = summarize(run(cfg), ci);
    } catch (const std::exception& e) {
      out[i].config_index = ci;
      out[i].seed = cfg.seed;
      out[i].config = cfg;
      out[i].error = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells, 1)));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < cells; i = next++) run_cell(i);
      });
    }
  }
  return out;
}

std::vector<SimConfig> expand_grid(const SimConfig& base, const std::vector<double>& probabilities,
                                   const std::vector<Price>& spreads) {
  const std::vector<double> ps = probabilities.empty() ? std::vector<double>{base.collision_probability}
                                                       : probabilities;
  const std::vector<Price> ls = spreads.empty() ? std::vector<Price>{base.initial_spread} : spreads;
  std::vector<SimConfig> grid;
  for (double p : ps) {
    for (Price l : ls) {
      SimConfig c = base;
      c.collision_probability = p;
      c.initial_spread = l;
      grid.push_back(c);
    }
  }
  return grid;
}

}  // namespace fluidbook
