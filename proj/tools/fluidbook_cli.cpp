// fluidbook: simulate / batch / surface front end.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <type_traits>
#include <string>
#include <vector>

#include "fluidbook/config.hpp"
#include "fluidbook/engine.hpp"
#include "fluidbook/io.hpp"
#include "fluidbook/sweep.hpp"

namespace fs = std::filesystem;
using namespace fluidbook;

namespace {

struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> seed, steps, probability, spread, bid, mass, smoothing_length, window;
  std::string out_dir = ".";
  bool svg = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Config file of `key = value` lines");
    app->add_option("--seed", seed, "PRNG seed (u64)");
    app->add_option("--steps", steps, "Number of discrete steps");
    app->add_option("--collision-probability", probability, "Collision probability P in [0, 1]");
    app->add_option("--spread", spread, "Initial spread in ticks");
    app->add_option("--bid", bid, "Initial bid price in ticks");
    app->add_option("--mass", mass, "Agent mass hyperparameter m");
    app->add_option("--smoothing-length", smoothing_length, "Kernel smoothing length h");
    app->add_option("--window", window, "Moving-average window in ticks");
    app->add_option("--out", out_dir, "Output directory");
    app->add_flag("--svg", svg, "Also render SVG figures");
  }

  [[nodiscard]] SimConfig resolve() const {
    ConfigOverrides o;
    auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) o[key] = *v;
    };
    put("seed", seed);
    put("steps", steps);
    put("collision_probability", probability);
    put("initial_spread", spread);
    put("initial_bid", bid);
    put("m", mass);
    put("h", smoothing_length);
    put("smoothing_window", window);
    return parse_config(config_path, o);
  }
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      if constexpr (std::is_same_v<T, double>) out.push_back(std::stod(item));
      else out.push_back(static_cast<T>(std::stoll(item)));
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "cannot parse '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit-order-book flow simulator: viscosity and Reynolds-number analogs"};
  app.require_subcommand(1);

  ConfigFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and write series.csv");
  sim_flags.attach(simulate);

  ConfigFlags batch_flags;
  unsigned seed_count = 20;
  std::string probabilities = "0.99,0.15";
  std::string spreads;
  unsigned threads = 0;
  auto* batch = app.add_subcommand("batch", "Run a grid of configs x seeds and write batch.csv");
  batch_flags.attach(batch);
  batch->add_option("--seeds", seed_count, "Number of seeds, starting at --seed (default 1)");
  batch->add_option("--probabilities", probabilities, "Comma-separated collision probabilities");
  batch->add_option("--spreads", spreads, "Comma-separated initial spreads");
  batch->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::string kind = "both";
  double fixed_spread = 1.0;
  double fixed_speed = 1.0;
  std::string surface_out = ".";
  bool surface_svg = false;
  auto* surface = app.add_subcommand("surface", "Tabulate closed-form Reynolds surfaces");
  surface->add_option("--kind", kind, "speed, spread or both")
      ->check(CLI::IsMember({"speed", "spread", "both"}));
  surface->add_option("--spread", fixed_spread, "Spread l held fixed on the speed surface");
  surface->add_option("--speed", fixed_speed, "Speed v_T held fixed on the spread surface");
  surface->add_option("--out", surface_out, "Output directory");
  surface->add_flag("--svg", surface_svg, "Also render SVG heatmaps");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const SimConfig cfg = sim_flags.resolve();
      const SeriesBundle bundle = run(cfg);
      fs::create_directories(sim_flags.out_dir);
      write_series_csv(bundle, fs::path(sim_flags.out_dir) / "series.csv");
      if (sim_flags.svg) render_svg(bundle, fs::path(sim_flags.out_dir) / "series.svg");
      std::cout << "wrote " << bundle.ticks.size() << " ticks to "
                << (fs::path(sim_flags.out_dir) / "series.csv").string() << '\n';
    } else if (*batch) {
      const SimConfig base = batch_flags.resolve();
      const auto grid = expand_grid(base, parse_list<double>(probabilities, "--probabilities"),
                                    parse_list<Price>(spreads, "--spreads"));
      std::vector<std::uint64_t> seeds;
      for (unsigned i = 0; i < seed_count; ++i) seeds.push_back(base.seed + i);
      const auto summaries = batch_runs(grid, seeds, threads);
      fs::create_directories(batch_flags.out_dir);
      write_summary_csv(summaries, base, fs::path(batch_flags.out_dir) / "batch.csv");
      std::size_t failed = 0;
      for (const auto& s : summaries) failed += s.error.has_value();
      std::cout << "wrote " << summaries.size() << " summaries (" << failed << " failed)\n";
    } else if (*surface) {
      fs::create_directories(surface_out);
      const auto ps = default_probability_axis();
      if (kind == "speed" || kind == "both") {
        const auto g = surface_speed(default_speed_axis(), ps, fixed_spread);
        write_grid_csv(g, fs::path(surface_out) / "surface_speed.csv");
        if (surface_svg) render_svg(g, fs::path(surface_out) / "surface_speed.svg");
      }
      if (kind == "spread" || kind == "both") {
        const auto g = surface_spread(default_spread_axis(), ps, fixed_speed);
        write_grid_csv(g, fs::path(surface_out) / "surface_spread.csv");
        if (surface_svg) render_svg(g, fs::path(surface_out) / "surface_spread.svg");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
