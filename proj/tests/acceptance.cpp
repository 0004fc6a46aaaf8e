// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// usage: fluidbook_acceptance <path-to-fluidbook-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fluidbook/agents.hpp"
#include "fluidbook/engine.hpp"
#include "fluidbook/physics.hpp"
#include "fluidbook/sweep.hpp"
#include "oracles.hpp"

using namespace fluidbook;
namespace fs = std::filesystem;

namespace {

constexpr int kSeeds = 20;

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_err(double got, double want) {
  if (got == want) return 0.0;
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Book-invariant and volume-ledger checks shared by every simulated run.
struct BookAudit {
  std::size_t steps = 0;
  std::size_t violations = 0;
  double worst_ledger_error = 0.0;
  std::string first_violation;

  StepObserver observer() {
    return [this](const OrderBook& book, const TickRecord&) {
      ++steps;
      try {
        book.check_invariants();
      } catch (const std::exception& e) {
        if (violations++ == 0) first_violation = e.what();
      }
      for (Side s : {Side::Buy, Side::Sell}) {
        const auto& l = book.ledger(s);
        const double err = std::abs(book.total_size(s) - l.expected_total()) / l.gross_flow();
        worst_ledger_error = std::max(worst_ledger_error, err);
      }
    };
  }
};

struct RunStats {
  double mean_final_mu = 0.0;
  double mean_final_reynolds = 0.0;
  double mean_max_reynolds = 0.0;
  double mean_return_variance = 0.0;
  double min_return_variance = kInfinity;
  double seconds = 0.0;
};

RunStats run_seeds(SimConfig cfg, BookAudit& audit) {
  RunStats st;
  const auto t0 = std::chrono::steady_clock::now();
  for (int s = 1; s <= kSeeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto b = run(cfg, audit.observer());
    st.mean_final_mu += b.smoothed_mu.back() / kSeeds;
    st.mean_final_reynolds += b.smoothed_reynolds.back() / kSeeds;
    st.mean_max_reynolds += max_reynolds(b) / kSeeds;
    const double var = return_variance(b);
    st.mean_return_variance += var / kSeeds;
    st.min_return_variance = std::min(st.min_return_variance, var);
  }
  st.seconds = seconds_since(t0);
  return st;
}

SimConfig reference_config(double probability, Price spread) {
  SimConfig c;
  c.initial_bid = 3681;
  c.initial_spread = spread;
  c.m = 2000.0;
  c.h = 10.0;
  c.collision_probability = probability;
  c.steps = 450;
  return c;
}

Criterion algebraic_identity() {
  Criterion c{1, "reynolds_tick == reynolds_closed_form on 1e4 random outcomes"};
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  constexpr int n = 10000;
  for (int i = 0; i < n; ++i) {
    InteractionOutcome o;
    o.collision = true;
    o.obstacle_notional = 1.0 + 1e4 * unit(rng);
    o.order_notional = o.obstacle_notional * unit(rng) * (1.0 - 1e-9);
    o.traded_volume = 0.01 + unit(rng);
    o.price_change = (unit(rng) - 0.5) * 50.0;
    o.spread_before = 1 + static_cast<Price>(unit(rng) * 100);
    const double p = collision_ratio(o);
    if (!(p < 1.0)) continue;
    worst = std::max(worst, rel_err(reynolds_tick(o),
                                    reynolds_closed_form(o.price_change,
                                                         static_cast<double>(o.spread_before), p)));
  }
  const double secs = seconds_since(t0);
  c.expect(worst <= 1e-12, "worst relative error " + fmt(worst));
  c.expect(secs < 1.0, "runtime " + fmt(secs) + " s");
  c.detail += (c.detail.empty() ? "" : "; ") + std::string("max rel err ") + fmt(worst) + ", " + fmt(secs) + " s";
  return c;
}

Criterion closed_form_pins() {
  Criterion c{2, "closed-form pins, even in v_T, linear in l"};
  c.expect(reynolds_closed_form(1, 1, 0.5) == 1.0, "N_R(1,1,0.5) != 1");
  // 0.99 has no binary representation; the bound is the input's own
  // representation error propagated through dN/dP = v^2 l / (1-P)^2, plus a
  // few ulps of arithmetic.
  {
    const double p = 0.99;
    const long double dp = std::abs(0.99L - static_cast<long double>(p));
    const double bound = static_cast<double>(20.0L * dp / ((1.0L - p) * (1.0L - p))) +
                         4 * 1980.0 * std::numeric_limits<double>::epsilon();
    const double got = reynolds_closed_form(2, 5, p);
    c.expect(std::abs(got - 1980.0) <= bound,
             "N_R(2,5,0.99) = " + fmt(got) + ", off by " + fmt(got - 1980.0));
  }
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_linear = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const double v = (unit(rng) - 0.5) * 20;
    const double l = 0.5 + 30 * unit(rng);
    const double p = 0.999 * unit(rng);
    const double scale = 1.0 + std::floor(19 * unit(rng));
    c.expect(reynolds_closed_form(-v, l, p) == reynolds_closed_form(v, l, p), "not even at v=" + fmt(v));
    worst_linear = std::max(worst_linear, rel_err(reynolds_closed_form(v, scale * l, p),
                                                  scale * reynolds_closed_form(v, l, p)));
  }
  c.expect(worst_linear <= 4 * std::numeric_limits<double>::epsilon(),
           "linearity error " + fmt(worst_linear));
  return c;
}

Criterion kernel_pin() {
  Criterion c{3, "kernel constant and 1D quadrature"};
  const double want = 1.0 / (1000.0 * std::pow(std::numbers::pi, 1.5));
  c.expect(rel_err(kernel_weight(0, 10), want) <= 1e-12, "W(0;10) = " + fmt(kernel_weight(0, 10)));
  for (double h : {1.0, 10.0, 25.0}) {
    const double q = oracle::trapezoid([h](double r) { return kernel_weight(r, h); }, -10 * h, 10 * h, 2000);
    const double exact = 1.0 / (h * h * std::numbers::pi);
    c.expect(rel_err(q, exact) <= 1e-6, "quadrature h=" + fmt(h) + " rel err " + fmt(rel_err(q, exact)));
  }
  return c;
}

Criterion sampling() {
  Criterion c{4, "sampling frequencies within 3 sigma"};
  const OrderBook book = init_book({3681, 1, 2000.0, 10.0});
  constexpr int n = 100000;
  std::uint64_t seed = 1000;
  for (double p : {0.15, 0.5, 0.99}) {
    for (Side side : {Side::Buy, Side::Sell}) {
      AgentSampler s(p, 2000.0, 10.0, ++seed);
      std::map<Price, int> counts;
      for (int i = 0; i < n; ++i) ++counts[s.sample_price(book, side)];
      const Price hit = side == Side::Buy ? book.ask() : book.bid();
      const double f = counts[hit] / double(n);
      c.expect(std::abs(f - p) <= oracle::three_sigma(p, n),
               "P=" + fmt(p) + " collision freq " + fmt(f));
      const double q = (1.0 - p) / 10.0;
      for (const auto& lvl : book.levels(side)) {
        const double fl = counts[lvl.price] / double(n);
        c.expect(std::abs(fl - q) <= oracle::three_sigma(q, n),
                 "P=" + fmt(p) + " level " + std::to_string(lvl.price) + " freq " + fmt(fl));
      }
    }
    AgentSampler s(p, 2000.0, 10.0, ++seed);
    int buys = 0;
    for (int i = 0; i < n; ++i) buys += s.sample_side() == Side::Buy;
    c.expect(std::abs(buys / double(n) - 0.5) <= oracle::three_sigma(0.5, n),
             "buy fraction " + fmt(buys / double(n)));
  }
  return c;
}

Criterion high_collision(const RunStats& st) {
  Criterion c{5, "P=0.99 spread 1: mu -> 0, N_R in [1e1, 1e4], rough prices"};
  c.expect(st.mean_final_mu < 0.1, "mean final smoothed mu " + fmt(st.mean_final_mu));
  c.expect(st.mean_final_reynolds >= 1e1 && st.mean_final_reynolds <= 1e4,
           "mean final smoothed N_R " + fmt(st.mean_final_reynolds));
  c.expect(st.min_return_variance > 0.0, "zero return variance on some seed");
  c.expect(st.seconds < 2.0, "runtime " + fmt(st.seconds) + " s");
  c.detail += (c.detail.empty() ? "" : "; ") + std::string("mu ") + fmt(st.mean_final_mu) + ", N_R " +
              fmt(st.mean_final_reynolds) + ", " + fmt(st.seconds) + " s";
  return c;
}

Criterion low_collision(const RunStats& st, const RunStats& high) {
  Criterion c{6, "P=0.15 spread 1: mu -> clamp, N_R -> 0, calmer prices"};
  c.expect(st.mean_final_mu > 1.5, "mean final smoothed mu " + fmt(st.mean_final_mu));
  c.expect(st.mean_final_reynolds < 1.0, "mean final smoothed N_R " + fmt(st.mean_final_reynolds));
  c.expect(st.mean_return_variance < high.mean_return_variance,
           "return variance " + fmt(st.mean_return_variance) + " vs " + fmt(high.mean_return_variance));
  c.detail += (c.detail.empty() ? "" : "; ") + std::string("mu ") + fmt(st.mean_final_mu) + ", N_R " +
              fmt(st.mean_final_reynolds);
  return c;
}

Criterion spread_catalysis(const RunStats& wide, const RunStats& narrow) {
  Criterion c{7, "spread 20 raises max raw N_R over spread 1"};
  c.expect(wide.mean_max_reynolds > narrow.mean_max_reynolds,
           "mean max N_R " + fmt(wide.mean_max_reynolds) + " vs " + fmt(narrow.mean_max_reynolds));
  for (double v : {0.5, 1.0, 3.25}) {
    for (double p : {0.15, 0.5, 0.99}) {
      c.expect(reynolds_closed_form(v, 20, p) == 20 * reynolds_closed_form(v, 1, p),
               "closed form does not scale by 20 at v=" + fmt(v) + " P=" + fmt(p));
    }
  }
  c.detail += (c.detail.empty() ? "" : "; ") + std::string("max N_R ") + fmt(wide.mean_max_reynolds) +
              " vs " + fmt(narrow.mean_max_reynolds);
  return c;
}

Criterion surfaces() {
  Criterion c{8, "surface symmetry, maxima and zero slices"};
  const auto ps = default_probability_axis();
  const auto speed = surface_speed(default_speed_axis(), ps, 1.0);
  const std::size_t nx = speed.x_axis.size();
  const std::size_t ny = speed.y_axis.size();
  const double top = *std::max_element(speed.values.begin(), speed.values.end());
  for (std::size_t r = 0; r < ny; ++r) {
    for (std::size_t col = 0; col < nx; ++col) {
      c.expect(speed.at(r, col) == speed.at(r, nx - 1 - col), "speed surface asymmetric");
      if (speed.at(r, col) == top) {
        c.expect(r == ny - 1 && (col == 0 || col == nx - 1), "speed maximum off the corners");
      }
      if (speed.y_axis[r] == 0.0 || speed.x_axis[col] == 0.0) {
        c.expect(speed.at(r, col) == 0.0, "speed surface nonzero on a zero slice");
      }
    }
  }
  c.expect(speed.at(ny - 1, 0) == top && speed.at(ny - 1, nx - 1) == top, "corners are not maxima");

  const auto spread = surface_spread(default_spread_axis(), ps, 1.0);
  const auto best = std::max_element(spread.values.begin(), spread.values.end());
  c.expect(std::count(spread.values.begin(), spread.values.end(), *best) == 1, "spread maximum not unique");
  c.expect(spread.at(spread.y_axis.size() - 1, spread.x_axis.size() - 1) == *best,
           "spread maximum not at (l max, P max)");
  for (std::size_t col = 0; col < spread.x_axis.size(); ++col) {
    c.expect(spread.at(0, col) == 0.0, "spread surface nonzero at P=0");
  }
  const auto still = surface_spread(default_spread_axis(), ps, 0.0);
  c.expect(std::all_of(still.values.begin(), still.values.end(), [](double v) { return v == 0.0; }),
           "v_T=0 spread surface nonzero");
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Criterion determinism(const std::string& cli) {
  Criterion c{9, "simulate twice -> byte-identical CSV"};
  const fs::path a = fs::current_path() / "acceptance_run_a";
  const fs::path b = fs::current_path() / "acceptance_run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  for (const auto& dir : {a, b}) {
    const std::string cmd = "\"" + cli + "\" simulate --seed 12345 --out \"" + dir.string() + "\" > /dev/null";
    c.expect(std::system(cmd.c_str()) == 0, "simulate failed: " + cmd);
  }
  const auto fa = slurp(a / "series.csv");
  const auto fb = slurp(b / "series.csv");
  c.expect(!fa.empty(), "empty output");
  c.expect(fa == fb, "CSV files differ");
  return c;
}

Criterion book_invariants(const BookAudit& audit) {
  Criterion c{10, "book never crossed, 10 levels per side, volume ledger reconciles"};
  c.expect(audit.steps > 0, "no steps audited");
  c.expect(audit.violations == 0, std::to_string(audit.violations) + " violations, first: " + audit.first_violation);
  c.expect(audit.worst_ledger_error <= 1e-12, "ledger error " + fmt(audit.worst_ledger_error));
  c.detail += (c.detail.empty() ? "" : "; ") + std::to_string(audit.steps) + " steps audited, ledger err " +
              fmt(audit.worst_ledger_error);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <fluidbook-cli>\n", argv[0]);
    return 2;
  }
  BookAudit audit;
  const RunStats high = run_seeds(reference_config(0.99, 1), audit);
  const RunStats low = run_seeds(reference_config(0.15, 1), audit);
  const RunStats wide = run_seeds(reference_config(0.99, 20), audit);

  std::vector<Criterion> results;
  results.push_back(algebraic_identity());
  results.push_back(closed_form_pins());
  results.push_back(kernel_pin());
  results.push_back(sampling());
  results.push_back(high_collision(high));
  results.push_back(low_collision(low, high));
  results.push_back(spread_catalysis(wide, high));
  results.push_back(surfaces());
  results.push_back(determinism(argv[1]));
  results.push_back(book_invariants(audit));

  int failed = 0;
  for (const auto& c : results) {
    std::printf("[%s] AC%-2d %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    failed += !c.pass;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
