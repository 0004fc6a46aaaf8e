#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fluidbook/io.hpp"

namespace fluidbook {

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 260.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range finite_range(std::initializer_list<const std::vector<double>*> series) {
  Range r{kInfinity, -kInfinity};
  for (const auto* s : series) {
    for (double v : *s) {
      if (!std::isfinite(v)) continue;
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
  }
  if (r.lo > r.hi) return {0.0, 1.0};
  if (r.lo == r.hi) return {r.lo - 0.5, r.hi + 0.5};
  return r;
}

class Panel {
 public:
  Panel(std::ostringstream& out, char letter, const std::string& title, double x, double y)
      : out_(out), x_(x), y_(y) {
    out_ << "<g class=\"panel\" id=\"panel-" << letter << "\" transform=\"translate(" << num(x_)
         << ',' << num(y_) << ")\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"" << num(kPanelW) << "\" height=\"" << num(kPanelH)
         << "\" fill=\"white\" stroke=\"#999\"/>\n"
         << "<text x=\"8\" y=\"18\" font-size=\"13\">(" << letter << ") " << title << "</text>\n";
  }
  ~Panel() { out_ << "</g>\n"; }
  Panel(const Panel&) = delete;
  Panel& operator=(const Panel&) = delete;

  void placeholder() {
    out_ << "<text x=\"" << num(kPanelW / 2) << "\" y=\"" << num(kPanelH / 2)
         << "\" text-anchor=\"middle\" fill=\"#888\">no data</text>\n";
  }

  void line(const std::vector<double>& ys, Range range, const char* colour) {
    if (ys.empty()) return;
    const double w = kPanelW - 2 * kMargin;
    const double h = kPanelH - 2 * kMargin;
    const double n = std::max<double>(1.0, static_cast<double>(ys.size() - 1));
    out_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < ys.size(); ++i) {
      double v = ys[i];
      if (!std::isfinite(v)) v = v > 0 ? range.hi : range.lo;
      const double px = kMargin + w * static_cast<double>(i) / n;
      const double py = kMargin + h * (1.0 - (v - range.lo) / (range.hi - range.lo));
      out_ << num(px) << ',' << num(py) << ' ';
    }
    out_ << "\"/>\n";
  }

  void axis_labels(Range range) {
    out_ << "<text x=\"4\" y=\"" << num(kMargin) << "\" font-size=\"10\">" << num(range.hi)
         << "</text>\n<text x=\"4\" y=\"" << num(kPanelH - kMargin) << "\" font-size=\"10\">"
         << num(range.lo) << "</text>\n";
  }

  void book(const std::vector<PriceLevel>& buys, const std::vector<PriceLevel>& sells) {
    if (buys.empty() && sells.empty()) {
      placeholder();
      return;
    }
    double max_size = 0.0;
    Price lo = buys.empty() ? sells.front().price : buys.back().price;
    Price hi = sells.empty() ? buys.front().price : sells.back().price;
    for (const auto& l : buys) max_size = std::max(max_size, l.size);
    for (const auto& l : sells) max_size = std::max(max_size, l.size);
    const double w = kPanelW - 2 * kMargin;
    const double h = kPanelH - 2 * kMargin;
    const double span = static_cast<double>(hi - lo + 1);
    auto bar = [&](const PriceLevel& l, const char* colour) {
      const double y = kMargin + h * (1.0 - static_cast<double>(l.price - lo + 1) / span);
      out_ << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(y) << "\" width=\""
           << num(w * l.size / max_size) << "\" height=\"" << num(std::max(1.0, h / span - 1))
           << "\" fill=\"" << colour << "\"/>\n";
    };
    for (const auto& l : buys) bar(l, "black");
    for (const auto& l : sells) bar(l, "grey");
  }

 private:
  std::ostringstream& out_;
  double x_;
  double y_;
};

std::string open_svg(double w, double h) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  return out.str();
}

}  // namespace

std::string series_svg(const SeriesBundle& bundle) {
  std::ostringstream out;
  out << open_svg(3 * kPanelW + 40, 2 * kPanelH + 30);

  std::vector<double> mid, bid, ask, ret;
  for (const auto& r : bundle.ticks) {
    mid.push_back(r.mid);
    bid.push_back(static_cast<double>(r.bid));
    ask.push_back(static_cast<double>(r.ask));
    ret.push_back(r.ret);
  }
  auto series_panel = [&](char letter, const std::string& title,
                          std::initializer_list<std::pair<const std::vector<double>*, const char*>> lines,
                          double x, double y) {
    Panel p(out, letter, title, x, y);
    if (bundle.ticks.empty()) {
      p.placeholder();
      return;
    }
    Range range{kInfinity, -kInfinity};
    for (const auto& [s, c] : lines) {
      const Range r = finite_range({s});
      range.lo = std::min(range.lo, r.lo);
      range.hi = std::max(range.hi, r.hi);
    }
    p.axis_labels(range);
    for (const auto& [s, c] : lines) p.line(*s, range, c);
  };

  {
    Panel p(out, 'a', "Trading order book", 10, 10);
    p.book(bundle.final_buys, bundle.final_sells);
  }
  series_panel('b', "Price motion", {{&mid, "black"}}, 20 + kPanelW, 10);
  series_panel('c', "Smoothed viscosity", {{&bundle.smoothed_mu, "black"}}, 30 + 2 * kPanelW, 10);
  series_panel('d', "Bid / ask motion", {{&bid, "black"}, {&ask, "grey"}}, 10, 20 + kPanelH);
  series_panel('e', "Returns", {{&ret, "black"}}, 20 + kPanelW, 20 + kPanelH);
  series_panel('f', "Smoothed Reynolds number", {{&bundle.smoothed_reynolds, "black"}},
               30 + 2 * kPanelW, 20 + kPanelH);
  out << "</svg>\n";
  return out.str();
}

std::string grid_svg(const SurfaceGrid& grid) {
  const double cell = 8.0;
  const double w = std::max(200.0, cell * static_cast<double>(grid.x_axis.size()) + 2 * kMargin);
  const double h = std::max(120.0, cell * static_cast<double>(grid.y_axis.size()) + 2 * kMargin);
  std::ostringstream out;
  out << open_svg(w, h);
  out << "<text x=\"8\" y=\"18\" font-size=\"13\">N_R over (" << grid.x_name()
      << ", P)</text>\n";
  if (grid.values.empty()) {
    out << "<text x=\"" << num(w / 2) << "\" y=\"" << num(h / 2)
        << "\" text-anchor=\"middle\" fill=\"#888\">no data</text>\n</svg>\n";
    return out.str();
  }
  const double top = *std::max_element(grid.values.begin(), grid.values.end());
  for (std::size_t row = 0; row < grid.y_axis.size(); ++row) {
    for (std::size_t col = 0; col < grid.x_axis.size(); ++col) {
      const double t = top > 0.0 ? grid.at(row, col) / top : 0.0;
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      // Highest P at the top of the image.
      const double y = kMargin + cell * static_cast<double>(grid.y_axis.size() - 1 - row);
      out << "<rect x=\"" << num(kMargin + cell * static_cast<double>(col)) << "\" y=\"" << num(y)
          << "\" width=\"" << num(cell) << "\" height=\"" << num(cell) << "\" fill=\"rgb(255,"
          << shade << ',' << shade << ")\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void render_svg(const SeriesBundle& bundle, const std::filesystem::path& path) {
  write_file_atomic(path, series_svg(bundle));
}

void render_svg(const SurfaceGrid& grid, const std::filesystem::path& path) {
  write_file_atomic(path, grid_svg(grid));
}

}  // namespace fluidbook
