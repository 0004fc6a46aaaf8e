#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "fluidbook/io.hpp"

namespace fluidbook {

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename '" + tmp.string() + "' to '" + path.string() +
                             "': " + ec.message());
  }
}

std::string metadata_header(const SimConfig& config, std::string_view command) {
  std::ostringstream out;
  out << "# tool = fluidbook\n"
      << "# version = " << kToolVersion << '\n'
      << "# command = " << command << '\n'
      << "# generator = " << AgentSampler::kGenerator << '\n';
  std::istringstream lines(format_config(config));
  for (std::string line; std::getline(lines, line);) out << "# config: " << line << '\n';
  return out.str();
}

SimConfig read_header_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  constexpr std::string_view prefix = "# config: ";
  std::string text;
  for (std::string line; std::getline(in, line) && line.starts_with('#');) {
    if (line.starts_with(prefix)) text += line.substr(prefix.size()) + '\n';
  }
  return parse_config_text(text);
}

std::string series_csv(const SeriesBundle& bundle) {
  std::ostringstream out;
  out << metadata_header(bundle.config, "simulate");
  out << "t,bid,ask,mid,return,v_T,l,V,p_hat,mu_raw,mu_smoothed,reynolds_raw,reynolds_smoothed,"
         "regime,reynolds_realized\n";
  for (std::size_t i = 0; i < bundle.ticks.size(); ++i) {
    const TickRecord& r = bundle.ticks[i];
    out << r.t << ',' << r.bid << ',' << r.ask << ',' << format_real(r.mid) << ','
        << format_real(r.ret) << ',' << format_real(r.price_change) << ',' << r.spread << ','
        << format_real(r.traded_volume) << ',' << format_real(r.p_hat) << ','
        << format_real(r.mu.value) << ',' << format_real(bundle.smoothed_mu[i]) << ','
        << format_real(r.reynolds) << ',' << format_real(bundle.smoothed_reynolds[i]) << ','
        << to_string(r.regime) << ',' << format_real(r.reynolds_realized) << '\n';
  }
  return out.str();
}

std::string grid_csv(const SurfaceGrid& grid) {
  std::ostringstream out;
  out << "# tool = fluidbook\n"
      << "# version = " << kToolVersion << '\n'
      << "# command = surface\n"
      << "# surface = " << (grid.kind == SurfaceKind::Speed ? "speed" : "spread") << '\n';
  for (const auto& [k, v] : grid.fixed_params) out << "# fixed: " << k << " = " << format_real(v) << '\n';
  out << grid.x_name() << ",P,N_R\n";
  for (std::size_t row = 0; row < grid.y_axis.size(); ++row) {
    for (std::size_t col = 0; col < grid.x_axis.size(); ++col) {
      out << format_real(grid.x_axis[col]) << ',' << format_real(grid.y_axis[row]) << ','
          << format_real(grid.at(row, col)) << '\n';
    }
  }
  return out.str();
}

std::string summary_csv(const std::vector<RunSummary>& summaries, const SimConfig& base) {
  std::ostringstream out;
  out << metadata_header(base, "batch");
  out << "config_index,seed,collision_probability,initial_spread,final_mu_smoothed,"
         "final_reynolds_smoothed,max_reynolds_raw,return_variance,laminar,transitional,"
         "turbulent,error\n";
  for (const auto& s : summaries) {
    char var[64];
    std::snprintf(var, sizeof var, "%.6e", s.return_variance);
    out << s.config_index << ',' << s.seed << ',' << format_real(s.config.collision_probability) << ','
        << s.config.initial_spread << ',' << format_real(s.final_smoothed_mu) << ','
        << format_real(s.final_smoothed_reynolds) << ',' << format_real(s.max_raw_reynolds) << ','
        << var << ',' << s.regime_counts[0] << ',' << s.regime_counts[1] << ','
        << s.regime_counts[2] << ',';
    if (s.error) {
      std::string msg = *s.error;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      out << msg;
    }
    out << '\n';
  }
  return out.str();
}

void write_series_csv(const SeriesBundle& bundle, const std::filesystem::path& path) {
  write_file_atomic(path, series_csv(bundle));
}

void write_grid_csv(const SurfaceGrid& grid, const std::filesystem::path& path) {
  write_file_atomic(path, grid_csv(grid));
}

void write_summary_csv(const std::vector<RunSummary>& summaries, const SimConfig& base,
                       const std::filesystem::path& path) {
  write_file_atomic(path, summary_csv(summaries, base));
}

}  // namespace fluidbook
