#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fluidbook/engine.hpp"
#include "fluidbook/sweep.hpp"

namespace fluidbook {

/// Fixed six-decimal rendering; +inf and -inf as `inf` / `-inf`.
std::string format_real(double value);

/// Writes `contents` to `path` via a sibling temporary and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// `#`-prefixed metadata block: tool, version, command, generator and every
/// config key as `# config: key = value`.
std::string metadata_header(const SimConfig& config, std::string_view command);

/// Recovers the SimConfig echoed in a file's metadata block.
SimConfig read_header_config(const std::filesystem::path& path);

std::string series_csv(const SeriesBundle& bundle);
std::string grid_csv(const SurfaceGrid& grid);
std::string summary_csv(const std::vector<RunSummary>& summaries, const SimConfig& base);

void write_series_csv(const SeriesBundle& bundle, const std::filesystem::path& path);
void write_grid_csv(const SurfaceGrid& grid, const std::filesystem::path& path);
void write_summary_csv(const std::vector<RunSummary>& summaries, const SimConfig& base,
                       const std::filesystem::path& path);

/// Six panels: order book, price, smoothed viscosity, bid/ask, returns,
/// smoothed Reynolds number.
std::string series_svg(const SeriesBundle& bundle);
/// Heatmap of N_R over (x, P).
std::string grid_svg(const SurfaceGrid& grid);

void render_svg(const SeriesBundle& bundle, const std::filesystem::path& path);
void render_svg(const SurfaceGrid& grid, const std::filesystem::path& path);

}  // namespace fluidbook
