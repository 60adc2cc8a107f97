#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "riscov/metrics.hpp"
#include "riscov/solver.hpp"

namespace riscov {

/// Shortest round-trip decimal form of a double; locale-independent.
std::string format_double(double v);

/// CSV with columns: epoch, mean_se_bps_hz, outage@<t> per threshold,
/// elapsed_ms. Everything except elapsed_ms is deterministic for a fixed
/// seed.
std::string trace_csv(const SolveTrace& trace);

/// CSV with columns: x_m, y_m, se_bps_hz (row-major by x then y).
std::string heatmap_csv(const HeatmapResult& map);

/// CSV with columns: se_bps_hz, cum_prob.
std::string cdf_csv(const std::vector<std::pair<double, double>>& cdf_points);

/// CSV with columns: level, mean_se_bps_hz, outage@<t> per threshold.
std::string sweep_csv(const std::vector<double>& thresholds,
                      const std::vector<std::string>& levels,
                      const std::vector<CoverageReport>& reports);

/// Key-value coverage summary.
std::string report_text(const CoverageReport& report);

/// Monochrome SVG rendering of a heatmap: each cell is a rectangle whose
/// gray level maps the SE linearly between the grid's min and max.
std::string heatmap_svg(const HeatmapResult& map);

struct RunManifest {
    std::string command;
    std::string tool_version;
    std::string config_digest;
    std::uint64_t seed{0};
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& manifest);

std::string utc_timestamp();

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace riscov
