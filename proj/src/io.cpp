#include "riscov/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "riscov/errors.hpp"

namespace riscov {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string trace_csv(const SolveTrace& trace) {
    std::string out = "epoch,mean_se_bps_hz";
    for (double thr : trace.thresholds) out += ",outage@" + format_double(thr);
    out += ",elapsed_ms\n";
    for (const auto& e : trace.epochs) {
        out += std::to_string(e.epoch) + "," + format_double(e.mean_se_bps_hz);
        for (double o : e.outage) out += "," + format_double(o);
        out += "," + format_double(e.elapsed_ms) + "\n";
    }
    return out;
}

std::string heatmap_csv(const HeatmapResult& map) {
    std::string out = "x_m,y_m,se_bps_hz\n";
    const std::size_t ny = map.grid.ny();
    for (std::size_t idx = 0; idx < map.se.size(); ++idx) {
        const Vec3 p = map.grid.centroid(idx / ny, idx % ny);
        out += format_double(p.x) + "," + format_double(p.y) + "," + format_double(map.se[idx]) + "\n";
    }
    return out;
}

std::string cdf_csv(const std::vector<std::pair<double, double>>& cdf_points) {
    std::string out = "se_bps_hz,cum_prob\n";
    for (const auto& [se, prob] : cdf_points)
        out += format_double(se) + "," + format_double(prob) + "\n";
    return out;
}

std::string sweep_csv(const std::vector<double>& thresholds,
                      const std::vector<std::string>& levels,
                      const std::vector<CoverageReport>& reports) {
    if (levels.size() != reports.size())
        throw config_error("sweep level count does not match report count");
    std::string out = "level,mean_se_bps_hz";
    for (double thr : thresholds) out += ",outage@" + format_double(thr);
    out += "\n";
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out += levels[i] + "," + format_double(reports[i].mean_se_bps_hz);
        for (const auto& [thr, prob] : reports[i].outage) {
            (void)thr;
            out += "," + format_double(prob);
        }
        out += "\n";
    }
    return out;
}

std::string report_text(const CoverageReport& report) {
    std::string out;
    if (!report.region_id.empty()) out += "region: " + report.region_id + "\n";
    if (!report.codeword_id.empty()) out += "codeword: " + report.codeword_id + "\n";
    out += "points: " + std::to_string(report.se_samples.size()) + "\n";
    out += "mean_se_bps_hz: " + format_double(report.mean_se_bps_hz) + "\n";
    for (const auto& [thr, prob] : report.outage)
        out += "outage@" + format_double(thr) + ": " + format_double(prob) + "\n";
    return out;
}

std::string heatmap_svg(const HeatmapResult& map) {
    const std::size_t nx = map.grid.nx();
    const std::size_t ny = map.grid.ny();
    double lo = map.se.empty() ? 0.0 : map.se.front();
    double hi = lo;
    for (double v : map.se) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;

    const int cell = 4; // pixels per grid cell
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << nx * cell << "\" height=\""
        << ny * cell << "\">\n";
    for (std::size_t idx = 0; idx < map.se.size(); ++idx) {
        const std::size_t ix = idx / ny;
        const std::size_t iy = idx % ny;
        const int gray = static_cast<int>(std::lround(255.0 * (map.se[idx] - lo) / span));
        // y axis points up in room coordinates, down in SVG
        svg << "<rect x=\"" << ix * cell << "\" y=\"" << (ny - 1 - iy) * cell << "\" width=\""
            << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << gray << "," << gray << ","
            << gray << ")\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["tool_version"] = manifest.tool_version;
    j["config_digest"] = manifest.config_digest;
    j["seed"] = manifest.seed;
    j["started_utc"] = manifest.started_utc;
    j["finished_utc"] = manifest.finished_utc;
    j["outputs"] = manifest.outputs;
    return j.dump(2);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw config_error("failed to write '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace riscov
