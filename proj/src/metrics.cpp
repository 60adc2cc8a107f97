#include "riscov/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "riscov/solver.hpp"

namespace riscov {

namespace {

std::size_t grid_cells(double span, double step) {
    if (span <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(span / step + 1e-9));
}

} // namespace

double received_power(std::span<const std::complex<double>> point_coeffs,
                      std::span<const double> thetas, double tx_power_w) {
    if (point_coeffs.size() != thetas.size())
        throw config_error("coefficient count does not match phase count");
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t n = 0; n < point_coeffs.size(); ++n)
        sum += point_coeffs[n] * std::polar(1.0, thetas[n]);
    return tx_power_w * std::norm(sum);
}

double spectral_efficiency(double power_w, double noise_w) {
    if (!(noise_w > 0.0)) throw config_error("noise power must be positive");
    return std::log2(1.0 + power_w / noise_w);
}

std::vector<double> se_per_point(const EffectiveCoefficients& coeffs, const PhaseProfile& phases,
                                 const ScenarioConfig& scenario) {
    const ResidualState state = ResidualState::compute(coeffs, phases);
    std::vector<double> se(coeffs.num_points());
    for (std::size_t u = 0; u < se.size(); ++u) {
        const double power = scenario.tx_power_w * std::norm(state.sum(u));
        se[u] = spectral_efficiency(power, scenario.noise_power_w);
    }
    return se;
}

CoverageReport evaluate_region(const SamplePointSet& samples, const EffectiveCoefficients& coeffs,
                               const PhaseProfile& phases, std::span<const double> thresholds,
                               const ScenarioConfig& scenario) {
    if (samples.size() == 0) throw config_error("cannot evaluate an empty sample set");
    if (samples.size() != coeffs.num_points())
        throw config_error("sample point count does not match coefficient table");
    if (thresholds.empty()) throw config_error("at least one SE threshold is required");

    CoverageReport report;
    report.se_samples = se_per_point(coeffs, phases, scenario);

    double mean = 0.0;
    for (double v : report.se_samples) mean += v;
    report.mean_se_bps_hz = mean / static_cast<double>(report.se_samples.size());

    for (double thr : thresholds) {
        std::size_t below = 0;
        for (double v : report.se_samples)
            if (v < thr) ++below;
        report.outage.emplace_back(thr, static_cast<double>(below) /
                                            static_cast<double>(report.se_samples.size()));
    }
    return report;
}

std::size_t GridSpec::nx() const { return grid_cells(x_max - x_min, step); }
std::size_t GridSpec::ny() const { return grid_cells(y_max - y_min, step); }

Vec3 GridSpec::centroid(std::size_t ix, std::size_t iy) const {
    return {x_min + (static_cast<double>(ix) + 0.5) * step,
            y_min + (static_cast<double>(iy) + 0.5) * step, z};
}

HeatmapResult heatmap(const GridSpec& grid, const ElementLayout& layout, const BsArray& bs,
                      int bs_codeword_index, const PhaseProfile& phases,
                      const ScenarioConfig& scenario, unsigned jobs) {
    const std::size_t nx = grid.nx();
    const std::size_t ny = grid.ny();
    if (nx == 0 || ny == 0) throw config_error("heatmap grid is empty");
    if (phases.size() != layout.size())
        throw config_error("phase count does not match layout element count");

    // Fold the phase profile into the BS-side factor once; per grid point
    // only the element-to-point entries remain.
    auto excitation = bs_side_coefficients(layout, bs, bs_codeword_index, scenario);
    for (std::size_t i = 0; i < excitation.size(); ++i) excitation[i] *= phases.phasor(i);

    HeatmapResult result;
    result.grid = grid;
    result.se.assign(nx * ny, 0.0);

    const std::size_t total = nx * ny;
    const auto evaluate_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const Vec3 point = grid.centroid(idx / ny, idx % ny);
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t i = 0; i < layout.size(); ++i) {
                sum += excitation[i] * h_entry(layout.position_sorted(i), point, scenario,
                                               layout.normal_sorted(i));
            }
            const double power = scenario.tx_power_w * std::norm(sum);
            result.se[idx] = spectral_efficiency(power, scenario.noise_power_w);
        }
    };

    const unsigned workers = std::max(1u, jobs);
    if (workers == 1 || total < 2 * workers) {
        evaluate_range(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            if (begin >= total) break;
            pool.emplace_back(evaluate_range, begin, std::min(begin + chunk, total));
        }
        for (auto& t : pool) t.join();
    }
    return result;
}

std::vector<std::pair<double, double>> cdf(std::span<const double> se_samples) {
    if (se_samples.empty()) throw config_error("cannot build a CDF from zero samples");
    std::vector<double> sorted(se_samples.begin(), se_samples.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<std::pair<double, double>> out;
    const double total = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const bool last_of_run = i + 1 == sorted.size() || sorted[i + 1] != sorted[i];
        if (last_of_run) out.emplace_back(sorted[i], static_cast<double>(i + 1) / total);
    }
    return out;
}

} // namespace riscov
