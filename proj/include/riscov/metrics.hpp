#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/geometry.hpp"
#include "riscov/scenario.hpp"

namespace riscov {

class PhaseProfile;

/// tx_power * |sum_n c_n * exp(i*theta_n)|^2, in watts.
double received_power(std::span<const std::complex<double>> point_coeffs,
                      std::span<const double> thetas, double tx_power_w);

/// log2(1 + power/noise), in bps/Hz.
double spectral_efficiency(double power_w, double noise_w);

/// Per-point spectral efficiency for a coefficient table under a phase
/// profile, in point order.
std::vector<double> se_per_point(const EffectiveCoefficients& coeffs, const PhaseProfile& phases,
                                 const ScenarioConfig& scenario);

struct CoverageReport {
    std::string region_id;
    std::string codeword_id;
    double mean_se_bps_hz{0.0};
    std::vector<std::pair<double, double>> outage; // (threshold, probability)
    std::vector<double> se_samples;
};

/// Mean SE and per-threshold outage over a sampled region. Outage uses a
/// strict comparison: the fraction of points with SE < threshold.
CoverageReport evaluate_region(const SamplePointSet& samples, const EffectiveCoefficients& coeffs,
                               const PhaseProfile& phases, std::span<const double> thresholds,
                               const ScenarioConfig& scenario);

/// Axis-aligned evaluation grid on the UE plane; values are computed at
/// cell centroids, ordered by x then y.
struct GridSpec {
    double x_min{0.0}, x_max{20.0};
    double y_min{0.0}, y_max{20.0};
    double step{0.1};
    double z{0.5};

    std::size_t nx() const;
    std::size_t ny() const;
    Vec3 centroid(std::size_t ix, std::size_t iy) const;
};

struct HeatmapResult {
    GridSpec grid;
    std::vector<double> se; // row-major: index = ix * ny + iy
};

/// SE over a room grid for a fixed codeword. Coefficients are computed on
/// demand per grid point; evaluation is data-parallel over points with
/// output order independent of `jobs`.
HeatmapResult heatmap(const GridSpec& grid, const ElementLayout& layout, const BsArray& bs,
                      int bs_codeword_index, const PhaseProfile& phases,
                      const ScenarioConfig& scenario, unsigned jobs = 1);

/// Empirical CDF: (distinct value ascending, fraction of samples <= value).
std::vector<std::pair<double, double>> cdf(std::span<const double> se_samples);

} // namespace riscov
