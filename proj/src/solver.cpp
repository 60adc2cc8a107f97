#include "riscov/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "riscov/errors.hpp"
#include "riscov/metrics.hpp"

namespace riscov {

namespace {

// Fixed 53-bit mapping to [0, 1); keeps draws identical across standard
// library implementations (uniform_real_distribution is not portable).
double to_unit_interval(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace

PhaseProfile::PhaseProfile(std::size_t n, Quantization quant) : quant_(quant), thetas_(n, 0.0) {
    if (!quant.is_continuous()) levels_.assign(n, 0u);
}

PhaseProfile PhaseProfile::random(std::size_t n, Quantization quant, std::uint64_t seed) {
    PhaseProfile profile(n, quant);
    std::mt19937_64 rng(seed);
    if (quant.is_continuous()) {
        for (std::size_t i = 0; i < n; ++i)
            profile.thetas_[i] = to_unit_interval(rng()) * kTwoPi;
    } else {
        const std::uint64_t mask = quant.num_levels() - 1u; // power of two
        for (std::size_t i = 0; i < n; ++i) {
            const auto level = static_cast<std::uint32_t>(rng() & mask);
            profile.levels_[i] = level;
            profile.thetas_[i] = quant.level_angle(level);
        }
    }
    return profile;
}

PhaseProfile PhaseProfile::from_angles(std::vector<double> angles, Quantization quant) {
    PhaseProfile profile(angles.size(), quant);
    for (std::size_t i = 0; i < angles.size(); ++i) profile.set_angle(i, angles[i]);
    return profile;
}

PhaseProfile PhaseProfile::from_levels(std::vector<std::uint32_t> levels, Quantization quant) {
    if (quant.is_continuous())
        throw config_error("level indices require a discrete quantization");
    PhaseProfile profile(levels.size(), quant);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] >= quant.num_levels())
            throw config_error("phase level " + std::to_string(levels[i]) + " out of range for q=" +
                               std::to_string(quant.bit_count()));
        profile.levels_[i] = levels[i];
        profile.thetas_[i] = quant.level_angle(levels[i]);
    }
    return profile;
}

void PhaseProfile::set_angle(std::size_t i, double angle) {
    if (quant_.is_continuous()) {
        thetas_[i] = wrap_two_pi(angle);
    } else {
        const std::uint32_t level = quant_.nearest_level(angle);
        levels_[i] = level;
        thetas_[i] = quant_.level_angle(level);
    }
}

ResidualState ResidualState::compute(const EffectiveCoefficients& coeffs,
                                     const PhaseProfile& phases) {
    ResidualState state;
    state.sums_.assign(coeffs.num_points(), {0.0, 0.0});
    for (std::size_t n = 0; n < coeffs.num_elements(); ++n) {
        const auto row = coeffs.row(n);
        const std::complex<double> p = phases.phasor(n);
        for (std::size_t u = 0; u < row.size(); ++u) state.sums_[u] += row[u] * p;
    }
    return state;
}

void ResidualState::apply_phase_change(const EffectiveCoefficients& coeffs, std::size_t n,
                                       std::complex<double> delta) {
    const auto row = coeffs.row(n);
    for (std::size_t u = 0; u < row.size(); ++u) sums_[u] += row[u] * delta;
}

double ResidualState::refresh(const EffectiveCoefficients& coeffs, const PhaseProfile& phases) {
    ResidualState fresh = compute(coeffs, phases);
    double max_drift = 0.0;
    for (std::size_t u = 0; u < sums_.size(); ++u) {
        const double scale = std::max(std::abs(fresh.sums_[u]), 1e-300);
        max_drift = std::max(max_drift, std::abs(sums_[u] - fresh.sums_[u]) / scale);
    }
    sums_ = std::move(fresh.sums_);
    return max_drift;
}

std::vector<Polar> residual(const ResidualState& state, const EffectiveCoefficients& coeffs,
                            const PhaseProfile& phases, std::size_t n) {
    const auto row = coeffs.row(n);
    const std::complex<double> p = phases.phasor(n);
    std::vector<Polar> out(row.size());
    for (std::size_t u = 0; u < row.size(); ++u) {
        const std::complex<double> r = state.sum(u) - row[u] * p;
        const double amp = std::abs(r);
        out[u] = {amp, amp > 0.0 ? wrap_two_pi(std::arg(r)) : 0.0};
    }
    return out;
}

DuSums accumulate_du(std::span<const std::complex<double>> coeff_row,
                     std::span<const std::complex<double>> residuals,
                     std::span<const double> weights) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t u = 0; u < coeff_row.size(); ++u) {
        const double denom = std::norm(coeff_row[u]) + std::norm(residuals[u]);
        if (denom == 0.0) continue;
        acc += weights[u] * coeff_row[u] * std::conj(residuals[u]) / denom;
    }
    return {acc.real(), acc.imag()};
}

double update_target(DuSums du) {
    const double chi = std::atan2(du.u, -du.d);
    return wrap_two_pi(std::numbers::pi / 2.0 - chi);
}

double branched_update_target(DuSums du) {
    const double chi = std::atan(-du.u / du.d);
    const double base = du.d > 0.0 ? 3.0 * std::numbers::pi / 2.0 : std::numbers::pi / 2.0;
    return wrap_two_pi(base - chi);
}

std::optional<double> coordinate_update(std::span<const std::complex<double>> coeff_row,
                                        std::span<const std::complex<double>> residuals,
                                        std::span<const double> weights,
                                        const Quantization& quant) {
    const DuSums du = accumulate_du(coeff_row, residuals, weights);
    if (std::abs(du.d) < 1e-300 && std::abs(du.u) < 1e-300) return std::nullopt;
    return quantize(update_target(du), quant);
}

double sweep(const EffectiveCoefficients& coeffs, std::span<const double> weights,
             PhaseProfile& phases, ResidualState& state) {
    const std::size_t points = coeffs.num_points();
    std::vector<std::complex<double>> residuals(points);

    std::complex<double> acc;
    for (std::size_t n = 0; n < coeffs.num_elements(); ++n) {
        const auto row = coeffs.row(n);
        const std::complex<double> old_phasor = phases.phasor(n);

        // Fused leave-one-out residual and direction accumulation.
        acc = {0.0, 0.0};
        for (std::size_t u = 0; u < points; ++u) {
            const std::complex<double> r = state.sum(u) - row[u] * old_phasor;
            residuals[u] = r;
            const double denom = std::norm(row[u]) + std::norm(r);
            if (denom == 0.0) continue;
            acc += weights[u] * row[u] * std::conj(r) / denom;
        }
        const DuSums du{acc.real(), acc.imag()};
        if (std::abs(du.d) < 1e-300 && std::abs(du.u) < 1e-300) continue;

        phases.set_angle(n, quantize(update_target(du), phases.quantization()));
        const std::complex<double> delta = phases.phasor(n) - old_phasor;
        if (delta != std::complex<double>{0.0, 0.0}) state.apply_phase_change(coeffs, n, delta);
    }
    return state.refresh(coeffs, phases);
}

void update_weights(std::span<const double> se_per_point, std::vector<double>& weights) {
    if (se_per_point.size() != weights.size())
        throw config_error("SE sample count does not match weight count");
    double mean = 0.0;
    for (double se : se_per_point) mean += se;
    mean /= static_cast<double>(se_per_point.size());
    for (std::size_t u = 0; u < weights.size(); ++u)
        if (se_per_point[u] <= mean) weights[u] += 1.0;
}

const char* to_string(SolverMode mode) { return mode == SolverMode::bcd ? "bcd" : "awbcd"; }

SolverMode solver_mode_from_string(const std::string& name) {
    if (name == "bcd") return SolverMode::bcd;
    if (name == "awbcd") return SolverMode::awbcd;
    throw config_error("unknown solver mode '" + name + "' (expected bcd or awbcd)");
}

SolveResult solve(SolverMode mode, const EffectiveCoefficients& coeffs,
                  const ScenarioConfig& scenario, std::span<const double> thresholds,
                  PhaseProfile initial, const SolveControls& controls) {
    scenario.validate();
    if (coeffs.num_points() == 0) throw config_error("cannot solve over an empty sample set");
    if (initial.size() != coeffs.num_elements())
        throw config_error("initial phase count " + std::to_string(initial.size()) +
                           " does not match element count " +
                           std::to_string(coeffs.num_elements()));

    SolveResult result;
    result.phases = std::move(initial);
    result.trace.thresholds.assign(thresholds.begin(), thresholds.end());

    std::vector<double> weights(coeffs.num_points(), scenario.w_initial);
    ResidualState state = ResidualState::compute(coeffs, result.phases);
    std::vector<double> se(coeffs.num_points());

    for (int epoch = 1; epoch <= scenario.max_epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        const double drift = sweep(coeffs, weights, result.phases, state);

        double mean = 0.0;
        for (std::size_t u = 0; u < se.size(); ++u) {
            const double power = scenario.tx_power_w * std::norm(state.sum(u));
            se[u] = spectral_efficiency(power, scenario.noise_power_w);
            mean += se[u];
        }
        mean /= static_cast<double>(se.size());
        if (!std::isfinite(mean))
            throw numeric_error("non-finite mean spectral efficiency at epoch " +
                                std::to_string(epoch));

        EpochStats stats;
        stats.epoch = epoch;
        stats.mean_se_bps_hz = mean;
        stats.residual_drift = drift;
        for (double thr : thresholds) {
            std::size_t below = 0;
            for (double v : se)
                if (v < thr) ++below;
            stats.outage.push_back(static_cast<double>(below) / static_cast<double>(se.size()));
        }
        const auto t1 = std::chrono::steady_clock::now();
        stats.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.trace.epochs.push_back(std::move(stats));

        if (controls.early_stop && epoch >= 2) {
            const double prev = result.trace.epochs[static_cast<std::size_t>(epoch) - 2].mean_se_bps_hz;
            if (std::abs(mean - prev) / std::max(std::abs(prev), 1e-300) < controls.early_stop_rel_tol)
                break;
        }
        if (mode == SolverMode::awbcd) update_weights(se, weights);
    }
    return result;
}

} // namespace riscov
