#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riscov/channel.hpp"
#include "riscov/quantization.hpp"
#include "riscov/scenario.hpp"

namespace riscov {

/// Phase shifts for all elements, constrained to a quantization alphabet.
/// For discrete alphabets the level indices are authoritative and the
/// cached angles are exact level angles.
class PhaseProfile {
public:
    PhaseProfile() = default;
    PhaseProfile(std::size_t n, Quantization quant);

    /// Phases drawn uniformly from the alphabet with a platform-independent
    /// generator (mt19937_64 + fixed mapping), so a seed fully determines
    /// the profile.
    static PhaseProfile random(std::size_t n, Quantization quant, std::uint64_t seed);
    static PhaseProfile from_angles(std::vector<double> angles, Quantization quant);
    static PhaseProfile from_levels(std::vector<std::uint32_t> levels, Quantization quant);

    std::size_t size() const { return thetas_.size(); }
    const Quantization& quantization() const { return quant_; }

    double theta(std::size_t i) const { return thetas_[i]; }
    std::uint32_t level(std::size_t i) const { return levels_[i]; }
    const std::vector<double>& thetas() const { return thetas_; }
    const std::vector<std::uint32_t>& levels() const { return levels_; }

    /// Snap `angle` to the alphabet and store it.
    void set_angle(std::size_t i, double angle);

    std::complex<double> phasor(std::size_t i) const { return std::polar(1.0, thetas_[i]); }

private:
    Quantization quant_{};
    std::vector<double> thetas_;
    std::vector<std::uint32_t> levels_; // empty when continuous
};

/// Running per-point field sums S_u = sum_n c_{n,u} * exp(i*theta_n),
/// maintained incrementally during coordinate sweeps and refreshed by full
/// recomputation once per sweep to bound rounding drift.
class ResidualState {
public:
    static ResidualState compute(const EffectiveCoefficients& coeffs, const PhaseProfile& phases);

    std::size_t size() const { return sums_.size(); }
    std::complex<double> sum(std::size_t u) const { return sums_[u]; }
    std::span<const std::complex<double>> sums() const { return sums_; }

    /// S_u += c_{n,u} * delta for every point (delta = new - old phasor).
    void apply_phase_change(const EffectiveCoefficients& coeffs, std::size_t n,
                            std::complex<double> delta);

    /// Full recomputation. Returns the largest relative deviation between
    /// the incrementally maintained sums and the recomputed ones.
    double refresh(const EffectiveCoefficients& coeffs, const PhaseProfile& phases);

private:
    std::vector<std::complex<double>> sums_;
};

struct Polar {
    double amplitude{0.0};
    double phase{0.0}; // [0, 2*pi); zero amplitude reports phase 0
};

/// Per-point leave-one-out sums: amplitude and phase of
/// S_u - c_{n,u} * exp(i*theta_n).
std::vector<Polar> residual(const ResidualState& state, const EffectiveCoefficients& coeffs,
                            const PhaseProfile& phases, std::size_t n);

/// The two weighted trigonometric sums driving one coordinate update:
/// with k_u = w_u * Psi * Upsilon / (Psi^2 + Upsilon^2) (Psi, psi the
/// coefficient's polar parts and Upsilon, upsilon the residual's),
///   d = sum_u k_u * sin(psi_u - upsilon_u),
///   u = sum_u k_u * cos(psi_u - upsilon_u).
/// Accumulated in fixed point order as u + i*d = sum_u w_u * c * conj(r) /
/// (|c|^2 + |r|^2), which is the same quantity without any trig calls.
struct DuSums {
    double u{0.0};
    double d{0.0};
};

DuSums accumulate_du(std::span<const std::complex<double>> coeff_row,
                     std::span<const std::complex<double>> residuals,
                     std::span<const double> weights);

/// Unconstrained maximizer of u*cos(theta) - d*sin(theta).
///
/// u*cos(theta) - d*sin(theta) = Re[(u + i*d) * exp(i*theta)], which peaks
/// at theta = -arg(u + i*d) = -atan2(d, u). Written with chi =
/// atan2(u, -d) this is pi/2 - chi, since atan2(u, -d) = arg(i*(u + i*d))
/// = pi/2 + arg(u + i*d) modulo 2*pi. Unlike the sign-branched form below
/// it is defined and continuous at d = 0.
double update_target(DuSums du);

/// Same maximizer via the sign branch on d: chi = arctan(-u/d) and a
/// branch selecting pi/2 - chi (d <= 0) or 3*pi/2 - chi (d > 0). Undefined
/// at d = 0; kept as the reference form for equivalence tests.
double branched_update_target(DuSums du);

/// Closed-form best phase for one element given everyone else's field,
/// snapped to the alphabet. Returns nullopt when both sums are too small
/// to carry direction information (caller keeps the current phase).
std::optional<double> coordinate_update(std::span<const std::complex<double>> coeff_row,
                                        std::span<const std::complex<double>> residuals,
                                        std::span<const double> weights, const Quantization& quant);

/// One full coordinate pass over all elements in layout order, maintaining
/// the field sums incrementally and refreshing them at the end. Returns the
/// largest relative drift found by the refresh.
double sweep(const EffectiveCoefficients& coeffs, std::span<const double> weights,
             PhaseProfile& phases, ResidualState& state);

/// Increment the weight of every point whose spectral efficiency is at or
/// below the uniform mean.
void update_weights(std::span<const double> se_per_point, std::vector<double>& weights);

enum class SolverMode { bcd, awbcd };

const char* to_string(SolverMode mode);
SolverMode solver_mode_from_string(const std::string& name);

struct EpochStats {
    int epoch{0}; // 1-based
    double mean_se_bps_hz{0.0};
    std::vector<double> outage; // one entry per threshold
    double elapsed_ms{0.0};
    double residual_drift{0.0}; // max relative drift found at sweep end
};

struct SolveTrace {
    std::vector<double> thresholds;
    std::vector<EpochStats> epochs;
};

struct SolveResult {
    PhaseProfile phases;
    SolveTrace trace;
};

struct SolveControls {
    bool early_stop{false};
    double early_stop_rel_tol{1e-5};
};

/// Run max_epochs coordinate sweeps from `initial`. The awbcd mode
/// re-weights under-served points after every epoch; bcd keeps the initial
/// uniform weights. Per-point weights start at scenario.w_initial.
SolveResult solve(SolverMode mode, const EffectiveCoefficients& coeffs,
                  const ScenarioConfig& scenario, std::span<const double> thresholds,
                  PhaseProfile initial, const SolveControls& controls = {});

} // namespace riscov
