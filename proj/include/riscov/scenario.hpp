#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "riscov/errors.hpp"
#include "riscov/quantization.hpp"

namespace riscov {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

/// Physical and solver constants of one simulation scenario. Powers are
/// stored in watts; configuration files take dBm and convert at the
/// boundary.
struct ScenarioConfig {
    double frequency_hz{30e9};
    double tx_power_w{dbm_to_watts(44.0)};
    double noise_power_w{dbm_to_watts(-105.0)};
    double g_ris{8.0};                // EM unit radiation gain, linear
    double g_tx{1.0};                 // BS antenna gain, linear
    double g_rx{1.0};                 // UE antenna gain, linear
    double radiation_exponent{3.0};   // exponent of the cosine power pattern
    Quantization quantization{};      // continuous by default
    std::uint64_t rng_seed{1};
    double w_initial{100.0};          // initial per-point solver weight
    int max_epochs{20};

    double wavelength() const { return kSpeedOfLight / frequency_hz; }

    void validate() const {
        if (!(frequency_hz > 0.0)) throw config_error("frequency must be positive");
        if (!(tx_power_w > 0.0)) throw config_error("transmit power must be positive");
        if (!(noise_power_w > 0.0)) throw config_error("noise power must be positive");
        if (!(g_ris > 0.0) || !(g_tx > 0.0) || !(g_rx > 0.0))
            throw config_error("antenna gains must be positive");
        if (!(radiation_exponent > 0.0)) throw config_error("radiation exponent must be positive");
        if (!(w_initial > 0.0)) throw config_error("initial weight must be positive");
        if (max_epochs < 1) throw config_error("max epochs must be at least 1");
    }
};

} // namespace riscov
