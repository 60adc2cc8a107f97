#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "riscov/errors.hpp"

namespace riscov {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi; // fmod result + 2*pi can round up to 2*pi
    return a;
}

/// Wrap an angle into (-pi, pi].
inline double wrap_pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a > std::numbers::pi) a -= kTwoPi;
    else if (a <= -std::numbers::pi) a += kTwoPi;
    return a;
}

/// Shortest angular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
    return std::abs(wrap_pi(a - b));
}

/// Phase-shift alphabet: either the continuous circle [0, 2*pi) or
/// 2^q uniformly spaced levels {0, 2*pi/2^q, ...}.
class Quantization {
public:
    Quantization() = default; // continuous

    static Quantization continuous() { return Quantization{}; }

    static Quantization bits(int q) {
        if (q < 1 || q > 30)
            throw config_error("quantization bits must be in [1, 30], got " + std::to_string(q));
        Quantization quant;
        quant.bits_ = q;
        return quant;
    }

    bool is_continuous() const { return bits_ == 0; }
    int bit_count() const { return bits_; }

    std::uint32_t num_levels() const { return std::uint32_t{1} << bits_; }
    double level_step() const { return kTwoPi / static_cast<double>(num_levels()); }
    double level_angle(std::uint32_t level) const {
        return static_cast<double>(level) * level_step();
    }

    /// Level whose angle is circularly nearest to `angle`; exact ties go to
    /// the smaller level index.
    std::uint32_t nearest_level(double angle) const {
        const std::uint32_t levels = num_levels();
        const double step = level_step();
        const double a = wrap_two_pi(angle);
        std::uint32_t lo = static_cast<std::uint32_t>(a / step);
        if (lo >= levels) lo = levels - 1; // division may round up at the seam
        const std::uint32_t hi = (lo + 1u) % levels;
        const double d_lo = circular_distance(a, level_angle(lo));
        const double d_hi = circular_distance(a, level_angle(hi));
        if (d_lo < d_hi) return lo;
        if (d_hi < d_lo) return hi;
        return lo < hi ? lo : hi;
    }

    friend bool operator==(const Quantization& a, const Quantization& b) {
        return a.bits_ == b.bits_;
    }

private:
    int bits_{0}; // 0 = continuous
};

/// Nearest member of the alphabet, as an angle. Continuous alphabets return
/// the input wrapped into [0, 2*pi).
inline double quantize(double angle, const Quantization& quant) {
    if (quant.is_continuous()) return wrap_two_pi(angle);
    return quant.level_angle(quant.nearest_level(angle));
}

} // namespace riscov
