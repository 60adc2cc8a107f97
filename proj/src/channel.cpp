#include "riscov/channel.hpp"

#include <numbers>

#include "riscov/quantization.hpp"

namespace riscov {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double pattern_pow(double c, double exponent) {
    if (exponent == 3.0) return c * c * c;
    return std::pow(c, exponent);
}

std::complex<double> los_entry(double gain_product, double pattern, double d, double lambda) {
    if (pattern <= 0.0) return {0.0, 0.0};
    const double magnitude = lambda * std::sqrt(gain_product * pattern) / (4.0 * std::numbers::pi * d);
    return std::polar(magnitude, -kTwoPi * d / lambda);
}

} // namespace

double radiation_gain(double elevation_rad, double exponent) {
    if (elevation_rad >= kHalfPi) return 0.0;
    return pattern_pow(std::cos(elevation_rad), exponent);
}

std::complex<double> h_entry(const Vec3& element_pos, const Vec3& ue_pos,
                             const ScenarioConfig& scenario, const Vec3& normal) {
    const ElementAngles a = angles(element_pos, ue_pos, normal);
    const double f_t = radiation_gain(a.elevation, scenario.radiation_exponent);
    const double d = distance(element_pos, ue_pos);
    return los_entry(scenario.g_ris * scenario.g_rx, f_t, d, scenario.wavelength());
}

std::complex<double> g_entry(const Vec3& element_pos, const Vec3& bs_antenna_pos,
                             const ScenarioConfig& scenario, const Vec3& normal) {
    // Receive side of a transmissive panel: the pattern faces -normal.
    const ElementAngles a = angles(element_pos, bs_antenna_pos, normal * -1.0);
    const double f_r = radiation_gain(a.elevation, scenario.radiation_exponent);
    const double d = distance(element_pos, bs_antenna_pos);
    return los_entry(scenario.g_ris * scenario.g_tx, f_r, d, scenario.wavelength());
}

double EffectiveCoefficients::phase(std::size_t n, std::size_t u) const {
    const std::complex<double> c = at(n, u);
    if (c == std::complex<double>{0.0, 0.0}) return 0.0;
    return wrap_two_pi(std::arg(c));
}

std::vector<std::complex<double>> bs_side_coefficients(const ElementLayout& layout,
                                                       const BsArray& bs, int bs_codeword_index,
                                                       const ScenarioConfig& scenario) {
    if (bs_codeword_index < 1 || static_cast<std::size_t>(bs_codeword_index) > bs.num_codewords())
        throw config_error("BS codeword index " + std::to_string(bs_codeword_index) +
                           " out of range [1, " + std::to_string(bs.num_codewords()) + "]");
    const auto& codeword = bs.codebook[static_cast<std::size_t>(bs_codeword_index - 1)];

    std::vector<std::complex<double>> out(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const Vec3& pos = layout.position_sorted(i);
        const Vec3& normal = layout.normal_sorted(i);
        std::complex<double> b{0.0, 0.0};
        for (std::size_t m = 0; m < bs.num_antennas(); ++m)
            b += g_entry(pos, bs.antenna_positions[m], scenario, normal) * codeword[m];
        out[i] = b;
    }
    return out;
}

std::vector<std::complex<double>> point_coefficients(const ElementLayout& layout,
                                                     std::span<const std::complex<double>> bs_side,
                                                     const Vec3& point,
                                                     const ScenarioConfig& scenario) {
    std::vector<std::complex<double>> out(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        out[i] = bs_side[i] *
                 h_entry(layout.position_sorted(i), point, scenario, layout.normal_sorted(i));
    }
    return out;
}

EffectiveCoefficients effective_coeffs(const ElementLayout& layout, const BsArray& bs,
                                       int bs_codeword_index, const SamplePointSet& samples,
                                       const ScenarioConfig& scenario) {
    const auto bs_side = bs_side_coefficients(layout, bs, bs_codeword_index, scenario);

    EffectiveCoefficients table(layout.size(), samples.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const Vec3& pos = layout.position_sorted(i);
        const Vec3& normal = layout.normal_sorted(i);
        for (std::size_t u = 0; u < samples.size(); ++u)
            table.set(i, u, bs_side[i] * h_entry(pos, samples.points[u], scenario, normal));
    }
    return table;
}

} // namespace riscov
