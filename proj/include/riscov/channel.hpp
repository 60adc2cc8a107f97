#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "riscov/geometry.hpp"
#include "riscov/scenario.hpp"

namespace riscov {

/// Normalized cosine-power radiation pattern: cos(elevation)^exponent on
/// [0, pi/2), zero on [pi/2, pi]. Azimuth-independent.
double radiation_gain(double elevation_rad, double exponent);

/// Free-space LOS element-to-UE coefficient. The transmit pattern is
/// evaluated against the element normal; the UE antenna is isotropic
/// (pattern contribution g_rx only).
std::complex<double> h_entry(const Vec3& element_pos, const Vec3& ue_pos,
                             const ScenarioConfig& scenario,
                             const Vec3& normal = Vec3{1.0, 0.0, 0.0});

/// Free-space LOS BS-antenna-to-element coefficient. The element receive
/// pattern faces the back of the panel (-normal); the BS antenna is
/// isotropic.
std::complex<double> g_entry(const Vec3& element_pos, const Vec3& bs_antenna_pos,
                             const ScenarioConfig& scenario,
                             const Vec3& normal = Vec3{1.0, 0.0, 0.0});

/// Per-(element, sample point) cascade coefficient table. Row n holds the
/// coefficients of the n-th element in ascending-BS-distance order; the
/// element's contribution to the received field at point u is
/// at(n, u) * exp(i*theta_n).
class EffectiveCoefficients {
public:
    EffectiveCoefficients() = default;
    EffectiveCoefficients(std::size_t num_elements, std::size_t num_points)
        : elements_(num_elements), points_(num_points), c_(num_elements * num_points) {}

    std::size_t num_elements() const { return elements_; }
    std::size_t num_points() const { return points_; }

    std::complex<double> at(std::size_t n, std::size_t u) const { return c_[n * points_ + u]; }
    void set(std::size_t n, std::size_t u, std::complex<double> v) { c_[n * points_ + u] = v; }

    std::span<const std::complex<double>> row(std::size_t n) const {
        return {c_.data() + n * points_, points_};
    }
    std::vector<std::complex<double>> column(std::size_t u) const {
        std::vector<std::complex<double>> col(elements_);
        for (std::size_t n = 0; n < elements_; ++n) col[n] = at(n, u);
        return col;
    }

    double amplitude(std::size_t n, std::size_t u) const { return std::abs(at(n, u)); }
    double phase(std::size_t n, std::size_t u) const; // arg, wrapped to [0, 2*pi)

private:
    std::size_t elements_{0};
    std::size_t points_{0};
    std::vector<std::complex<double>> c_;
};

/// BS-side factor per element (in layout order): the element's received
/// excitation under BS codeword j (1-based).
std::vector<std::complex<double>> bs_side_coefficients(const ElementLayout& layout,
                                                       const BsArray& bs, int bs_codeword_index,
                                                       const ScenarioConfig& scenario);

/// Cascade coefficients for a single UE position, elements in layout order.
std::vector<std::complex<double>> point_coefficients(const ElementLayout& layout,
                                                     std::span<const std::complex<double>> bs_side,
                                                     const Vec3& point,
                                                     const ScenarioConfig& scenario);

/// Full coefficient table for a sample point set under BS codeword
/// `bs_codeword_index` (1-based). Computed once per (codeword, region) pair;
/// immutable afterwards.
EffectiveCoefficients effective_coeffs(const ElementLayout& layout, const BsArray& bs,
                                       int bs_codeword_index, const SamplePointSet& samples,
                                       const ScenarioConfig& scenario);

} // namespace riscov
