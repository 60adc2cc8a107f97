#include "riscov/channel.hpp"

#include <numbers>
#include <random>

#include "riscov/errors.hpp"
#include "riscov/quantization.hpp"
#include "test_util.hpp"

using namespace riscov;

namespace {

constexpr double kPi = std::numbers::pi;

ScenarioConfig reference_scenario() {
    return ScenarioConfig{}; // defaults: 30 GHz, 44 dBm, -105 dBm, G_ris = 8
}

void test_radiation_gain() {
    CHECK(radiation_gain(0.0, 3.0) == 1.0);
    CHECK(radiation_gain(kPi / 2.0, 3.0) == 0.0);
    CHECK(radiation_gain(kPi * 0.75, 3.0) == 0.0);
    CHECK_CLOSE(radiation_gain(kPi / 3.0, 3.0), 0.125, 1e-14);
    CHECK_CLOSE(radiation_gain(kPi / 4.0, 2.0), 0.5, 1e-14);
    // bounded and non-increasing on [0, pi/2]
    double prev = 1.0;
    for (int i = 0; i <= 100; ++i) {
        const double g = radiation_gain(i * (kPi / 2.0) / 100.0, 3.0);
        CHECK(g >= 0.0 && g <= 1.0);
        CHECK(g <= prev + 1e-15);
        prev = g;
    }
}

void test_h_entry() {
    const ScenarioConfig scenario = reference_scenario();
    const double lambda = scenario.wavelength();
    const Vec3 elem{0.0, 10.0, 3.5};

    // boresight at 1 m
    const auto h = h_entry(elem, {1.0, 10.0, 3.5}, scenario);
    const double expected = lambda * std::sqrt(8.0) / (4.0 * kPi);
    CHECK_CLOSE(std::abs(h), expected, 1e-12);
    CHECK_ABS(std::abs(h), 2.2492e-3, 5e-8);
    CHECK_ABS(wrap_pi(std::arg(h) + kTwoPi * 1.0 / lambda), 0.0, 1e-6);

    // in the panel plane and behind it: zero pattern
    CHECK(std::abs(h_entry(elem, {0.0, 12.0, 3.5}, scenario)) == 0.0);
    CHECK(std::abs(h_entry(elem, {-1.0, 10.0, 3.5}, scenario)) == 0.0);

    // 1/d law on the boresight ray
    const double m1 = std::abs(h_entry(elem, {2.0, 10.0, 3.5}, scenario));
    const double m2 = std::abs(h_entry(elem, {4.0, 10.0, 3.5}, scenario));
    CHECK_CLOSE(m1, 2.0 * m2, 1e-12);
    for (double d : {0.5, 1.0, 2.5, 7.0}) {
        const double m = std::abs(h_entry(elem, {d, 10.0, 3.5}, scenario));
        CHECK_CLOSE(m * d, expected, 1e-12);
    }

    // phase periodicity: distances one wavelength apart share a phase
    const double p1 = std::arg(h_entry(elem, {1.0, 10.0, 3.5}, scenario));
    const double p2 = std::arg(h_entry(elem, {1.0 + lambda, 10.0, 3.5}, scenario));
    CHECK_ABS(circular_distance(p1, p2), 0.0, 1e-6);

    CHECK_THROWS(h_entry(elem, elem, scenario), config_error);
}

void test_g_entry() {
    const ScenarioConfig scenario = reference_scenario();
    const double lambda = scenario.wavelength();
    const Vec3 elem{0.0, 10.0, 3.5};

    // BS antenna on the -x boresight of the receive side
    for (double d : {1.0, 3.0, 17.0}) {
        const auto g = g_entry(elem, {-d, 10.0, 3.5}, scenario);
        CHECK_CLOSE(std::abs(g), lambda * std::sqrt(8.0) / (4.0 * kPi * d), 1e-12);
        CHECK_ABS(circular_distance(std::arg(g), wrap_two_pi(-kTwoPi * d / lambda)), 0.0, 1e-6);
    }

    // antenna in the panel plane: zero receive pattern
    CHECK(std::abs(g_entry(elem, {0.0, -5.0, 3.5}, scenario)) == 0.0);
    // antenna on the transmit side of the panel: zero receive pattern
    CHECK(std::abs(g_entry(elem, {4.0, 10.0, 3.5}, scenario)) == 0.0);
}

void test_effective_coeffs() {
    const ScenarioConfig scenario = reference_scenario();

    PanelSpec panel;
    panel.center = {0.0, 10.0, 3.5};
    panel.rows = 3;
    panel.cols = 3;
    panel.spacing = scenario.wavelength() / 2.0;

    // single-antenna BS with the identity codeword: c = g * h per element
    BsArray bs;
    bs.antenna_positions = {{-5.0, -5.0, 10.0}};
    bs.codebook = {{{1.0, 0.0}}};

    const ElementLayout layout = build_layout({panel}, bs);
    SamplePointSet samples;
    samples.points = {{9.0, 9.0, 0.5}, {11.0, 11.0, 0.5}};
    samples.weights = {1.0, 1.0};

    const EffectiveCoefficients table = effective_coeffs(layout, bs, 1, samples, scenario);
    CHECK(table.num_elements() == 9);
    CHECK(table.num_points() == 2);
    for (std::size_t i = 0; i < layout.size(); ++i) {
        const auto g = g_entry(layout.position_sorted(i), bs.antenna_positions[0], scenario);
        for (std::size_t u = 0; u < samples.size(); ++u) {
            const auto h = h_entry(layout.position_sorted(i), samples.points[u], scenario);
            const auto expected = g * h;
            CHECK_ABS(std::abs(table.at(i, u) - expected), 0.0, 1e-18);

            // amplitude/phase accessors agree with an independent recomputation
            const double re = table.at(i, u).real();
            const double im = table.at(i, u).imag();
            CHECK_CLOSE(table.amplitude(i, u), std::hypot(re, im), 1e-12);
            const auto reconstructed = std::polar(table.amplitude(i, u), table.phase(i, u));
            CHECK_ABS(std::abs(reconstructed - table.at(i, u)),
                      0.0, 1e-12 * std::max(1e-300, table.amplitude(i, u)));
            CHECK(table.phase(i, u) >= 0.0 && table.phase(i, u) < kTwoPi);
        }
    }

    // point behind the panel: whole column is zero
    SamplePointSet behind;
    behind.points = {{-2.0, 10.0, 3.5}};
    behind.weights = {1.0};
    const EffectiveCoefficients zero = effective_coeffs(layout, bs, 1, behind, scenario);
    for (std::size_t i = 0; i < zero.num_elements(); ++i)
        CHECK(std::abs(zero.at(i, 0)) == 0.0);

    CHECK_THROWS(effective_coeffs(layout, bs, 2, samples, scenario), config_error);
}

void test_cascade_linearity() {
    const ScenarioConfig scenario = reference_scenario();

    PanelSpec panel;
    panel.center = {0.0, 10.0, 3.5};
    panel.rows = 2;
    panel.cols = 2;
    panel.spacing = scenario.wavelength() / 2.0;

    const double alpha = 0.7, beta = -1.3;
    BsArray bs;
    bs.antenna_positions = {{-5.0, -5.0, 10.0}, {-5.0, -4.0, 10.0}};
    const std::vector<std::complex<double>> w1{{1.0, 0.0}, {0.0, 0.0}};
    const std::vector<std::complex<double>> w2{{0.0, 0.0}, {0.0, 1.0}};
    std::vector<std::complex<double>> w3(2);
    for (std::size_t m = 0; m < 2; ++m) w3[m] = alpha * w1[m] + beta * w2[m];
    bs.codebook = {w1, w2, w3};

    const ElementLayout layout = build_layout({panel}, bs);
    SamplePointSet samples;
    samples.points = {{9.5, 9.5, 0.5}, {10.5, 11.0, 0.5}, {12.0, 8.0, 0.5}};
    samples.weights = {1.0, 1.0, 1.0};

    const auto t1 = effective_coeffs(layout, bs, 1, samples, scenario);
    const auto t2 = effective_coeffs(layout, bs, 2, samples, scenario);
    const auto t3 = effective_coeffs(layout, bs, 3, samples, scenario);
    for (std::size_t n = 0; n < t1.num_elements(); ++n)
        for (std::size_t u = 0; u < t1.num_points(); ++u) {
            const auto combined = alpha * t1.at(n, u) + beta * t2.at(n, u);
            CHECK_ABS(std::abs(t3.at(n, u) - combined), 0.0,
                      1e-12 * std::max(1e-300, std::abs(combined)));
        }
}

} // namespace

int main() {
    test_radiation_gain();
    test_h_entry();
    test_g_entry();
    test_effective_coeffs();
    test_cascade_linearity();
    return testutil::summary("test_channel");
}
