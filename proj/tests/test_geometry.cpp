#include "riscov/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <set>

#include "riscov/errors.hpp"
#include "riscov/quantization.hpp"
#include "test_util.hpp"

using namespace riscov;

namespace {

BsArray simple_bs(Vec3 pos) {
    BsArray bs;
    bs.antenna_positions = {pos};
    bs.codebook = {{{1.0, 0.0}}};
    return bs;
}

Region rect_region(double x0, double x1, double y0, double y1, double z, double step) {
    Region r;
    r.id = "test";
    r.shape = Shape{Rectangle{x0, x1, y0, y1}};
    r.z = z;
    r.sample_step = step;
    return r;
}

void test_build_layout() {
    // 2x2 panel: centered grid around the panel center
    PanelSpec panel;
    panel.center = {0.0, 10.0, 3.5};
    panel.rows = 2;
    panel.cols = 2;
    panel.spacing = 0.005;
    const ElementLayout layout = build_layout({panel}, simple_bs({-5.0, -5.0, 10.0}));
    CHECK(layout.size() == 4);
    std::set<double> ys, zs;
    for (const auto& p : layout.positions) {
        CHECK(p.x == 0.0);
        ys.insert(p.y);
        zs.insert(p.z);
    }
    CHECK(ys == std::set<double>({9.9975, 10.0025}));
    CHECK(zs == std::set<double>({3.4975, 3.5025}));

    // 1x1 panel collapses to the center
    PanelSpec single;
    single.center = {0.0, 7.0, 2.0};
    single.spacing = 0.005;
    const ElementLayout one = build_layout({single}, simple_bs({-5.0, -5.0, 10.0}));
    CHECK(one.size() == 1);
    CHECK(one.positions[0].x == 0.0);
    CHECK(one.positions[0].y == 7.0);
    CHECK(one.positions[0].z == 2.0);

    // three panels: the near panel's elements all precede the far panel's
    std::vector<PanelSpec> panels;
    for (double y : {5.0, 10.0, 15.0}) {
        PanelSpec p;
        p.center = {0.0, y, 3.5};
        p.rows = 4;
        p.cols = 4;
        p.spacing = 0.005;
        panels.push_back(p);
    }
    const ElementLayout three = build_layout(panels, simple_bs({-5.0, -5.0, 10.0}));
    CHECK(three.size() == 48);
    std::vector<std::size_t> rank_of(three.size());
    for (std::size_t i = 0; i < three.size(); ++i)
        rank_of[static_cast<std::size_t>(three.order[i])] = i;
    for (std::size_t e = 0; e < three.size(); ++e) {
        if (three.panel_of[e] != 0) continue;
        for (std::size_t f = 0; f < three.size(); ++f)
            if (three.panel_of[f] == 2) CHECK(rank_of[e] < rank_of[f]);
    }

    CHECK_THROWS(build_layout({}, simple_bs({0, 0, 0})), config_error);
    PanelSpec bad = panel;
    bad.spacing = 0.0;
    CHECK_THROWS(build_layout({bad}, simple_bs({-5, -5, 10})), config_error);
}

void test_order_is_sorted_permutation() {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<PanelSpec> panels;
        const int num_panels = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < num_panels; ++p) {
            PanelSpec spec;
            spec.center = {0.0, coord(rng), std::abs(coord(rng))};
            spec.rows = 1 + static_cast<int>(rng() % 5);
            spec.cols = 1 + static_cast<int>(rng() % 5);
            spec.spacing = 0.01;
            panels.push_back(spec);
        }
        const BsArray bs = simple_bs({coord(rng), coord(rng), std::abs(coord(rng)) + 1.0});
        const ElementLayout layout = build_layout(panels, bs);

        std::vector<int> sorted_order = layout.order;
        std::sort(sorted_order.begin(), sorted_order.end());
        for (std::size_t i = 0; i < sorted_order.size(); ++i)
            CHECK(sorted_order[i] == static_cast<int>(i)); // bijection

        const Vec3 center = bs.centroid();
        for (std::size_t i = 1; i < layout.size(); ++i) {
            CHECK(distance(layout.position_sorted(i - 1), center) <=
                  distance(layout.position_sorted(i), center) + 1e-15);
        }
    }
}

void test_sample_rectangle() {
    const Region region = rect_region(8.5, 11.5, 8.5, 11.5, 0.5, 0.1);
    const SamplePointSet set = sample_region(region, 100.0);
    CHECK(set.size() == 900);
    CHECK_CLOSE(set.points.front().x, 8.55, 1e-12);
    CHECK_CLOSE(set.points.front().y, 8.55, 1e-12);
    CHECK(set.points.front().z == 0.5);
    for (double w : set.weights) CHECK(w == 100.0);
    // ordering: x major, then y
    CHECK_CLOSE(set.points[1].x, 8.55, 1e-12);
    CHECK_CLOSE(set.points[1].y, 8.65, 1e-12);
    CHECK_CLOSE(set.points[30].x, 8.65, 1e-12);
    CHECK_CLOSE(set.points[30].y, 8.55, 1e-12);
    for (const auto& p : set.points)
        CHECK(shape_contains(region.shape, p.x, p.y));
}

void test_sample_union() {
    ShapeUnion u;
    u.parts.push_back(Shape{Rectangle{3.5, 6.5, 3.5, 6.5}});
    u.parts.push_back(Shape{Rectangle{13.5, 16.5, 13.5, 16.5}});
    Region region;
    region.id = "dual";
    region.shape = Shape{u};
    region.z = 0.5;
    region.sample_step = 0.1;
    const SamplePointSet set = sample_region(region);
    CHECK(set.size() == 1800);
    std::size_t low = 0, high = 0;
    for (const auto& p : set.points) {
        const bool in_low = p.x > 3.5 && p.x < 6.5 && p.y > 3.5 && p.y < 6.5;
        const bool in_high = p.x > 13.5 && p.x < 16.5 && p.y > 13.5 && p.y < 16.5;
        CHECK(in_low != in_high); // two disjoint blocks
        low += in_low;
        high += in_high;
    }
    CHECK(low == 900);
    CHECK(high == 900);
}

void test_sample_sector() {
    constexpr double deg = std::numbers::pi / 180.0;
    Region region;
    region.id = "sector";
    region.shape = Shape{Sector{8.0, 10.0, -5.0 * deg, 5.0 * deg, {0.0, 10.0}}};
    region.z = 0.5;
    region.sample_step = 0.1;
    const SamplePointSet set = sample_region(region);
    CHECK(set.size() > 0);
    for (const auto& p : set.points) {
        const double dx = p.x - 0.0;
        const double dy = p.y - 10.0;
        const double r = std::hypot(dx, dy);
        CHECK(r > 8.0 && r < 10.0);
        const double az = std::atan2(dy, dx);
        CHECK(az > -5.0 * deg && az < 5.0 * deg);
        CHECK(shape_contains(region.shape, p.x, p.y));
    }
}

void test_sample_polygon_and_errors() {
    Region tri;
    tri.id = "tri";
    tri.shape = Shape{Polygon{{{0.0, 0.0}, {4.0, 0.0}, {0.0, 4.0}}}};
    tri.sample_step = 0.5;
    const SamplePointSet set = sample_region(tri);
    CHECK(set.size() > 0);
    for (const auto& p : set.points) {
        CHECK(p.x + p.y < 4.0);
        CHECK(shape_contains(tri.shape, p.x, p.y));
    }

    // too coarse for the shape -> nothing inside
    Region tiny = rect_region(0.0, 0.05, 0.0, 0.05, 0.5, 0.1);
    CHECK_THROWS(sample_region(tiny), config_error);

    Region bad_step = rect_region(0.0, 1.0, 0.0, 1.0, 0.5, -1.0);
    CHECK_THROWS(sample_region(bad_step), config_error);
}

void test_refinement() {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> len(0.8, 4.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double x0 = len(rng), y0 = len(rng);
        Region region = rect_region(x0, x0 + len(rng), y0, y0 + len(rng), 0.5, 0.21);
        const std::size_t coarse = sample_region(region).size();
        region.sample_step /= 2.0;
        const std::size_t fine = sample_region(region).size();
        CHECK(fine >= 3 * coarse);
    }
}

void test_angles() {
    const Vec3 x_axis{1.0, 0.0, 0.0};
    const Vec3 elem{0.0, 10.0, 3.5};

    CHECK_ABS(angles(elem, {5.0, 10.0, 3.5}, x_axis).elevation, 0.0, 1e-15);
    CHECK_ABS(angles(elem, {0.0, 12.0, 4.0}, x_axis).elevation, std::numbers::pi / 2.0, 1e-15);
    for (double d : {0.5, 1.0, 3.0})
        CHECK_ABS(angles(elem, {d, 10.0 + d, 3.5}, x_axis).elevation, std::numbers::pi / 4.0, 1e-12);

    CHECK_THROWS(angles(elem, elem, x_axis), config_error);

    // azimuth range and translation invariance of elevation
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec3 a{coord(rng), coord(rng), coord(rng)};
        const Vec3 b{coord(rng) + 6.0, coord(rng), coord(rng)};
        const Vec3 shift{coord(rng), coord(rng), coord(rng)};
        const ElementAngles base = angles(a, b, x_axis);
        const ElementAngles moved = angles(a + shift, b + shift, x_axis);
        CHECK(base.elevation >= 0.0 && base.elevation <= std::numbers::pi);
        CHECK(base.azimuth >= 0.0 && base.azimuth < kTwoPi);
        CHECK_ABS(base.elevation, moved.elevation, 1e-12);
    }
}

void test_bs_validation() {
    BsArray bs;
    bs.antenna_positions = {{0, 0, 0}, {1, 0, 0}};
    bs.codebook = {{{0.5, 0.0}, {0.5, 0.0}}}; // norm 1/sqrt(2)
    CHECK_THROWS(bs.validate(), config_error);
    const double amp = 1.0 / std::sqrt(2.0);
    bs.codebook = {{{amp, 0.0}, {0.0, amp}}};
    bs.validate();
    CHECK(bs.num_codewords() == 1);
}

} // namespace

int main() {
    test_build_layout();
    test_order_is_sorted_permutation();
    test_sample_rectangle();
    test_sample_union();
    test_sample_sector();
    test_sample_polygon_and_errors();
    test_refinement();
    test_angles();
    test_bs_validation();
    return testutil::summary("test_geometry");
}
