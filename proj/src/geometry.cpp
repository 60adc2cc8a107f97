#include "riscov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riscov/quantization.hpp"

namespace riscov {

namespace {

// Cell count along one axis. Guards against 29.9999... for spans that are an
// exact multiple of the step.
std::size_t cell_count(double span, double step) {
    if (span <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(span / step + 1e-9));
}

bool rectangle_contains(const Rectangle& r, double x, double y) {
    return x > r.x_min && x < r.x_max && y > r.y_min && y < r.y_max;
}

bool sector_contains(const Sector& s, double x, double y) {
    const double dx = x - s.origin[0];
    const double dy = y - s.origin[1];
    const double r = std::hypot(dx, dy);
    if (r <= s.r_min || r >= s.r_max) return false;
    const double width = s.az_max_rad - s.az_min_rad;
    const double rel = wrap_two_pi(std::atan2(dy, dx) - s.az_min_rad);
    return rel > 0.0 && rel < width;
}

// Even-odd rule via ray crossings; points on an edge are not guaranteed
// inside and the contract excludes the boundary anyway.
bool polygon_contains(const Polygon& p, double x, double y) {
    bool inside = false;
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool crosses = (v[i][1] > y) != (v[j][1] > y);
        if (!crosses) continue;
        const double x_int = v[j][0] + (y - v[j][1]) * (v[i][0] - v[j][0]) / (v[i][1] - v[j][1]);
        if (x < x_int) inside = !inside;
    }
    return inside;
}

Bounds merge(const Bounds& a, const Bounds& b) {
    return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max),
            std::min(a.y_min, b.y_min), std::max(a.y_max, b.y_max)};
}

void validate_shape(const Shape& shape) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                if (!(s.x_max > s.x_min) || !(s.y_max > s.y_min))
                    throw config_error("rectangle has empty extent");
            } else if constexpr (std::is_same_v<T, Sector>) {
                if (!(s.r_max > s.r_min) || s.r_min < 0.0)
                    throw config_error("sector has empty or negative radius range");
                const double width = s.az_max_rad - s.az_min_rad;
                if (!(width > 0.0) || width > kTwoPi)
                    throw config_error("sector azimuth width must be in (0, 2*pi]");
            } else if constexpr (std::is_same_v<T, Polygon>) {
                if (s.vertices.size() < 3)
                    throw config_error("polygon needs at least 3 vertices");
            } else {
                if (s.parts.empty()) throw config_error("shape union has no parts");
                for (const auto& part : s.parts) validate_shape(part);
            }
        },
        shape.value);
}

} // namespace

Bounds bounding_box(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> Bounds {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return {s.x_min, s.x_max, s.y_min, s.y_max};
            } else if constexpr (std::is_same_v<T, Sector>) {
                // Conservative box; membership filtering trims the rest.
                return {s.origin[0] - s.r_max, s.origin[0] + s.r_max,
                        s.origin[1] - s.r_max, s.origin[1] + s.r_max};
            } else if constexpr (std::is_same_v<T, Polygon>) {
                Bounds b{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
                         std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
                for (const auto& v : s.vertices) {
                    b.x_min = std::min(b.x_min, v[0]);
                    b.x_max = std::max(b.x_max, v[0]);
                    b.y_min = std::min(b.y_min, v[1]);
                    b.y_max = std::max(b.y_max, v[1]);
                }
                return b;
            } else {
                Bounds b = bounding_box(s.parts.front());
                for (std::size_t i = 1; i < s.parts.size(); ++i)
                    b = merge(b, bounding_box(s.parts[i]));
                return b;
            }
        },
        shape.value);
}

bool shape_contains(const Shape& shape, double x, double y) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rectangle>) {
                return rectangle_contains(s, x, y);
            } else if constexpr (std::is_same_v<T, Sector>) {
                return sector_contains(s, x, y);
            } else if constexpr (std::is_same_v<T, Polygon>) {
                return polygon_contains(s, x, y);
            } else {
                return std::any_of(s.parts.begin(), s.parts.end(),
                                   [&](const Shape& part) { return shape_contains(part, x, y); });
            }
        },
        shape.value);
}

Vec3 BsArray::centroid() const {
    if (antenna_positions.empty()) throw config_error("BS array has no antennas");
    Vec3 c;
    for (const auto& p : antenna_positions) c = c + p;
    return c * (1.0 / static_cast<double>(antenna_positions.size()));
}

void BsArray::validate() const {
    if (antenna_positions.empty()) throw config_error("BS array has no antennas");
    if (codebook.empty()) throw config_error("BS codebook is empty");
    for (std::size_t j = 0; j < codebook.size(); ++j) {
        if (codebook[j].size() != antenna_positions.size())
            throw config_error("BS codeword " + std::to_string(j + 1) + " has " +
                               std::to_string(codebook[j].size()) + " entries, expected " +
                               std::to_string(antenna_positions.size()));
        double norm2 = 0.0;
        for (const auto& c : codebook[j]) norm2 += std::norm(c);
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw config_error("BS codeword " + std::to_string(j + 1) + " is not unit-norm");
    }
}

ElementLayout build_layout(const std::vector<PanelSpec>& panels, const BsArray& bs) {
    if (panels.empty()) throw config_error("panel list is empty");

    ElementLayout layout;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const PanelSpec& panel = panels[p];
        if (panel.rows < 1 || panel.cols < 1)
            throw config_error("panel " + std::to_string(p + 1) + " has non-positive grid size");
        if (!(panel.spacing > 0.0))
            throw config_error("panel " + std::to_string(p + 1) + " has non-positive spacing");
        // the element grid is built in the YOZ plane, so only +x normals
        // describe a consistent panel
        if (std::abs(panel.normal.x - 1.0) > 1e-9 || std::abs(panel.normal.y) > 1e-9 ||
            std::abs(panel.normal.z) > 1e-9)
            throw config_error("panel " + std::to_string(p + 1) +
                               " normal must be +x (panels lie in the YOZ plane)");

        layout.panel_normals.push_back(panel.normal);

        // In-plane axes for panels in the YOZ plane: columns step along y,
        // rows along z. Grid is centered on the panel center.
        const double y0 = -0.5 * static_cast<double>(panel.cols - 1) * panel.spacing;
        const double z0 = -0.5 * static_cast<double>(panel.rows - 1) * panel.spacing;
        for (int r = 0; r < panel.rows; ++r) {
            for (int c = 0; c < panel.cols; ++c) {
                Vec3 pos = panel.center;
                pos.y += y0 + static_cast<double>(c) * panel.spacing;
                pos.z += z0 + static_cast<double>(r) * panel.spacing;
                layout.positions.push_back(pos);
                layout.panel_of.push_back(static_cast<int>(p));
            }
        }
    }

    const Vec3 bs_center = bs.centroid();
    const std::size_t n = layout.positions.size();
    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = (layout.positions[i] - bs_center).norm2();

    layout.order.resize(n);
    for (std::size_t i = 0; i < n; ++i) layout.order[i] = static_cast<int>(i);
    // stable sort keeps (panel, row, col) construction order on exact ties
    std::stable_sort(layout.order.begin(), layout.order.end(),
                     [&](int a, int b) { return dist2[static_cast<std::size_t>(a)] < dist2[static_cast<std::size_t>(b)]; });
    return layout;
}

SamplePointSet sample_region(const Region& region, double initial_weight) {
    if (!(region.sample_step > 0.0))
        throw config_error("region '" + region.id + "' has non-positive sample step");
    if (!(initial_weight > 0.0))
        throw config_error("initial sample weight must be positive");
    validate_shape(region.shape);

    const Bounds box = bounding_box(region.shape);
    const std::size_t nx = cell_count(box.x_max - box.x_min, region.sample_step);
    const std::size_t ny = cell_count(box.y_max - box.y_min, region.sample_step);

    SamplePointSet set;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = box.x_min + (static_cast<double>(ix) + 0.5) * region.sample_step;
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = box.y_min + (static_cast<double>(iy) + 0.5) * region.sample_step;
            if (shape_contains(region.shape, x, y)) {
                set.points.push_back({x, y, region.z});
                set.weights.push_back(initial_weight);
            }
        }
    }
    if (set.points.empty())
        throw config_error("region '" + region.id + "' discretizes to zero sample points (step " +
                           std::to_string(region.sample_step) + " m too coarse?)");
    return set;
}

ElementAngles angles(const Vec3& element_pos, const Vec3& target_pos, const Vec3& normal) {
    const Vec3 d = target_pos - element_pos;
    const double dn = d.norm();
    if (!(dn > 0.0)) throw config_error("degenerate geometry: element and target coincide");

    const double cos_elev = std::clamp(d.dot(normal) / dn, -1.0, 1.0);

    // In-plane frame for the azimuth: e1 = helper x normal, e2 = normal x e1.
    const Vec3 helper = std::abs(normal.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{0.0, 1.0, 0.0};
    const Vec3 e1 = helper.cross(normal).normalized();
    const Vec3 e2 = normal.cross(e1);

    ElementAngles out;
    out.elevation = std::acos(cos_elev);
    out.azimuth = wrap_two_pi(std::atan2(d.dot(e2), d.dot(e1)));
    return out;
}

} // namespace riscov
