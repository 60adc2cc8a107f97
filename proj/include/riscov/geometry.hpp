#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "riscov/errors.hpp"

namespace riscov {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// One rectangular panel of EM units, centered on `center` with element
/// pitch `spacing`, lying in the plane orthogonal to `normal`.
struct PanelSpec {
    Vec3 center;
    int rows{1};
    int cols{1};
    double spacing{0.0};      // meters; config default is half a wavelength
    Vec3 normal{1.0, 0.0, 0.0};
};

/// BS antenna positions plus the fixed BS beamforming codebook
/// (one unit-norm column per codeword).
struct BsArray {
    std::vector<Vec3> antenna_positions;
    std::vector<std::vector<std::complex<double>>> codebook;

    std::size_t num_antennas() const { return antenna_positions.size(); }
    std::size_t num_codewords() const { return codebook.size(); }

    /// Reference point used for element distance ordering.
    Vec3 centroid() const;

    /// Throws config_error unless every codeword has one entry per antenna
    /// and unit Euclidean norm (within 1e-12).
    void validate() const;
};

/// All EM units of all panels. `positions` is panel-major construction
/// order (panel, row, col); `order` is the permutation that visits elements
/// by ascending distance from the BS centroid, ties broken by construction
/// order.
struct ElementLayout {
    std::vector<Vec3> positions;
    std::vector<int> panel_of;
    std::vector<int> order;
    std::vector<Vec3> panel_normals; // one per panel

    std::size_t size() const { return positions.size(); }
    const Vec3& position_sorted(std::size_t i) const { return positions[static_cast<std::size_t>(order[i])]; }
    const Vec3& normal_sorted(std::size_t i) const {
        return panel_normals[static_cast<std::size_t>(panel_of[static_cast<std::size_t>(order[i])])];
    }
};

// ---------------------------------------------------------------------------
// Codeword region shapes (2-D, on the UE plane)
// ---------------------------------------------------------------------------

struct Rectangle {
    double x_min{0.0}, x_max{0.0};
    double y_min{0.0}, y_max{0.0};
};

/// Annular sector about `origin`: r in (r_min, r_max), azimuth in
/// (az_min_rad, az_max_rad), azimuth measured from the +x axis.
struct Sector {
    double r_min{0.0}, r_max{0.0};
    double az_min_rad{0.0}, az_max_rad{0.0};
    std::array<double, 2> origin{0.0, 0.0};
};

/// Simple polygon; membership by the even-odd rule, boundary excluded.
struct Polygon {
    std::vector<std::array<double, 2>> vertices;
};

struct Shape;

struct ShapeUnion {
    std::vector<Shape> parts;
};

struct Shape {
    std::variant<Rectangle, Sector, Polygon, ShapeUnion> value;
};

struct Bounds {
    double x_min{0.0}, x_max{0.0};
    double y_min{0.0}, y_max{0.0};
};

Bounds bounding_box(const Shape& shape);

/// Strict interior test.
bool shape_contains(const Shape& shape, double x, double y);

/// A codeword target region: a 2-D shape at UE-plane height `z`,
/// discretized with grid pitch `sample_step`.
struct Region {
    std::string id;
    Shape shape;
    double z{0.5};
    double sample_step{0.1};
};

/// Centroids of the grid cells that fall inside the region, with the
/// per-point solver weights.
struct SamplePointSet {
    std::vector<Vec3> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Build per-element positions for all panels and the ascending-BS-distance
/// visiting order.
ElementLayout build_layout(const std::vector<PanelSpec>& panels, const BsArray& bs);

/// Discretize a region into grid-cell centroids (pitch = sample_step,
/// anchored at the shape's bounding box, ordered by x then y). Every point
/// gets weight `initial_weight`. Throws config_error if no centroid lands
/// inside the shape.
SamplePointSet sample_region(const Region& region, double initial_weight = 1.0);

struct ElementAngles {
    double elevation{0.0}; // [0, pi], measured from `normal`
    double azimuth{0.0};   // [0, 2*pi), in the plane orthogonal to `normal`
};

/// Elevation/azimuth of `target_pos` as seen from `element_pos` relative to
/// the axis `normal` (unit length). Throws config_error on coincident points.
ElementAngles angles(const Vec3& element_pos, const Vec3& target_pos, const Vec3& normal);

} // namespace riscov
