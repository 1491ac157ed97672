#pragma once

#include <cstdint>
#include <vector>

#include "oilu/codec.hpp"
#include "oilu/geometry.hpp"
#include "oilu/raster.hpp"

namespace oilu {

enum class Polarity : std::uint8_t { dark_on_light, light_on_dark };

struct MarkerStyle {
    int canvas_px = 512;
    int quiet_zone_px = 32;
    int stroke_px = 12;
    int pitch_px = 48;  // center-to-center ring spacing
    Polarity polarity = Polarity::dark_on_light;

    // Throws LayoutOverflow/InvalidDigit when the style cannot hold
    // ring_count code rings plus the border ring.
    void validate(int ring_count) const;

    // Default proportions with the canvas grown to the layout minimum,
    // for codes too long for the 512 px default.
    static MarkerStyle fitted(int ring_count);
};

// Canonical layout of one marker: a closed border ring (the detection
// anchor, not a code digit) plus one code ring per digit, outermost ring
// first. Half-widths are measured from the marker center to the outer
// edge of each ring's stroke.
struct MarkerGeometry {
    int canvas_px = 0;
    int stroke_px = 0;
    int pitch_px = 0;
    Point center_px;  // (canvas-1)/2 in both axes
    int border_half_width_px = 0;
    std::vector<int> ring_half_widths_px;
    std::vector<SidePattern> ring_patterns;

    int ring_count() const { return static_cast<int>(ring_half_widths_px.size()); }

    // Outer corners of the border ring in pixel-center coordinates,
    // clockwise from top-left. This is the ground-truth Quad for tests.
    std::array<Point, 4> border_outer_corners() const;
};

MarkerGeometry layout_rings(const OiluNumber& n, const MarkerStyle& style);

// Deterministic rasterization. Every present side is drawn as an
// axis-aligned stroke spanning that ring's full square side including
// both corner squares, so adjacent present sides connect.
Raster render_marker(const OiluNumber& n, const MarkerStyle& style);

// Exact number of pixels the renderer emits for one ring side, with each
// shared corner square attributed to exactly one of the two adjacent
// present sides (a side owns its clockwise-end corner). Summing over all
// present sides of all rings gives the render's total stroke pixel count.
std::int64_t expected_side_pixel_count(const MarkerGeometry& geom, int ring, Side side);

// Same corner-attribution arithmetic for the border ring (all four sides
// present).
std::int64_t expected_border_pixel_count(const MarkerGeometry& geom);

}  // namespace oilu
