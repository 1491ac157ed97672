#include "oilu/render.hpp"

#include <string>

namespace oilu {

namespace {

// Pixel span covered by a half-width h band about the canvas center
// (N-1)/2: all pixels p with |p - (N-1)/2| <= h. Symmetric under the
// canvas' quarter-turn rotations for both parities of N.
struct Span {
    int lo;
    int hi;  // inclusive
    int len() const { return hi - lo + 1; }
};

Span span_for(int canvas, int half_width) {
    int lo = (canvas - 2 * half_width) / 2;
    return {lo, canvas - 1 - lo};
}

// Side length in pixels of the square outline at half-width h.
int side_len(int canvas, int half_width) { return span_for(canvas, half_width).len(); }

void fill_rect(Raster& img, int x0, int y0, int x1, int y1, std::uint8_t v) {
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) img.at(x, y) = v;
}

// Draws one side stroke of the square ring with outer span `outer` and
// stroke thickness s, corners included.
void draw_side(Raster& img, Span outer, int s, Side side, std::uint8_t v) {
    switch (side) {
        case Side::top:
            fill_rect(img, outer.lo, outer.lo, outer.hi, outer.lo + s - 1, v);
            break;
        case Side::bottom:
            fill_rect(img, outer.lo, outer.hi - s + 1, outer.hi, outer.hi, v);
            break;
        case Side::left:
            fill_rect(img, outer.lo, outer.lo, outer.lo + s - 1, outer.hi, v);
            break;
        case Side::right:
            fill_rect(img, outer.hi - s + 1, outer.lo, outer.hi, outer.hi, v);
            break;
    }
}

// The corner a side keeps when the neighboring side is also present:
// walking clockwise top->right->bottom->left, each side owns the corner
// at its clockwise end. The other corner belongs to the previous side,
// so it is subtracted from this side's count when that side is present.
Side ccw_neighbor(Side s) {
    switch (s) {
        case Side::top: return Side::left;
        case Side::right: return Side::top;
        case Side::bottom: return Side::right;
        case Side::left: return Side::bottom;
    }
    return Side::top;
}

}  // namespace

void MarkerStyle::validate(int ring_count) const {
    if (ring_count < 1) throw InvalidDigit("a marker carries at least one digit");
    if (stroke_px < 1) throw LayoutOverflow("stroke must be at least 1 px");
    if (pitch_px <= stroke_px) throw LayoutOverflow("pitch must exceed stroke");
    if (quiet_zone_px < stroke_px) throw LayoutOverflow("quiet zone must cover the stroke");
    // Border plus ring_count code rings, innermost ring keeping a
    // nonempty center: half-width budget is canvas/2.
    int needed = 2 * (quiet_zone_px + ring_count * pitch_px + stroke_px + 1);
    if (canvas_px < needed)
        throw LayoutOverflow("canvas " + std::to_string(canvas_px) + " px cannot hold " +
                             std::to_string(ring_count) + " code rings (needs " +
                             std::to_string(needed) + " px)");
}

MarkerStyle MarkerStyle::fitted(int ring_count) {
    MarkerStyle s;
    int needed = 2 * (s.quiet_zone_px + ring_count * s.pitch_px + s.stroke_px + 1);
    if (needed > s.canvas_px) s.canvas_px = needed;
    return s;
}

std::array<Point, 4> MarkerGeometry::border_outer_corners() const {
    Span sp = span_for(canvas_px, border_half_width_px);
    double lo = sp.lo, hi = sp.hi;
    return {Point{lo, lo}, Point{hi, lo}, Point{hi, hi}, Point{lo, hi}};
}

MarkerGeometry layout_rings(const OiluNumber& n, const MarkerStyle& style) {
    int rings = static_cast<int>(n.length());
    style.validate(rings);

    MarkerGeometry g;
    g.canvas_px = style.canvas_px;
    g.stroke_px = style.stroke_px;
    g.pitch_px = style.pitch_px;
    g.center_px = {(style.canvas_px - 1) / 2.0, (style.canvas_px - 1) / 2.0};
    g.border_half_width_px = style.canvas_px / 2 - style.quiet_zone_px;
    g.ring_half_widths_px.reserve(n.length());
    g.ring_patterns.reserve(n.length());
    for (int i = 0; i < rings; ++i) {
        int h = g.border_half_width_px - (i + 1) * style.pitch_px;
        if (h <= style.stroke_px)
            throw LayoutOverflow("ring " + std::to_string(i) + " would collapse into the center");
        g.ring_half_widths_px.push_back(h);
        g.ring_patterns.push_back(digit_to_pattern(n.digit(static_cast<std::size_t>(i))));
    }
    return g;
}

Raster render_marker(const OiluNumber& n, const MarkerStyle& style) {
    MarkerGeometry g = layout_rings(n, style);
    const std::uint8_t bg = style.polarity == Polarity::dark_on_light ? 255 : 0;
    const std::uint8_t fg = static_cast<std::uint8_t>(255 - bg);

    Raster img(style.canvas_px, style.canvas_px, 1, bg);
    Span border = span_for(style.canvas_px, g.border_half_width_px);
    for (Side s : all_sides) draw_side(img, border, style.stroke_px, s, fg);
    for (int r = 0; r < g.ring_count(); ++r) {
        Span sp = span_for(style.canvas_px, g.ring_half_widths_px[static_cast<std::size_t>(r)]);
        for (Side s : all_sides)
            if (g.ring_patterns[static_cast<std::size_t>(r)].contains(s))
                draw_side(img, sp, style.stroke_px, s, fg);
    }
    return img;
}

std::int64_t expected_side_pixel_count(const MarkerGeometry& geom, int ring, Side side) {
    if (ring < 0 || ring >= geom.ring_count())
        throw InvalidRing("ring index " + std::to_string(ring) + " out of range");
    SidePattern p = geom.ring_patterns[static_cast<std::size_t>(ring)];
    if (!p.contains(side)) return 0;

    std::int64_t len = side_len(geom.canvas_px, geom.ring_half_widths_px[static_cast<std::size_t>(ring)]);
    std::int64_t s = geom.stroke_px;
    std::int64_t count = len * s;
    // The corner shared with the counter-clockwise neighbor belongs to
    // that neighbor when present.
    if (p.contains(ccw_neighbor(side))) count -= s * s;
    return count;
}

std::int64_t expected_border_pixel_count(const MarkerGeometry& geom) {
    std::int64_t len = side_len(geom.canvas_px, geom.border_half_width_px);
    std::int64_t s = geom.stroke_px;
    return 4 * (len * s - s * s);
}

}  // namespace oilu
