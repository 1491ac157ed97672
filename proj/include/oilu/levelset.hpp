#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oilu/codec.hpp"
#include "oilu/geometry.hpp"
#include "oilu/raster.hpp"

namespace oilu {

// Per-pixel depth from the detected quadrilateral border: 0 on the
// rasterized boundary, growing inward, masked outside. Squared distances
// are kept exact so the transform can be checked bit-for-bit against a
// brute-force oracle.
struct DistanceMap {
    int width = 0;
    int height = 0;
    std::vector<std::int64_t> sq;      // squared Euclidean distance to the boundary
    std::vector<std::uint8_t> inside;  // 1 inside or on the quad, 0 masked
    double max_depth = 0.0;            // W, over the inside region

    double depth_at(int x, int y) const;
    bool is_inside(int x, int y) const {
        return inside[static_cast<std::size_t>(y) * width + x] != 0;
    }
};

// Exact squared Euclidean distance of every pixel to the nearest seed
// (two-pass separable lower-envelope transform; envelope comparisons in
// exact integer arithmetic). Pixels in seed-free images get kEdtInfinity.
inline constexpr std::int64_t kEdtInfinity = 1'000'000'000'000LL;
std::vector<std::int64_t> edt_squared(const std::vector<std::uint8_t>& seeds, int width,
                                      int height);

// Distance map of the domain interior from the quad's rasterized
// boundary polygon. Throws DegenerateQuad.
DistanceMap distance_map(const Quad& quad, int width, int height);

// Depth bands occupied by the concentric rings, estimated from the depth
// histogram of stroke pixels. Centers are in depth units, outermost
// (shallowest) code ring first; the border ring's own peak is dropped.
struct RingBands {
    double pitch_estimate_px = 0.0;
    double border_center = 0.0;
    std::vector<double> centers;
    double half_width = 0.0;

    int ring_count() const { return static_cast<int>(centers.size()); }
};

RingBands estimate_ring_bands(const DistanceMap& dm, const Raster& strokes,
                              std::optional<int> ring_count_hint,
                              double half_width_factor = 0.4);

// Ring index per pixel: 1-based band index for stroke pixels within
// half_width of a band center, 0 (noise) otherwise.
std::vector<std::int32_t> assign_ring_labels(const DistanceMap& dm, const RingBands& bands,
                                             const Raster& strokes);

// Which of the four diagonal triangles of the quad contains the point.
// Points exactly on a diagonal fall to the triangle on the
// counter-clockwise side of that diagonal (center resolves to RIGHT).
// Throws OutOfDomain for points outside the quad.
Side side_of(Point p, const Quad& quad);

// Stroke-pixel counts per (ring, side) triangle cell.
struct OccupancyTable {
    std::vector<std::array<std::int64_t, 4>> counts;  // [ring][side]

    int ring_count() const { return static_cast<int>(counts.size()); }
    std::int64_t at(int ring, Side s) const {
        return counts[static_cast<std::size_t>(ring)][static_cast<std::size_t>(s)];
    }
    std::int64_t max_count(int ring) const;
    std::int64_t total() const;
};

OccupancyTable occupancy(const std::vector<std::int32_t>& ring_labels, int width, int height,
                         const Quad& quad, int ring_count);

struct BitThresholds {
    double beta = 0.5;           // relative: side present if count >= beta * ring max
    double floor_factor = 0.1;   // absolute floor as a fraction of a full side's pixels
    double stroke_ratio = 0.25;  // assumed stroke/pitch ratio for the floor estimate
};

// One ring's threshold verdict. `pattern` is empty when the counts do
// not form a valid glyph (all-below-floor, empty, or an opposite pair).
struct RingBits {
    std::optional<SidePattern> pattern;
    double margin = 0.0;  // (min present count - threshold)/threshold in [0,1]; 0 if undecodable
    std::int64_t threshold = 0;
};

// Applies the presence threshold per ring: a side is present when its
// count reaches max(beta * ring max, floor). The floor scales with the
// ring's side length so shrinking inner rings are judged fairly.
std::vector<RingBits> bits_from_counts(const OccupancyTable& table, const RingBands& bands,
                                       double max_depth, const BitThresholds& thresholds = {});

}  // namespace oilu
