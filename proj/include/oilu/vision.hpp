#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oilu/geometry.hpp"
#include "oilu/raster.hpp"

namespace oilu {

// Which binary class holds the marker strokes.
enum class PolarityHint : std::uint8_t {
    automatic,         // the minority class is the strokes; ties go dark
    dark_foreground,   // dark pixels (<= threshold) are strokes
    light_foreground,  // light pixels (> threshold) are strokes
};

// 1-channel input is returned unchanged; 3-channel input is reduced with
// the 0.299/0.587/0.114 luminance weights, rounded to nearest.
Raster to_grayscale(const Raster& img);

// Histogram of an 8-bit grayscale image.
std::array<std::uint64_t, 256> intensity_histogram(const Raster& gray);

// Threshold t in [0,255] maximizing between-class variance, smallest t on
// ties. Throws DegenerateHistogram when every pixel has one intensity
// (callers fall back to the fixed midpoint 128).
int otsu_threshold(const std::array<std::uint64_t, 256>& histogram);
int otsu_threshold(const Raster& gray);

// Global threshold split: strokes become 1, the rest 0.
Raster binarize(const Raster& gray, int threshold, PolarityHint hint);

// Local mean-window threshold for uneven lighting; `offset` biases the
// threshold away from the mean.
Raster binarize_adaptive(const Raster& gray, int window_radius, int offset, PolarityHint hint);

struct ComponentLabeling {
    std::vector<std::int32_t> labels;  // 0 = background, else 1..count
    int count = 0;
    std::vector<std::int64_t> areas;   // areas[k-1] = pixel count of label k
};

// 8-connected labeling of the foreground.
ComponentLabeling label_components(const Raster& binary);

// Erases 8-connected foreground components smaller than min_area pixels.
Raster remove_small_components(const Raster& binary, std::int64_t min_area);

// Finds the marker border's outer quadrilateral: traces outer contours,
// approximates each to a polygon at 2% of its perimeter, keeps convex
// 4-gons with interior angles over 10 degrees and area at least
// min_area_px, and returns the largest with sub-pixel corners from
// per-side line fits. Throws NoMarkerFound.
Quad detect_quad(const Raster& binary, double min_area_px);

// Outer contour (pixel centers, clockwise on screen) of the component
// containing the given start pixel. Exposed for tests.
std::vector<Point> trace_outer_contour(const Raster& binary, int start_x, int start_y);

// Maps the quad to an out_size x out_size square (4-point homography,
// bilinear resampling). Works on grayscale or RGB input.
Raster rectify(const Raster& img, const Quad& quad, int out_size);

// Row-major 3x3 homography mapping unit-square-like destination pixel
// coordinates to source coordinates; exposed for the harness.
struct Homography {
    std::array<double, 9> m;
    Point apply(Point p) const {
        double w = m[6] * p.x + m[7] * p.y + m[8];
        return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
                (m[3] * p.x + m[4] * p.y + m[5]) / w};
    }
    Homography inverse() const;
};

// Homography sending the four `from` points to the four `to` points.
// Throws DegenerateQuad when the correspondence is rank-deficient.
Homography homography_from_points(const std::array<Point, 4>& from,
                                  const std::array<Point, 4>& to);

// Bilinear sample with clamp-to-edge; channel c.
double bilinear_sample(const Raster& img, double x, double y, int c = 0);

}  // namespace oilu
