#include "oilu/vision.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oilu/errors.hpp"

namespace oilu {

Raster to_grayscale(const Raster& img) {
    if (img.channels() == 1) return img;
    if (img.channels() != 3)
        throw UnsupportedFormat("grayscale conversion expects 1 or 3 channels");
    Raster out(img.width(), img.height(), 1);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double v = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
            out.at(x, y) = static_cast<std::uint8_t>(std::lround(v));
        }
    }
    return out;
}

std::array<std::uint64_t, 256> intensity_histogram(const Raster& gray) {
    std::array<std::uint64_t, 256> h{};
    for (std::uint8_t v : gray.data()) ++h[v];
    return h;
}

int otsu_threshold(const std::array<std::uint64_t, 256>& histogram) {
    std::uint64_t total = 0, total_sum = 0;
    int lo = 256, hi = -1;
    for (int v = 0; v < 256; ++v) {
        if (histogram[static_cast<std::size_t>(v)] == 0) continue;
        total += histogram[static_cast<std::size_t>(v)];
        total_sum += histogram[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (total == 0 || lo == hi)
        throw DegenerateHistogram("histogram has a single intensity; no threshold separates it");

    // Class 0 is intensity <= t. Walk t with running class moments; the
    // final variance expression is the one canonical double formula, so
    // plateaus tie bit-exactly and the smallest-t rule applies.
    int best_t = 0;
    double best_sb = -1.0;
    std::uint64_t n0 = 0, s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += histogram[static_cast<std::size_t>(t)];
        s0 += histogram[static_cast<std::size_t>(t)] * static_cast<std::uint64_t>(t);
        std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        std::uint64_t s1 = total_sum - s0;
        double dmu = static_cast<double>(s0) / static_cast<double>(n0) -
                     static_cast<double>(s1) / static_cast<double>(n1);
        double sb = static_cast<double>(n0) * static_cast<double>(n1) * dmu * dmu;
        if (sb > best_sb) {
            best_sb = sb;
            best_t = t;
        }
    }
    return best_t;
}

int otsu_threshold(const Raster& gray) {
    if (gray.empty()) throw DegenerateHistogram("empty image");
    return otsu_threshold(intensity_histogram(gray));
}

namespace {

Raster pick_stroke_class(const Raster& dark_mask, std::uint64_t dark_count,
                         std::uint64_t light_count, PolarityHint hint) {
    bool strokes_are_dark;
    switch (hint) {
        case PolarityHint::dark_foreground: strokes_are_dark = true; break;
        case PolarityHint::light_foreground: strokes_are_dark = false; break;
        default: strokes_are_dark = dark_count <= light_count; break;
    }
    if (strokes_are_dark) return dark_mask;
    Raster out = dark_mask;
    for (std::uint8_t& v : out.data()) v ^= 1u;
    return out;
}

}  // namespace

Raster binarize(const Raster& gray, int threshold, PolarityHint hint) {
    Raster dark(gray.width(), gray.height(), 1);
    std::uint64_t dark_count = 0;
    const auto& src = gray.data();
    auto& dst = dark.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        bool is_dark = src[i] <= threshold;
        dst[i] = is_dark ? 1 : 0;
        dark_count += is_dark;
    }
    return pick_stroke_class(dark, dark_count, gray.pixel_count() - dark_count, hint);
}

Raster binarize_adaptive(const Raster& gray, int window_radius, int offset, PolarityHint hint) {
    // The two local-deviation masks are not complements, so the global
    // minority rule cannot arbitrate between them (a spurious near-empty
    // mask would always win). Resolve the stroke polarity globally and
    // let the local mean only shape the threshold surface.
    if (hint == PolarityHint::automatic) {
        std::uint64_t dark_count = 0;
        try {
            int t = otsu_threshold(gray);
            for (std::uint8_t v : gray.data()) dark_count += v <= t;
        } catch (const DegenerateHistogram&) {
            dark_count = 0;  // constant image: call it dark strokes
        }
        hint = dark_count <= gray.pixel_count() - dark_count ? PolarityHint::dark_foreground
                                                             : PolarityHint::light_foreground;
    }
    const bool dark_strokes = hint == PolarityHint::dark_foreground;

    const int w = gray.width(), h = gray.height();
    // Summed-area table for O(1) window means.
    std::vector<std::uint64_t> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    auto s = [&](int x, int y) -> std::uint64_t& {
        return sat[static_cast<std::size_t>(y) * (w + 1) + x];
    };
    for (int y = 1; y <= h; ++y)
        for (int x = 1; x <= w; ++x)
            s(x, y) = gray.at(x - 1, y - 1) + s(x - 1, y) + s(x, y - 1) - s(x - 1, y - 1);

    Raster out(w, h, 1);
    for (int y = 0; y < h; ++y) {
        int y0 = std::max(0, y - window_radius), y1 = std::min(h - 1, y + window_radius);
        for (int x = 0; x < w; ++x) {
            int x0 = std::max(0, x - window_radius), x1 = std::min(w - 1, x + window_radius);
            std::uint64_t sum = s(x1 + 1, y1 + 1) - s(x0, y1 + 1) - s(x1 + 1, y0) + s(x0, y0);
            double mean = static_cast<double>(sum) /
                          (static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1));
            bool fg = dark_strokes ? gray.at(x, y) < mean - offset : gray.at(x, y) > mean + offset;
            out.at(x, y) = fg ? 1 : 0;
        }
    }
    return out;
}

ComponentLabeling label_components(const Raster& binary) {
    const int w = binary.width(), h = binary.height();
    ComponentLabeling out;
    out.labels.assign(binary.pixel_count(), 0);

    // Union-find over provisional labels; 8-connectivity, two passes.
    std::vector<std::int32_t> parent(1, 0);
    auto find = [&](std::int32_t a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto unite = [&](std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    auto lab = [&](int x, int y) -> std::int32_t& {
        return out.labels[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!binary.at(x, y)) continue;
            std::int32_t best = 0;
            const int nx[4] = {x - 1, x - 1, x, x + 1};
            const int ny[4] = {y, y - 1, y - 1, y - 1};
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w) continue;
                std::int32_t nl = lab(nx[k], ny[k]);
                if (nl == 0) continue;
                if (best == 0)
                    best = nl;
                else
                    unite(best, nl);
            }
            if (best == 0) {
                best = static_cast<std::int32_t>(parent.size());
                parent.push_back(best);
            }
            lab(x, y) = best;
        }
    }

    // Compress to contiguous labels in first-appearance order.
    std::vector<std::int32_t> remap(parent.size(), 0);
    for (std::int32_t& l : out.labels) {
        if (l == 0) continue;
        std::int32_t root = find(l);
        if (remap[static_cast<std::size_t>(root)] == 0) {
            remap[static_cast<std::size_t>(root)] = ++out.count;
            out.areas.push_back(0);
        }
        l = remap[static_cast<std::size_t>(root)];
        ++out.areas[static_cast<std::size_t>(l - 1)];
    }
    return out;
}

Raster remove_small_components(const Raster& binary, std::int64_t min_area) {
    if (min_area <= 0) return binary;
    ComponentLabeling cl = label_components(binary);
    Raster out = binary;
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        std::int32_t l = cl.labels[i];
        if (l != 0 && cl.areas[static_cast<std::size_t>(l - 1)] < min_area) out.data()[i] = 0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quadrilateral detection
// ---------------------------------------------------------------------------

namespace {

// Moore-neighbor tracing of the outer boundary, Jacob's stopping
// criterion. Start must be the component's first pixel in scan order.
std::vector<Point> moore_trace(const Raster& bin, int sx, int sy) {
    static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    auto fg = [&](int x, int y) { return bin.in_bounds(x, y) && bin.at(x, y) != 0; };

    std::vector<Point> contour;
    contour.push_back({static_cast<double>(sx), static_cast<double>(sy)});
    // Entered the start pixel from the left (scan order guarantees the
    // pixel left of start is background).
    int cx = sx, cy = sy, backtrack = 4;  // direction pointing at the left neighbor
    int first_exit = -1;
    for (;;) {
        int dir = (backtrack + 1) % 8;
        int step = -1;
        for (int k = 0; k < 8; ++k) {
            int d = (dir + k) % 8;
            if (fg(cx + dx[d], cy + dy[d])) {
                step = d;
                break;
            }
        }
        if (step < 0) break;  // isolated pixel
        if (cx == sx && cy == sy) {
            if (first_exit < 0)
                first_exit = step;
            else if (step == first_exit)
                break;  // completed the loop
        }
        cx += dx[step];
        cy += dy[step];
        if (cx == sx && cy == sy) {
            // Re-entered the start; loop closes when we leave the same way.
            backtrack = (step + 4) % 8;
            continue;
        }
        contour.push_back({static_cast<double>(cx), static_cast<double>(cy)});
        backtrack = (step + 4) % 8;
        if (contour.size() > 8 * bin.pixel_count()) break;  // safety net
    }
    return contour;
}

double point_segment_distance(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0) return norm(p - a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

void douglas_peucker(const std::vector<Point>& pts, std::size_t i0, std::size_t i1,
                     double eps, std::vector<std::size_t>& keep) {
    double worst = -1.0;
    std::size_t worst_i = i0;
    for (std::size_t i = i0 + 1; i < i1; ++i) {
        double d = point_segment_distance(pts[i], pts[i0], pts[i1]);
        if (d > worst) {
            worst = d;
            worst_i = i;
        }
    }
    if (worst > eps) {
        douglas_peucker(pts, i0, worst_i, eps, keep);
        keep.push_back(worst_i);
        douglas_peucker(pts, worst_i, i1, eps, keep);
    }
}

// Closed-curve polygon approximation: anchor at the two farthest-apart
// points, then split-and-merge each arc.
std::vector<std::size_t> approx_polygon(const std::vector<Point>& contour, double eps) {
    std::size_t a = 0;
    double best = -1.0;
    for (std::size_t i = 1; i < contour.size(); ++i) {
        double d = norm(contour[i] - contour[0]);
        if (d > best) {
            best = d;
            a = i;
        }
    }
    std::size_t b = 0;
    best = -1.0;
    for (std::size_t i = 0; i < contour.size(); ++i) {
        double d = norm(contour[i] - contour[a]);
        if (d > best) {
            best = d;
            b = i;
        }
    }
    if (a > b) std::swap(a, b);

    std::vector<std::size_t> keep;
    keep.push_back(a);
    douglas_peucker(contour, a, b, eps, keep);
    keep.push_back(b);
    // Wrap-around arc b -> end -> a as one unrolled chain.
    std::vector<Point> tail;
    std::vector<std::size_t> tail_idx;
    for (std::size_t i = b; i < contour.size(); ++i) {
        tail.push_back(contour[i]);
        tail_idx.push_back(i);
    }
    for (std::size_t i = 0; i <= a; ++i) {
        tail.push_back(contour[i]);
        tail_idx.push_back(i);
    }
    std::vector<std::size_t> keep_tail;
    douglas_peucker(tail, 0, tail.size() - 1, eps, keep_tail);
    for (std::size_t k : keep_tail) keep.push_back(tail_idx[k]);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
}

double polygon_area(const std::vector<Point>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        a += cross(pts[i], pts[(i + 1) % pts.size()]);
    return std::abs(a) / 2.0;
}

bool convex_with_min_angle(const std::array<Point, 4>& c, double min_angle_deg) {
    int sign = 0;
    for (int i = 0; i < 4; ++i) {
        Point u = c[static_cast<std::size_t>((i + 1) % 4)] - c[static_cast<std::size_t>(i)];
        Point v = c[static_cast<std::size_t>((i + 2) % 4)] - c[static_cast<std::size_t>((i + 1) % 4)];
        double cr = cross(u, v);
        int s = cr > 0 ? 1 : (cr < 0 ? -1 : 0);
        if (s == 0) return false;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            return false;
        // sin(turn) below sin(min_angle) means the interior angle is
        // within min_angle of 0 or 180 degrees.
        if (std::abs(cr) < std::sin(min_angle_deg * std::numbers::pi / 180.0) * norm(u) * norm(v))
            return false;
    }
    return true;
}

// Total-least-squares line through a set of points: returns (point,
// direction). Uses the dominant eigenvector of the 2x2 scatter matrix.
std::pair<Point, Point> fit_line(const std::vector<Point>& pts) {
    Point mean{0, 0};
    for (Point p : pts) mean = mean + p;
    mean = (1.0 / static_cast<double>(pts.size())) * mean;
    double sxx = 0, sxy = 0, syy = 0;
    for (Point p : pts) {
        Point d = p - mean;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    double lambda = tr / 2 + std::sqrt(std::max(0.0, tr * tr / 4 - det));
    Point dir = std::abs(sxy) > 1e-12 ? Point{lambda - syy, sxy}
                                      : (sxx >= syy ? Point{1, 0} : Point{0, 1});
    double n = norm(dir);
    if (n > 0) dir = (1.0 / n) * dir;
    return {mean, dir};
}

bool line_intersection(std::pair<Point, Point> l1, std::pair<Point, Point> l2, Point& out) {
    double denom = cross(l1.second, l2.second);
    if (std::abs(denom) < 1e-9) return false;
    double t = cross(l2.first - l1.first, l2.second) / denom;
    out = l1.first + t * l1.second;
    return true;
}

// Clockwise-on-screen order starting at the corner nearest the origin.
std::array<Point, 4> order_corners(std::array<Point, 4> c) {
    Point ctr{(c[0].x + c[1].x + c[2].x + c[3].x) / 4,
              (c[0].y + c[1].y + c[2].y + c[3].y) / 4};
    std::sort(c.begin(), c.end(), [&](Point a, Point b) {
        return std::atan2(a.y - ctr.y, a.x - ctr.x) < std::atan2(b.y - ctr.y, b.x - ctr.x);
    });
    int first = 0;
    double best = 1e300;
    for (int i = 0; i < 4; ++i) {
        double d = c[static_cast<std::size_t>(i)].x * c[static_cast<std::size_t>(i)].x +
                   c[static_cast<std::size_t>(i)].y * c[static_cast<std::size_t>(i)].y;
        if (d < best) {
            best = d;
            first = i;
        }
    }
    std::array<Point, 4> out;
    for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>((first + i) % 4)];
    return out;
}

}  // namespace

std::vector<Point> trace_outer_contour(const Raster& binary, int start_x, int start_y) {
    return moore_trace(binary, start_x, start_y);
}

Quad detect_quad(const Raster& binary, double min_area_px) {
    ComponentLabeling cl = label_components(binary);
    if (cl.count == 0) throw NoMarkerFound("no foreground components");

    // First pixel of each component in scan order (trace start points).
    std::vector<int> start_x(static_cast<std::size_t>(cl.count), -1);
    std::vector<int> start_y(static_cast<std::size_t>(cl.count), -1);
    for (int y = 0; y < binary.height(); ++y) {
        for (int x = 0; x < binary.width(); ++x) {
            std::int32_t l = cl.labels[static_cast<std::size_t>(y) * binary.width() + x];
            if (l != 0 && start_x[static_cast<std::size_t>(l - 1)] < 0) {
                start_x[static_cast<std::size_t>(l - 1)] = x;
                start_y[static_cast<std::size_t>(l - 1)] = y;
            }
        }
    }

    bool found = false;
    double best_area = 0.0;
    std::array<Point, 4> best{};
    for (int comp = 0; comp < cl.count; ++comp) {
        if (cl.areas[static_cast<std::size_t>(comp)] < 8) continue;
        std::vector<Point> contour = moore_trace(binary, start_x[static_cast<std::size_t>(comp)],
                                                 start_y[static_cast<std::size_t>(comp)]);
        if (contour.size() < 8) continue;
        double perimeter = 0.0;
        for (std::size_t i = 0; i < contour.size(); ++i)
            perimeter += norm(contour[(i + 1) % contour.size()] - contour[i]);
        std::vector<std::size_t> poly = approx_polygon(contour, 0.02 * perimeter);
        if (poly.size() != 4) continue;

        std::array<Point, 4> corners;
        for (int i = 0; i < 4; ++i) corners[static_cast<std::size_t>(i)] = contour[poly[static_cast<std::size_t>(i)]];
        if (!convex_with_min_angle(corners, 10.0)) continue;

        // Refine: fit a line to each side's contour points (trimmed near
        // the corners) and intersect adjacent lines.
        std::array<Point, 4> refined = corners;
        std::array<std::pair<Point, Point>, 4> lines;
        bool lines_ok = true;
        for (int s = 0; s < 4; ++s) {
            std::size_t i0 = poly[static_cast<std::size_t>(s)];
            std::size_t i1 = poly[static_cast<std::size_t>((s + 1) % 4)];
            std::vector<Point> side_pts;
            std::size_t n = contour.size();
            std::size_t len = (i1 + n - i0) % n;
            if (len == 0) len = n;
            std::size_t trim = std::max<std::size_t>(1, len / 8);
            for (std::size_t k = trim; k + trim <= len; ++k)
                side_pts.push_back(contour[(i0 + k) % n]);
            if (side_pts.size() < 2) {
                lines_ok = false;
                break;
            }
            lines[static_cast<std::size_t>(s)] = fit_line(side_pts);
        }
        if (lines_ok) {
            for (int s = 0; s < 4; ++s) {
                Point p;
                if (line_intersection(lines[static_cast<std::size_t>((s + 3) % 4)],
                                      lines[static_cast<std::size_t>(s)], p) &&
                    norm(p - corners[static_cast<std::size_t>(s)]) < 8.0)
                    refined[static_cast<std::size_t>(s)] = p;
            }
        }
        if (!convex_with_min_angle(refined, 10.0)) refined = corners;

        std::vector<Point> quad_pts(refined.begin(), refined.end());
        double area = polygon_area(quad_pts);
        if (area < min_area_px || area <= best_area) continue;
        best_area = area;
        best = refined;
        found = true;
    }
    if (!found) throw NoMarkerFound("no convex quadrilateral candidate");
    return Quad{order_corners(best)};
}

// ---------------------------------------------------------------------------
// Homography / rectification
// ---------------------------------------------------------------------------

Homography Homography::inverse() const {
    const std::array<double, 9>& a = m;
    std::array<double, 9> inv;
    inv[0] = a[4] * a[8] - a[5] * a[7];
    inv[1] = a[2] * a[7] - a[1] * a[8];
    inv[2] = a[1] * a[5] - a[2] * a[4];
    inv[3] = a[5] * a[6] - a[3] * a[8];
    inv[4] = a[0] * a[8] - a[2] * a[6];
    inv[5] = a[2] * a[3] - a[0] * a[5];
    inv[6] = a[3] * a[7] - a[4] * a[6];
    inv[7] = a[1] * a[6] - a[0] * a[7];
    inv[8] = a[0] * a[4] - a[1] * a[3];
    double det = a[0] * inv[0] + a[1] * inv[3] + a[2] * inv[6];
    if (std::abs(det) < 1e-12) throw DegenerateQuad("homography is singular");
    for (double& v : inv) v /= det;
    return Homography{inv};
}

Homography homography_from_points(const std::array<Point, 4>& from,
                                  const std::array<Point, 4>& to) {
    // Direct linear transform on 4 correspondences with h33 = 1;
    // Gaussian elimination with partial pivoting on the 8x8 system.
    double a[8][9] = {};
    for (int i = 0; i < 4; ++i) {
        double x = from[static_cast<std::size_t>(i)].x, y = from[static_cast<std::size_t>(i)].y;
        double u = to[static_cast<std::size_t>(i)].x, v = to[static_cast<std::size_t>(i)].y;
        double* r1 = a[2 * i];
        r1[0] = x; r1[1] = y; r1[2] = 1; r1[6] = -u * x; r1[7] = -u * y; r1[8] = u;
        double* r2 = a[2 * i + 1];
        r2[3] = x; r2[4] = y; r2[5] = 1; r2[6] = -v * x; r2[7] = -v * y; r2[8] = v;
    }
    for (int col = 0; col < 8; ++col) {
        int piv = col;
        for (int r = col + 1; r < 8; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-10)
            throw DegenerateQuad("degenerate correspondence for homography");
        if (piv != col)
            for (int c = 0; c < 9; ++c) std::swap(a[piv][c], a[col][c]);
        for (int r = 0; r < 8; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (int c = col; c < 9; ++c) a[r][c] -= f * a[col][c];
        }
    }
    Homography h{};
    for (int i = 0; i < 8; ++i) h.m[static_cast<std::size_t>(i)] = a[i][8] / a[i][i];
    h.m[8] = 1.0;
    return h;
}

double bilinear_sample(const Raster& img, double x, double y, int c) {
    x = std::clamp(x, 0.0, static_cast<double>(img.width() - 1));
    y = std::clamp(y, 0.0, static_cast<double>(img.height() - 1));
    int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
    int x1 = std::min(x0 + 1, img.width() - 1), y1 = std::min(y0 + 1, img.height() - 1);
    double fx = x - x0, fy = y - y0;
    double v = (1 - fx) * (1 - fy) * img.at(x0, y0, c) + fx * (1 - fy) * img.at(x1, y0, c) +
               (1 - fx) * fy * img.at(x0, y1, c) + fx * fy * img.at(x1, y1, c);
    return v;
}

Raster rectify(const Raster& img, const Quad& quad, int out_size) {
    if (out_size < 2) throw DegenerateQuad("rectify output must be at least 2x2");
    double s = out_size - 1;
    std::array<Point, 4> square{Point{0, 0}, Point{s, 0}, Point{s, s}, Point{0, s}};
    // Map output pixels back into the source quad.
    Homography h = homography_from_points(square, quad.corners);
    Raster out(out_size, out_size, img.channels());
    for (int y = 0; y < out_size; ++y) {
        for (int x = 0; x < out_size; ++x) {
            Point src = h.apply({static_cast<double>(x), static_cast<double>(y)});
            for (int c = 0; c < img.channels(); ++c)
                out.at(x, y, c) =
                    static_cast<std::uint8_t>(std::lround(bilinear_sample(img, src.x, src.y, c)));
        }
    }
    return out;
}

}  // namespace oilu
