#include "oilu/levelset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "oilu/errors.hpp"

namespace oilu {

double DistanceMap::depth_at(int x, int y) const {
    std::size_t i = static_cast<std::size_t>(y) * width + x;
    if (!inside[i]) return 0.0;
    return std::sqrt(static_cast<double>(sq[i]));
}

// ---------------------------------------------------------------------------
// Exact Euclidean distance transform
// ---------------------------------------------------------------------------

namespace {

// Below any real intersection (those are bounded by -kEdtInfinity) yet
// safe inside the int64 cross products of the envelope comparisons.
constexpr std::int64_t kNegInfNumerator = -100 * kEdtInfinity;

// One row of the squared-distance lower envelope (parabolas rooted at
// (i, f[i])). All envelope comparisons are exact integer cross products,
// so the output matches all-pairs brute force bit for bit.
void envelope_1d(const std::int64_t* f, int n, std::int64_t* out, int* v, std::int64_t* zn,
                 std::int64_t* zd) {
    // Intersection abscissa of parabolas at p < q is
    //   s = ((f[q]+q^2) - (f[p]+p^2)) / (2(q-p)),
    // kept as the exact rational zn/zd (zd > 0).
    int k = 0;
    v[0] = 0;
    zn[0] = kNegInfNumerator;
    zd[0] = 1;
    for (int q = 1; q < n; ++q) {
        std::int64_t fq = f[q] + static_cast<std::int64_t>(q) * q;
        for (;;) {
            int p = v[k];
            std::int64_t num = fq - (f[p] + static_cast<std::int64_t>(p) * p);
            std::int64_t den = 2 * static_cast<std::int64_t>(q - p);
            // s > z[k]  <=>  num * zd[k] > zn[k] * den (both dens > 0)
            if (num * zd[k] > zn[k] * den) {
                ++k;
                v[k] = q;
                zn[k] = num;
                zd[k] = den;
                break;
            }
            if (--k < 0) {
                k = 0;
                v[0] = q;
                zn[0] = kNegInfNumerator;
                zd[0] = 1;
                break;
            }
        }
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
        // advance while z[j+1] < q
        while (j < k && zn[j + 1] < static_cast<std::int64_t>(q) * zd[j + 1]) ++j;
        std::int64_t d = q - v[j];
        out[q] = d * d + f[v[j]];
    }
}

}  // namespace

std::vector<std::int64_t> edt_squared(const std::vector<std::uint8_t>& seeds, int width,
                                      int height) {
    std::vector<std::int64_t> dist(static_cast<std::size_t>(width) * height);

    // Pass 1: per column, squared distance to the nearest seed in that
    // column (two linear scans).
    for (int x = 0; x < width; ++x) {
        std::int64_t run = kEdtInfinity;
        for (int y = 0; y < height; ++y) {
            if (seeds[static_cast<std::size_t>(y) * width + x])
                run = 0;
            else if (run < kEdtInfinity)
                ++run;
            dist[static_cast<std::size_t>(y) * width + x] = run;
        }
        run = kEdtInfinity;
        for (int y = height - 1; y >= 0; --y) {
            std::size_t i = static_cast<std::size_t>(y) * width + x;
            if (seeds[i])
                run = 0;
            else if (run < kEdtInfinity)
                ++run;
            if (run < dist[i]) dist[i] = run;
        }
        for (int y = 0; y < height; ++y) {
            std::size_t i = static_cast<std::size_t>(y) * width + x;
            if (dist[i] < kEdtInfinity) dist[i] *= dist[i];
        }
    }

    // Pass 2: per row, lower envelope across columns.
    std::vector<std::int64_t> f(static_cast<std::size_t>(width));
    std::vector<std::int64_t> out(static_cast<std::size_t>(width));
    std::vector<int> v(static_cast<std::size_t>(width));
    std::vector<std::int64_t> zn(static_cast<std::size_t>(width) + 1);
    std::vector<std::int64_t> zd(static_cast<std::size_t>(width) + 1);
    for (int y = 0; y < height; ++y) {
        std::int64_t* row = dist.data() + static_cast<std::size_t>(y) * width;
        std::copy(row, row + width, f.begin());
        envelope_1d(f.data(), width, out.data(), v.data(), zn.data(), zd.data());
        for (int x = 0; x < width; ++x) row[x] = std::min(out[static_cast<std::size_t>(x)], kEdtInfinity);
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Distance map from a quad boundary
// ---------------------------------------------------------------------------

namespace {

void rasterize_segment(Point a, Point b, int width, int height, std::vector<std::uint8_t>& mask) {
    double len = norm(b - a);
    int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
    for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        int x = static_cast<int>(std::lround(a.x + t * (b.x - a.x)));
        int y = static_cast<int>(std::lround(a.y + t * (b.y - a.y)));
        if (x >= 0 && y >= 0 && x < width && y < height)
            mask[static_cast<std::size_t>(y) * width + x] = 1;
    }
}

}  // namespace

DistanceMap distance_map(const Quad& quad, int width, int height) {
    if (quad.area() < 4.0) throw DegenerateQuad("quad area is near zero");

    std::vector<std::uint8_t> boundary(static_cast<std::size_t>(width) * height, 0);
    for (int i = 0; i < 4; ++i)
        rasterize_segment(quad.corners[static_cast<std::size_t>(i)],
                          quad.corners[static_cast<std::size_t>((i + 1) % 4)], width, height,
                          boundary);
    bool any = std::any_of(boundary.begin(), boundary.end(), [](std::uint8_t v) { return v != 0; });
    if (!any) throw DegenerateQuad("quad boundary lies outside the raster");

    DistanceMap dm;
    dm.width = width;
    dm.height = height;
    dm.sq = edt_squared(boundary, width, height);
    dm.inside.assign(static_cast<std::size_t>(width) * height, 0);

    double max_sq = 0.0;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * width + x;
            if (quad.contains({static_cast<double>(x), static_cast<double>(y)})) {
                dm.inside[i] = 1;
                max_sq = std::max(max_sq, static_cast<double>(dm.sq[i]));
            }
        }
    }
    dm.max_depth = std::sqrt(max_sq);
    return dm;
}

// ---------------------------------------------------------------------------
// Ring bands
// ---------------------------------------------------------------------------

RingBands estimate_ring_bands(const DistanceMap& dm, const Raster& strokes,
                              std::optional<int> ring_count_hint, double half_width_factor) {
    if (strokes.width() != dm.width || strokes.height() != dm.height)
        throw OutOfDomain("stroke raster does not match the distance map domain");

    // Depth histogram over stroke pixels, 1 px bins, normalized by the
    // level-set circumference (inside pixels per bin). The normalized
    // value is the fraction of that depth's level set covered by
    // strokes, which puts shrinking inner rings on the same scale as the
    // border instead of letting the outermost perimeter dominate.
    std::size_t bins = static_cast<std::size_t>(std::ceil(dm.max_depth)) + 2;
    std::vector<double> stroke_hist(bins, 0.0), band_size(bins, 0.0);
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!dm.is_inside(x, y)) continue;
            auto bin = static_cast<std::size_t>(dm.depth_at(x, y));
            band_size[bin] += 1.0;
            if (strokes.at(x, y)) stroke_hist[bin] += 1.0;
        }
    }
    if (std::all_of(stroke_hist.begin(), stroke_hist.end(), [](double v) { return v == 0.0; }))
        throw NoRingsFound("no stroke pixels inside the quad");

    std::vector<double> hist(bins, 0.0);
    for (std::size_t i = 0; i < bins; ++i)
        if (band_size[i] >= 16.0) hist[i] = stroke_hist[i] / band_size[i];

    // 3-bin moving average (zero padded).
    std::vector<double> sm(hist.size());
    for (std::size_t i = 0; i < hist.size(); ++i) {
        double s = hist[i];
        if (i > 0) s += hist[i - 1];
        if (i + 1 < hist.size()) s += hist[i + 1];
        sm[i] = s / 3.0;
    }
    double global_max = *std::max_element(sm.begin(), sm.end());

    // Local maxima with height at least 20% of the global max; plateaus
    // keep their first bin.
    struct Peak {
        int bin;
        double height;
        double center;
    };
    std::vector<Peak> candidates;
    for (std::size_t i = 0; i < sm.size(); ++i) {
        double left = i > 0 ? sm[i - 1] : -1.0;
        double right = i + 1 < sm.size() ? sm[i + 1] : 0.0;
        if (sm[i] > left && sm[i] >= right && sm[i] >= 0.2 * global_max) {
            // Sub-bin refinement: centroid of the three smoothing bins.
            double w0 = i > 0 ? sm[i - 1] : 0.0, w1 = sm[i], w2 = i + 1 < sm.size() ? sm[i + 1] : 0.0;
            double num = w0 * (static_cast<double>(i) - 0.5) + w1 * (static_cast<double>(i) + 0.5) +
                         w2 * (static_cast<double>(i) + 1.5);
            candidates.push_back({static_cast<int>(i), sm[i], num / (w0 + w1 + w2)});
        }
    }

    // Enforce 3 px minimum separation, strongest first.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Peak& a, const Peak& b) { return a.height > b.height; });
    std::vector<Peak> kept;
    for (const Peak& p : candidates) {
        bool clash = std::any_of(kept.begin(), kept.end(),
                                 [&](const Peak& q) { return std::abs(q.bin - p.bin) < 3; });
        if (!clash) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const Peak& a, const Peak& b) { return a.bin < b.bin; });

    if (kept.size() < 2)
        throw NoRingsFound("found " + std::to_string(kept.size()) +
                           " depth peaks; need the border plus at least one code ring");

    RingBands bands;
    bands.border_center = kept.front().center;  // shallowest peak = border ring
    std::vector<Peak> code(kept.begin() + 1, kept.end());

    if (ring_count_hint) {
        if (static_cast<int>(code.size()) < *ring_count_hint)
            throw NoRingsFound("only " + std::to_string(code.size()) +
                               " code peaks for a hint of " + std::to_string(*ring_count_hint));
        std::stable_sort(code.begin(), code.end(),
                         [](const Peak& a, const Peak& b) { return a.height > b.height; });
        code.resize(static_cast<std::size_t>(*ring_count_hint));
        std::sort(code.begin(), code.end(), [](const Peak& a, const Peak& b) { return a.bin < b.bin; });
    }

    for (const Peak& p : code) bands.centers.push_back(p.center);

    // Pitch from consecutive code-ring gaps; a single ring falls back to
    // the border-to-ring gap.
    std::vector<double> gaps;
    for (std::size_t i = 1; i < bands.centers.size(); ++i)
        gaps.push_back(bands.centers[i] - bands.centers[i - 1]);
    if (gaps.empty()) gaps.push_back(bands.centers[0] - bands.border_center);
    std::vector<double> sorted_gaps = gaps;
    std::sort(sorted_gaps.begin(), sorted_gaps.end());
    bands.pitch_estimate_px = sorted_gaps[sorted_gaps.size() / 2];

    for (double g : gaps) {
        if (g < 0.7 * bands.pitch_estimate_px || g > 1.3 * bands.pitch_estimate_px)
            throw AmbiguousBands("ring spacing " + std::to_string(g) +
                                 " px deviates more than 30% from the pitch estimate " +
                                 std::to_string(bands.pitch_estimate_px) + " px");
    }
    bands.half_width = half_width_factor * bands.pitch_estimate_px;
    return bands;
}

std::vector<std::int32_t> assign_ring_labels(const DistanceMap& dm, const RingBands& bands,
                                             const Raster& strokes) {
    std::vector<std::int32_t> labels(static_cast<std::size_t>(dm.width) * dm.height, 0);
    for (int y = 0; y < dm.height; ++y) {
        for (int x = 0; x < dm.width; ++x) {
            if (!strokes.at(x, y) || !dm.is_inside(x, y)) continue;
            double d = dm.depth_at(x, y);
            for (std::size_t r = 0; r < bands.centers.size(); ++r) {
                if (std::abs(d - bands.centers[r]) <= bands.half_width) {
                    labels[static_cast<std::size_t>(y) * dm.width + x] =
                        static_cast<std::int32_t>(r + 1);
                    break;
                }
            }
        }
    }
    return labels;
}

// ---------------------------------------------------------------------------
// Triangle partition and occupancy
// ---------------------------------------------------------------------------

Side side_of(Point p, const Quad& quad) {
    if (!quad.contains(p)) throw OutOfDomain("point outside the quad");
    // Diagonals c0->c2 and c1->c3 split the quad into four triangles,
    // each touching one edge. Ties (points on a diagonal) fall to the
    // counter-clockwise side, which makes the exact center RIGHT.
    double s1 = cross(quad.corners[2] - quad.corners[0], p - quad.corners[0]);
    double s2 = cross(quad.corners[3] - quad.corners[1], p - quad.corners[1]);
    if (s1 <= 0) return s2 > 0 ? Side::top : Side::right;
    return s2 > 0 ? Side::left : Side::bottom;
}

std::int64_t OccupancyTable::max_count(int ring) const {
    const auto& row = counts[static_cast<std::size_t>(ring)];
    return *std::max_element(row.begin(), row.end());
}

std::int64_t OccupancyTable::total() const {
    std::int64_t t = 0;
    for (const auto& row : counts)
        for (std::int64_t c : row) t += c;
    return t;
}

OccupancyTable occupancy(const std::vector<std::int32_t>& ring_labels, int width, int height,
                         const Quad& quad, int ring_count) {
    OccupancyTable table;
    table.counts.assign(static_cast<std::size_t>(ring_count), {0, 0, 0, 0});
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::int32_t r = ring_labels[static_cast<std::size_t>(y) * width + x];
            if (r <= 0 || r > ring_count) continue;
            Point p{static_cast<double>(x), static_cast<double>(y)};
            if (!quad.contains(p)) continue;
            Side s = side_of(p, quad);
            ++table.counts[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(s)];
        }
    }
    return table;
}

std::vector<RingBits> bits_from_counts(const OccupancyTable& table, const RingBands& bands,
                                       double max_depth, const BitThresholds& thresholds) {
    if (table.ring_count() == 0) throw NoRingsFound("empty occupancy table");
    std::vector<RingBits> out;
    out.reserve(static_cast<std::size_t>(table.ring_count()));
    for (int r = 0; r < table.ring_count(); ++r) {
        // A fully present side at this ring's depth covers roughly
        // side_length x stroke pixels; the absolute floor is a fraction
        // of that.
        double side_len = std::max(1.0, 2.0 * (max_depth - bands.centers[static_cast<std::size_t>(r)]));
        double stroke_est = std::max(1.0, thresholds.stroke_ratio * bands.pitch_estimate_px);
        double floor_abs = thresholds.floor_factor * side_len * stroke_est;
        std::int64_t thr = static_cast<std::int64_t>(std::ceil(
            std::max(thresholds.beta * static_cast<double>(table.max_count(r)), floor_abs)));
        thr = std::max<std::int64_t>(thr, 1);

        RingBits bits;
        bits.threshold = thr;
        SidePattern p;
        std::int64_t min_present = std::numeric_limits<std::int64_t>::max();
        for (Side s : all_sides) {
            std::int64_t c = table.at(r, s);
            if (c >= thr) {
                p = p.with(s);
                min_present = std::min(min_present, c);
            }
        }
        if (p.valid()) {
            bits.pattern = p;
            bits.margin = std::clamp((static_cast<double>(min_present) - static_cast<double>(thr)) /
                                         static_cast<double>(thr),
                                     0.0, 1.0);
        }
        out.push_back(bits);
    }
    return out;
}

}  // namespace oilu
