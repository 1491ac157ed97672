#include "doctest.h"

#include <cmath>
#include <random>

#include "oilu/levelset.hpp"
#include "oilu/render.hpp"
#include "oilu/selftest.hpp"
#include "oilu/vision.hpp"

using namespace oilu;

namespace {

Quad square_quad(double lo, double hi) {
    return Quad{{Point{lo, lo}, Point{hi, lo}, Point{hi, hi}, Point{lo, hi}}};
}

struct CleanScene {
    MarkerGeometry geom;
    Raster strokes;
    DistanceMap dm;
    Quad quad;
};

CleanScene clean_scene(const char* code) {
    MarkerStyle style;
    OiluNumber n = OiluNumber::parse(code);
    CleanScene s{layout_rings(n, style), {}, {}, {}};
    Raster img = render_marker(n, style);
    s.strokes = binarize(img, otsu_threshold(img), PolarityHint::automatic);
    s.quad = Quad{s.geom.border_outer_corners()};
    s.dm = distance_map(s.quad, img.width(), img.height());
    return s;
}

// Geometric ring index of a stroke pixel from the marker layout
// (0 = border or noise, 1..R = code rings).
int true_ring_of(const MarkerGeometry& g, int x, int y) {
    double c = g.center_px.x;
    double r = std::max(std::abs(x - c), std::abs(y - c));
    for (int i = 0; i < g.ring_count(); ++i) {
        double h = g.ring_half_widths_px[static_cast<std::size_t>(i)];
        if (r <= h + 0.5 && r > h - g.stroke_px + 0.5 - 1e-9) return i + 1;
    }
    return 0;
}

}  // namespace

TEST_CASE("distance map of an axis-aligned square matches the analytic depth") {
    const int S = 101;
    Quad q = square_quad(10, 10 + S - 1);
    DistanceMap dm = distance_map(q, 128, 128);

    for (int y = 12; y < 10 + S - 2; y += 7) {
        for (int x = 12; x < 10 + S - 2; x += 7) {
            double xo = x - 10, yo = y - 10;
            double analytic = std::min({xo, yo, S - 1 - xo, S - 1 - yo});
            CHECK(std::abs(dm.depth_at(x, y) - analytic) <= 1.0);
        }
    }
    // Maximum depth at the center.
    CHECK(dm.max_depth == doctest::Approx((S - 1) / 2.0).epsilon(0.02));
    CHECK(dm.is_inside(60, 60));
    CHECK_FALSE(dm.is_inside(5, 5));
    // Boundary pixels are the zero level set.
    CHECK(dm.depth_at(10, 60) == 0.0);
}

TEST_CASE("edt matches brute force on random masks") {
    std::mt19937_64 rng(11);
    for (int m = 0; m < 100; ++m) {
        std::vector<std::uint8_t> seeds(32 * 32, 0);
        int n = 1 + static_cast<int>(rng() % 50);
        for (int i = 0; i < n; ++i) seeds[rng() % seeds.size()] = 1;
        CHECK(edt_squared(seeds, 32, 32) == selftest::brute_force_edt_squared(seeds, 32, 32));
    }
    // Non-square domains too.
    std::vector<std::uint8_t> seeds(48 * 16, 0);
    seeds[5] = seeds[300] = seeds[700] = 1;
    CHECK(edt_squared(seeds, 48, 16) == selftest::brute_force_edt_squared(seeds, 48, 16));
}

TEST_CASE("distance map is 1-Lipschitz") {
    CleanScene s = clean_scene("4670");
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 1000) {
        int x1 = static_cast<int>(rng() % 512), y1 = static_cast<int>(rng() % 512);
        int x2 = static_cast<int>(rng() % 512), y2 = static_cast<int>(rng() % 512);
        if (!s.dm.is_inside(x1, y1) || !s.dm.is_inside(x2, y2)) continue;
        double dd = std::abs(s.dm.depth_at(x1, y1) - s.dm.depth_at(x2, y2));
        double dp = std::hypot(x1 - x2, y1 - y2);
        CHECK(dd <= dp + 1e-6);
        ++checked;
    }
}

TEST_CASE("degenerate quads are rejected") {
    Quad line{{Point{0, 0}, Point{10, 0}, Point{20, 0}, Point{30, 0}}};
    CHECK_THROWS_AS(distance_map(line, 64, 64), DegenerateQuad);
}

TEST_CASE("ring bands on a clean render sit at pitch multiples") {
    CleanScene s = clean_scene("0000");  // all rings closed: strongest bands
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, std::nullopt);
    REQUIRE(bands.ring_count() == 4);
    CHECK(std::abs(bands.centers[0] - 48) <= 2.0);
    CHECK(std::abs(bands.centers[1] - 96) <= 2.0);
    CHECK(std::abs(bands.centers[2] - 144) <= 2.0);
    CHECK(std::abs(bands.centers[3] - 192) <= 2.0);
    CHECK(bands.border_center <= 6.0);
    CHECK(bands.pitch_estimate_px == doctest::Approx(48).epsilon(0.05));

    // Mixed digits give the same band structure.
    CleanScene m = clean_scene("4670");
    RingBands mixed = estimate_ring_bands(m.dm, m.strokes, std::nullopt);
    REQUIRE(mixed.ring_count() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(mixed.centers[static_cast<std::size_t>(i)] - 48 * (i + 1)) <= 2.0);
}

TEST_CASE("single-digit marker yields exactly one band") {
    CleanScene s = clean_scene("7");
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, std::nullopt);
    CHECK(bands.ring_count() == 1);
}

TEST_CASE("blank interior raises NoRingsFound") {
    // A bare square outline: border only, no code rings.
    Raster strokes(128, 128, 1, 0);
    for (int i = 20; i <= 100; ++i) {
        strokes.at(i, 20) = strokes.at(i, 100) = 1;
        strokes.at(20, i) = strokes.at(100, i) = 1;
    }
    Quad q = square_quad(20, 100);
    DistanceMap dm = distance_map(q, 128, 128);
    CHECK_THROWS_AS(estimate_ring_bands(dm, strokes, std::nullopt), NoRingsFound);

    Raster empty(128, 128, 1, 0);
    CHECK_THROWS_AS(estimate_ring_bands(dm, empty, std::nullopt), NoRingsFound);
}

TEST_CASE("ring count hint keeps the strongest peaks") {
    CleanScene s = clean_scene("123");
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, 3);
    CHECK(bands.ring_count() == 3);
    CHECK_THROWS_AS(estimate_ring_bands(s.dm, s.strokes, 7), NoRingsFound);
}

TEST_CASE("ring labels land on the geometrically correct rings") {
    CleanScene s = clean_scene("4670");
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, std::nullopt);
    std::vector<std::int32_t> labels = assign_ring_labels(s.dm, bands, s.strokes);

    std::int64_t correct = 0, code_pixels = 0;
    for (int y = 0; y < 512; ++y) {
        for (int x = 0; x < 512; ++x) {
            if (!s.strokes.at(x, y)) continue;
            int truth = true_ring_of(s.geom, x, y);
            if (truth == 0) continue;  // border ring: labeled 0 by design
            ++code_pixels;
            if (labels[static_cast<std::size_t>(y) * 512 + x] == truth) ++correct;
        }
    }
    REQUIRE(code_pixels > 0);
    CHECK(static_cast<double>(correct) / static_cast<double>(code_pixels) >= 0.99);
}

TEST_CASE("label assignment window") {
    RingBands bands;
    bands.pitch_estimate_px = 48;
    bands.centers = {48, 96};
    bands.half_width = 0.4 * 48;

    Raster strokes(100, 100, 1, 0);
    strokes.at(50, 50) = 1;
    Quad q = square_quad(0, 99);
    DistanceMap dm = distance_map(q, 100, 100);
    // Depth at (50,50) inside the 0..99 square is 49.5 -> 49 or 50 after
    // sqrt of exact squared distance to rasterized boundary; the window
    // around center 48 (width 19.2) contains it either way.
    auto labels = assign_ring_labels(dm, bands, strokes);
    CHECK(labels[50 * 100 + 50] == 1);

    // Midway between bands: depth 72 is outside both windows.
    bands.centers = {20, 60};
    bands.half_width = 19.2;
    Raster mid(100, 100, 1, 0);
    mid.at(50, 40) = 1;  // depth 40: midway between 20 and 60
    auto noise = assign_ring_labels(dm, bands, mid);
    CHECK(noise[40 * 100 + 50] == 0);
}

TEST_CASE("side_of partitions the unit square as specified") {
    Quad q = square_quad(0, 1);
    CHECK(side_of({0.5, 0.1}, q) == Side::top);
    CHECK(side_of({0.9, 0.5}, q) == Side::right);
    CHECK(side_of({0.5, 0.9}, q) == Side::bottom);
    CHECK(side_of({0.1, 0.5}, q) == Side::left);

    // Center sits on both diagonals: fixed deterministic answer.
    Side center = side_of({0.5, 0.5}, q);
    CHECK(center == Side::right);
    for (int i = 0; i < 5; ++i) CHECK(side_of({0.5, 0.5}, q) == center);

    CHECK_THROWS_AS(side_of({2.0, 2.0}, q), OutOfDomain);
}

TEST_CASE("occupancy counts against renderer ground truth") {
    CleanScene s = clean_scene("01");
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, std::nullopt);
    auto labels = assign_ring_labels(s.dm, bands, s.strokes);
    OccupancyTable table = occupancy(labels, 512, 512, s.quad, bands.ring_count());
    REQUIRE(table.ring_count() == 2);

    // Ring 0 is the closed digit 0: all four counts within 15% of the
    // exact per-side pixel counts.
    for (Side side : all_sides) {
        auto expected = static_cast<double>(expected_side_pixel_count(s.geom, 0, side));
        auto got = static_cast<double>(table.at(0, side));
        CHECK(std::abs(got - expected) <= 0.15 * expected);
    }

    // Ring 1 is digit 1 (bottom only): one dominant count, the rest
    // corner bleed at most 5% of it.
    std::int64_t dominant = table.at(1, Side::bottom);
    CHECK(dominant > 0);
    for (Side side : {Side::top, Side::right, Side::left})
        CHECK(table.at(1, side) <= dominant / 20);

    // Conservation: table total equals the labeled stroke pixel count.
    std::int64_t labeled = 0;
    for (auto l : labels) labeled += l != 0;
    CHECK(table.total() == labeled);

    // Empty label set gives an all-zero table.
    std::vector<std::int32_t> none(512 * 512, 0);
    OccupancyTable zero = occupancy(none, 512, 512, s.quad, 2);
    CHECK(zero.total() == 0);
}

TEST_CASE("bits_from_counts applies the relative threshold and floor") {
    RingBands bands;
    bands.pitch_estimate_px = 48;
    bands.centers = {48};
    bands.half_width = 19.2;
    const double W = 224;

    auto bits_for = [&](std::array<std::int64_t, 4> counts, BitThresholds t = {}) {
        OccupancyTable table;
        table.counts = {counts};
        return bits_from_counts(table, bands, W, t);
    };

    // counts (T,R,B,L) = (1000, 20, 950, 980): relative rule keeps
    // T, B, L -> digit 9.
    auto r9 = bits_for({1000, 20, 950, 980});
    REQUIRE(r9[0].pattern.has_value());
    CHECK(pattern_to_digit(*r9[0].pattern) == 9);
    CHECK(r9[0].margin == doctest::Approx((950.0 - 500.0) / 500.0));

    // All four within beta of the max: digit 0.
    auto r0 = bits_for({500, 490, 510, 505});
    REQUIRE(r0[0].pattern.has_value());
    CHECK(pattern_to_digit(*r0[0].pattern) == 0);

    // Everything under the absolute floor: undecodable, margin 0.
    BitThresholds strict;
    strict.floor_factor = 0.1;  // floor = 0.1 * 352 * 12 = 422 > all counts
    auto dead = bits_for({12, 9, 11, 10}, strict);
    CHECK_FALSE(dead[0].pattern.has_value());
    CHECK(dead[0].margin == 0.0);

    // Opposite pair fails validity.
    auto opposite = bits_for({1000, 20, 950, 30});
    CHECK_FALSE(opposite[0].pattern.has_value());
}

TEST_CASE("band monotonicity along inward rays") {
    CleanScene s = clean_scene("0000");
    RingBands bands = estimate_ring_bands(s.dm, s.strokes, std::nullopt);
    auto labels = assign_ring_labels(s.dm, bands, s.strokes);

    // March from the border midpoint toward the center: ring labels of
    // stroke pixels must be non-decreasing.
    for (int k = 0; k < 4; ++k) {
        int last = 0;
        bool monotone = true;
        for (int step = 0; step < 224; ++step) {
            int x = 255, y = 255;
            switch (k) {
                case 0: x = 32 + step; y = 255; break;
                case 1: x = 479 - step; y = 255; break;
                case 2: x = 255; y = 32 + step; break;
                default: x = 255; y = 479 - step; break;
            }
            if (!s.strokes.at(x, y)) continue;
            int l = labels[static_cast<std::size_t>(y) * 512 + x];
            if (l == 0) continue;
            if (l < last) monotone = false;
            last = l;
        }
        CHECK(monotone);
    }
}

TEST_CASE("decoded patterns rotate with the image") {
    MarkerStyle style;
    OiluNumber n = OiluNumber::parse("352");
    Raster img = render_marker(n, style);

    auto patterns_of = [&](const Raster& r) {
        Raster strokes = binarize(r, otsu_threshold(r), PolarityHint::automatic);
        Quad q = detect_quad(strokes, 100.0);
        DistanceMap dm = distance_map(q, r.width(), r.height());
        RingBands bands = estimate_ring_bands(dm, strokes, std::nullopt);
        auto labels = assign_ring_labels(dm, bands, strokes);
        OccupancyTable t = occupancy(labels, r.width(), r.height(), q, bands.ring_count());
        std::vector<SidePattern> out;
        for (const RingBits& b : bits_from_counts(t, bands, dm.max_depth)) {
            REQUIRE(b.pattern.has_value());
            out.push_back(*b.pattern);
        }
        return out;
    };

    auto base = patterns_of(img);
    auto rotated = patterns_of(rot90_ccw(img));
    REQUIRE(base.size() == rotated.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(rotated[i] == rotate_pattern_ccw(base[i], 1));
}
