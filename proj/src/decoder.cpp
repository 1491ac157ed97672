#include "oilu/decoder.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "oilu/image_io.hpp"

namespace oilu {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

nlohmann::json corners_json(const Quad& q) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : q.corners) arr.push_back({p.x, p.y});
    return arr;
}

// Indexed-color palette for the ring-label debug image.
void write_label_debug(const std::string& dir, const std::vector<std::int32_t>& labels, int w,
                       int h) {
    static const std::uint8_t palette[][3] = {
        {0, 0, 0},       {230, 60, 60},   {60, 170, 60},  {70, 90, 230},
        {220, 200, 40},  {200, 70, 200},  {60, 200, 200}, {240, 140, 40},
        {140, 140, 140},
    };
    Raster img(w, h, 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t l = static_cast<std::size_t>(labels[static_cast<std::size_t>(y) * w + x]) %
                            (sizeof(palette) / sizeof(palette[0]));
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = palette[l][c];
        }
    }
    save_png(dir + "/06_labels.png", img);
}

void write_depth_debug(const std::string& dir, const DistanceMap& dm) {
    std::vector<std::uint16_t> px(static_cast<std::size_t>(dm.width) * dm.height, 0);
    double scale = dm.max_depth > 0 ? 65535.0 / dm.max_depth : 0.0;
    for (int y = 0; y < dm.height; ++y)
        for (int x = 0; x < dm.width; ++x)
            if (dm.is_inside(x, y))
                px[static_cast<std::size_t>(y) * dm.width + x] =
                    static_cast<std::uint16_t>(std::lround(dm.depth_at(x, y) * scale));
    save_png_gray16(dir + "/05_depth.png", px, dm.width, dm.height);
}

void write_quad_debug(const std::string& dir, const Raster& gray, const Quad& q) {
    Raster img(gray.width(), gray.height(), 3);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x)
            for (int c = 0; c < 3; ++c) img.at(x, y, c) = gray.at(x, y);
    auto mark = [&](Point p) {
        for (int dy = -2; dy <= 2; ++dy) {
            for (int dx = -2; dx <= 2; ++dx) {
                int x = static_cast<int>(std::lround(p.x)) + dx;
                int y = static_cast<int>(std::lround(p.y)) + dy;
                if (!img.in_bounds(x, y)) continue;
                img.at(x, y, 0) = 255;
                img.at(x, y, 1) = 40;
                img.at(x, y, 2) = 40;
            }
        }
    };
    for (int i = 0; i < 4; ++i) {
        Point a = q.corners[static_cast<std::size_t>(i)];
        Point b = q.corners[static_cast<std::size_t>((i + 1) % 4)];
        double len = norm(b - a);
        int steps = std::max(1, static_cast<int>(len));
        for (int s = 0; s <= steps; ++s) {
            double t = static_cast<double>(s) / steps;
            int x = static_cast<int>(std::lround(a.x + t * (b.x - a.x)));
            int y = static_cast<int>(std::lround(a.y + t * (b.y - a.y)));
            if (!img.in_bounds(x, y)) continue;
            img.at(x, y, 0) = 60;
            img.at(x, y, 1) = 220;
            img.at(x, y, 2) = 60;
        }
        mark(a);
    }
    save_png(dir + "/04_quad.png", img);
}

Raster binarize_stage(const Raster& gray, const DecodeConfig& cfg) {
    if (cfg.binarization == Binarization::adaptive) {
        int radius = std::max(15, std::min(gray.width(), gray.height()) / 16);
        return binarize_adaptive(gray, radius, 8, cfg.polarity);
    }
    int t;
    try {
        t = otsu_threshold(gray);
    } catch (const DegenerateHistogram&) {
        t = 128;  // constant image; the fixed midpoint keeps the pipeline moving
    }
    return binarize(gray, t, cfg.polarity);
}

}  // namespace

void DecodeConfig::validate() const {
    if (beta < 0.2 || beta > 0.8) throw Error("beta must be in [0.2, 0.8]");
    if (floor_factor < 0.0 || floor_factor > 0.5) throw Error("floor_factor must be in [0, 0.5]");
    if (band_half_width_factor < 0.1 || band_half_width_factor > 0.5)
        throw Error("band_half_width_factor must be in [0.1, 0.5]");
    if (min_area_factor < 0.0 || min_area_factor > 0.01)
        throw Error("min_area_factor must be in [0, 0.01]");
    if (min_quad_area_factor < 0.0 || min_quad_area_factor > 0.5)
        throw Error("min_quad_area_factor must be in [0, 0.5]");
    if (out_size < 64 || out_size > 4096) throw Error("out_size must be in [64, 4096]");
    if (ring_count_hint && (*ring_count_hint < 1 || *ring_count_hint > 32))
        throw Error("ring_count_hint must be in [1, 32]");
}

const char* decode_stage_name(DecodeStage s) {
    switch (s) {
        case DecodeStage::no_marker: return "NoMarkerFound";
        case DecodeStage::no_rings: return "NoRingsFound";
        case DecodeStage::undecodable: return "UndecodableRing";
        case DecodeStage::ambiguous: return "AmbiguousBands";
    }
    return "?";
}

nlohmann::json DecodeResult::to_json() const {
    nlohmann::json rings = nlohmann::json::array();
    for (const RingReadout& r : per_ring)
        rings.push_back({{"digit", r.digit}, {"pattern", r.pattern.str()}, {"margin", r.margin}});
    return nlohmann::json{
        {"value", value.str()},
        {"facets",
         {facets.values[0].str(), facets.values[1].str(), facets.values[2].str(),
          facets.values[3].str()}},
        {"rings", rings},
        {"corners", corners_json(quad)},
        {"timing_ms", timing_ms},
    };
}

nlohmann::json DecodeFailure::to_json() const {
    nlohmann::json j{
        {"error", decode_stage_name(stage_)},
        {"detail", what()},
        {"timing_ms", timing_ms_},
    };
    if (ring_) j["ring"] = *ring_;
    return j;
}

DecodeResult decode(const Raster& img, const DecodeConfig& cfg) {
    cfg.validate();
    if (img.width() < 64 || img.height() < 64)
        throw UnsupportedFormat("decode expects at least a 64x64 raster");
    const auto t0 = Clock::now();
    const bool debug = cfg.debug_dir.has_value();
    if (debug) std::filesystem::create_directories(*cfg.debug_dir);

    Raster gray = to_grayscale(img);
    if (debug) save_png(*cfg.debug_dir + "/01_gray.png", gray);

    Raster binary = binarize_stage(gray, cfg);
    if (debug) {
        Raster vis = binary;
        for (std::uint8_t& v : vis.data()) v = v ? 255 : 0;
        save_png(*cfg.debug_dir + "/02_binary.png", vis);
    }

    auto min_area = static_cast<std::int64_t>(cfg.min_area_factor *
                                              static_cast<double>(gray.pixel_count()));
    Raster clean = remove_small_components(binary, min_area);
    if (debug) {
        Raster vis = clean;
        for (std::uint8_t& v : vis.data()) v = v ? 255 : 0;
        save_png(*cfg.debug_dir + "/03_clean.png", vis);
    }

    Quad quad;
    try {
        quad = detect_quad(clean, cfg.min_quad_area_factor * static_cast<double>(gray.pixel_count()));
    } catch (const NoMarkerFound& e) {
        throw DecodeFailure(DecodeStage::no_marker, e.what(), ms_since(t0));
    } catch (const DegenerateQuad& e) {
        throw DecodeFailure(DecodeStage::no_marker, e.what(), ms_since(t0));
    }
    if (debug) write_quad_debug(*cfg.debug_dir, gray, quad);

    // With rectification on, normalize the grayscale view to a square and
    // rebuild the stroke mask there; the working quad becomes the output
    // frame itself.
    Quad work_quad = quad;
    Raster strokes = clean;
    int w = gray.width(), h = gray.height();
    if (cfg.rectify) {
        Raster rect;
        try {
            rect = rectify(gray, quad, cfg.out_size);
        } catch (const DegenerateQuad& e) {
            throw DecodeFailure(DecodeStage::no_marker, e.what(), ms_since(t0));
        }
        Raster rect_bin = binarize_stage(rect, cfg);
        strokes = remove_small_components(
            rect_bin, static_cast<std::int64_t>(cfg.min_area_factor *
                                                static_cast<double>(rect.pixel_count())));
        w = h = cfg.out_size;
        double s = cfg.out_size - 1;
        work_quad = Quad{{Point{0, 0}, Point{s, 0}, Point{s, s}, Point{0, s}}};
    }

    DistanceMap dm;
    try {
        dm = distance_map(work_quad, w, h);
    } catch (const DegenerateQuad& e) {
        throw DecodeFailure(DecodeStage::no_marker, e.what(), ms_since(t0));
    }
    if (debug) write_depth_debug(*cfg.debug_dir, dm);

    RingBands bands;
    try {
        bands = estimate_ring_bands(dm, strokes, cfg.ring_count_hint, cfg.band_half_width_factor);
    } catch (const NoRingsFound& e) {
        throw DecodeFailure(DecodeStage::no_rings, e.what(), ms_since(t0));
    } catch (const AmbiguousBands& e) {
        throw DecodeFailure(DecodeStage::ambiguous, e.what(), ms_since(t0));
    }

    std::vector<std::int32_t> labels = assign_ring_labels(dm, bands, strokes);
    if (debug) write_label_debug(*cfg.debug_dir, labels, w, h);

    OccupancyTable table = occupancy(labels, w, h, work_quad, bands.ring_count());
    BitThresholds thresholds{cfg.beta, cfg.floor_factor, 0.25};
    std::vector<RingBits> bits = bits_from_counts(table, bands, dm.max_depth, thresholds);

    DecodeResult result;
    std::vector<std::uint8_t> digits;
    for (std::size_t r = 0; r < bits.size(); ++r) {
        if (!bits[r].pattern) {
            throw DecodeFailure(DecodeStage::undecodable,
                                "ring " + std::to_string(r) + " counts form no valid glyph",
                                ms_since(t0), static_cast<int>(r));
        }
        RingReadout readout;
        readout.pattern = *bits[r].pattern;
        readout.digit = pattern_to_digit(readout.pattern);
        readout.margin = bits[r].margin;
        result.per_ring.push_back(readout);
        digits.push_back(static_cast<std::uint8_t>(readout.digit));
    }

    result.value = OiluNumber(std::move(digits));
    result.facets = facet_values(result.value);
    result.quad = quad;
    result.timing_ms = ms_since(t0);
    return result;
}

DecodeResult decode_file(const std::string& path, const DecodeConfig& cfg) {
    return decode(load_image(path), cfg);
}

}  // namespace oilu
