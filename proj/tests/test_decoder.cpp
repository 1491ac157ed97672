#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "oilu/decoder.hpp"
#include "oilu/eval.hpp"
#include "oilu/image_io.hpp"
#include "oilu/render.hpp"

using namespace oilu;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("oilu_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("decode reproduces the published facet family") {
    Raster img = render_marker(OiluNumber::parse("4670"), MarkerStyle{});
    DecodeResult r = decode(img);
    CHECK(r.value.str() == "4670");

    std::set<std::string> facets;
    for (const OiluNumber& v : r.facets.values) facets.insert(v.str());
    CHECK(facets == std::set<std::string>{"4670", "2450", "8230", "6890"});

    REQUIRE(r.per_ring.size() == 4);
    for (const RingReadout& ring : r.per_ring) CHECK(ring.margin > 0.5);
    CHECK(r.timing_ms > 0.0);
}

TEST_CASE("decode of quarter-turn rotated renders applies the digit permutation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int len = 1 + static_cast<int>(rng() % 4);
        OiluNumber n = random_code(rng(), len);
        Raster img = render_marker(n, MarkerStyle{});
        for (int k = 0; k < 4; ++k) {
            DecodeResult r = decode(rotated_quarter_turns_ccw(img, k));
            CHECK(r.value == n.rotated(k));
        }
    }
}

TEST_CASE("decode failure taxonomy") {
    Raster blank(128, 128, 1, 255);
    CHECK_THROWS_AS(decode(blank), DecodeFailure);
    try {
        decode(blank);
    } catch (const DecodeFailure& f) {
        CHECK(f.stage() == DecodeStage::no_marker);
        CHECK(f.timing_ms() > 0.0);  // timing populated on failure too
        CHECK(f.to_json().at("error") == "NoMarkerFound");
    }

    // A bare border with an empty interior has no code bands.
    Raster border(256, 256, 1, 255);
    for (int i = 40; i <= 200; ++i)
        for (int t = 0; t < 8; ++t) {
            border.at(i, 40 + t) = 0;
            border.at(i, 200 - t) = 0;
            border.at(40 + t, i) = 0;
            border.at(200 - t, i) = 0;
        }
    try {
        decode(border);
        CHECK(false);
    } catch (const DecodeFailure& f) {
        CHECK(f.stage() == DecodeStage::no_rings);
    }

    Raster tiny(32, 32, 1, 255);
    CHECK_THROWS_AS(decode(tiny), UnsupportedFormat);
}

TEST_CASE("decode is invariant to polarity and affine intensity changes") {
    OiluNumber n = OiluNumber::parse("918");
    Raster img = render_marker(n, MarkerStyle{});

    CHECK(decode(complement(img)).value == n);

    for (double a : {0.5, 0.8, 1.2, 1.5}) {
        for (double b : {-30.0, 0.0, 30.0}) {
            Raster scaled = img;
            for (std::uint8_t& v : scaled.data())
                v = static_cast<std::uint8_t>(
                    std::clamp(std::lround(a * v + b), 0L, 255L));
            CHECK(decode(scaled).value == n);
        }
    }
}

TEST_CASE("decode honors the ring count hint and rectify flag") {
    OiluNumber n = OiluNumber::parse("205");
    Raster img = render_marker(n, MarkerStyle{});

    DecodeConfig hinted;
    hinted.ring_count_hint = 3;
    CHECK(decode(img, hinted).value == n);

    DecodeConfig rectified;
    rectified.rectify = true;
    CHECK(decode(img, rectified).value == n);

    DecodeConfig adaptive;
    adaptive.binarization = Binarization::adaptive;
    CHECK(decode(img, adaptive).value == n);
}

TEST_CASE("config validation rejects out-of-range factors") {
    DecodeConfig cfg;
    cfg.beta = 0.9;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.out_size = 16;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.band_half_width_factor = 0.9;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("decode_file matches in-memory decode for PNG and PGM") {
    TempDir dir;
    OiluNumber n = OiluNumber::parse("7305");
    Raster img = render_marker(n, MarkerStyle{});

    save_png(dir.file("m.png"), img);
    save_pgm(dir.file("m.pgm"), img);

    DecodeResult from_png = decode_file(dir.file("m.png"));
    DecodeResult from_pgm = decode_file(dir.file("m.pgm"));
    DecodeResult in_memory = decode(img);
    CHECK(from_png.value == in_memory.value);
    CHECK(from_pgm.value == in_memory.value);
    CHECK(from_png.quad.corners[0].x == in_memory.quad.corners[0].x);
}

TEST_CASE("decode_file distinguishes I/O, format and decode errors") {
    TempDir dir;
    CHECK_THROWS_AS(decode_file(dir.file("missing.png"), {}), IoError);

    // Truncated PNG: valid signature, cut body.
    Raster img = render_marker(OiluNumber::parse("42"), MarkerStyle{});
    save_png(dir.file("full.png"), img);
    {
        std::ifstream in(dir.file("full.png"), std::ios::binary);
        std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
        std::ofstream out(dir.file("trunc.png"), std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 3));
    }
    CHECK_THROWS_AS(decode_file(dir.file("trunc.png"), {}), FormatError);

    std::ofstream(dir.file("junk.png")) << "not an image at all";
    CHECK_THROWS_AS(decode_file(dir.file("junk.png"), {}), FormatError);
}

TEST_CASE("16-bit PNG input is scaled to 8 bits before decoding") {
    TempDir dir;
    OiluNumber n = OiluNumber::parse("350");
    Raster img = render_marker(n, MarkerStyle{});

    // Promote to 16 bits with v*257 (0->0, 255->65535).
    std::vector<std::uint16_t> wide(img.pixel_count());
    for (std::size_t i = 0; i < wide.size(); ++i)
        wide[i] = static_cast<std::uint16_t>(img.data()[i] * 257);
    save_png_gray16(dir.file("wide.png"), wide, img.width(), img.height());

    Raster loaded = load_image(dir.file("wide.png"));
    REQUIRE(loaded.channels() == 1);
    // libpng's rounded scale maps the endpoints and midpoint exactly.
    CHECK(loaded.at(0, 0) == img.at(0, 0));
    CHECK(decode_file(dir.file("wide.png"), {}).value == n);

    // Spot-check the documented rounding on a synthetic ramp.
    std::vector<std::uint16_t> ramp{0, 32768, 65535};
    save_png_gray16(dir.file("ramp.png"), ramp, 3, 1);
    Raster r = load_image(dir.file("ramp.png"));
    CHECK(r.at(0, 0) == 0);
    CHECK(r.at(1, 0) == 128);
    CHECK(r.at(2, 0) == 255);
}

TEST_CASE("decode result serializes as a one-line JSON record") {
    Raster img = render_marker(OiluNumber::parse("4670"), MarkerStyle{});
    DecodeResult r = decode(img);
    nlohmann::json j = r.to_json();
    CHECK(j.at("value") == "4670");
    CHECK(j.at("facets").size() == 4);
    CHECK(j.at("rings").size() == 4);
    CHECK(j.at("corners").size() == 4);
    CHECK(j.at("rings")[0].contains("margin"));
    CHECK(j.at("timing_ms").get<double>() > 0.0);
    std::string line = j.dump();
    CHECK(line.find('\n') == std::string::npos);
}

TEST_CASE("debug directory receives the pipeline stages") {
    TempDir dir;
    Raster img = render_marker(OiluNumber::parse("61"), MarkerStyle{});
    DecodeConfig cfg;
    cfg.debug_dir = dir.file("stages");
    decode(img, cfg);
    for (const char* name : {"01_gray.png", "02_binary.png", "03_clean.png", "04_quad.png",
                             "05_depth.png", "06_labels.png"})
        CHECK(std::filesystem::exists(dir.path / "stages" / name));
}
