#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "oilu/decoder.hpp"
#include "oilu/eval.hpp"
#include "oilu/image_io.hpp"
#include "oilu/plot.hpp"
#include "oilu/render.hpp"
#include "oilu/selftest.hpp"

namespace {

// Exit codes: 0 success, 1 usage error, 2 decode/selftest failure, 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDecode = 2;
constexpr int kExitIo = 3;

struct StyleFlags {
    int canvas = 512;
    int quiet = 32;
    int stroke = 12;
    int pitch = 48;
    std::string polarity = "dark_on_light";

    void attach(CLI::App* cmd) {
        cmd->add_option("--canvas", canvas, "Canvas side in pixels");
        cmd->add_option("--quiet-zone", quiet, "Quiet zone width in pixels");
        cmd->add_option("--stroke", stroke, "Stroke thickness in pixels");
        cmd->add_option("--pitch", pitch, "Ring spacing in pixels");
        cmd->add_option("--polarity", polarity, "dark_on_light or light_on_dark")
            ->check(CLI::IsMember({"dark_on_light", "light_on_dark"}));
    }

    oilu::MarkerStyle style() const {
        oilu::MarkerStyle s;
        s.canvas_px = canvas;
        s.quiet_zone_px = quiet;
        s.stroke_px = stroke;
        s.pitch_px = pitch;
        s.polarity = polarity == "light_on_dark" ? oilu::Polarity::light_on_dark
                                                 : oilu::Polarity::dark_on_light;
        return s;
    }
};

struct DecodeFlags {
    bool rectify = false;
    int out_size = 512;
    int ring_hint = 0;
    double beta = 0.5;
    double floor_factor = 0.1;
    std::string binarization = "otsu";
    double min_area_factor = 1e-4;
    std::string debug_dir;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--rectify", rectify, "Rectify the detected quad before labeling");
        cmd->add_option("--out-size", out_size, "Rectified square side in pixels");
        cmd->add_option("--rings", ring_hint, "Expected code ring count (0 = auto)");
        cmd->add_option("--beta", beta, "Relative presence threshold")->check(CLI::Range(0.2, 0.8));
        cmd->add_option("--floor", floor_factor, "Absolute floor factor");
        cmd->add_option("--binarization", binarization, "otsu or adaptive")
            ->check(CLI::IsMember({"otsu", "adaptive"}));
        cmd->add_option("--min-area", min_area_factor, "Cleanup area fraction");
        cmd->add_option("--debug-dir", debug_dir, "Write pipeline stage images here");
    }

    oilu::DecodeConfig config() const {
        oilu::DecodeConfig cfg;
        cfg.rectify = rectify;
        cfg.out_size = out_size;
        if (ring_hint > 0) cfg.ring_count_hint = ring_hint;
        cfg.beta = beta;
        cfg.floor_factor = floor_factor;
        cfg.binarization = binarization == "adaptive" ? oilu::Binarization::adaptive
                                                      : oilu::Binarization::otsu;
        cfg.min_area_factor = min_area_factor;
        if (!debug_dir.empty()) cfg.debug_dir = debug_dir;
        return cfg;
    }
};

int cmd_encode(const std::string& number, const StyleFlags& style_flags,
               const std::string& out_path, bool geometry_sidecar) {
    oilu::OiluNumber code = oilu::OiluNumber::parse(number);
    oilu::MarkerStyle style = style_flags.style();
    oilu::MarkerGeometry geom = oilu::layout_rings(code, style);
    oilu::Raster img = oilu::render_marker(code, style);

    if (out_path.ends_with(".pgm"))
        oilu::save_pgm(out_path, img);
    else
        oilu::save_png(out_path, img);

    if (geometry_sidecar) {
        nlohmann::json rings = nlohmann::json::array();
        for (int r = 0; r < geom.ring_count(); ++r)
            rings.push_back({{"half_width_px", geom.ring_half_widths_px[static_cast<std::size_t>(r)]},
                             {"pattern", geom.ring_patterns[static_cast<std::size_t>(r)].str()}});
        nlohmann::json j{
            {"number", code.str()},
            {"canvas_px", geom.canvas_px},
            {"stroke_px", geom.stroke_px},
            {"pitch_px", geom.pitch_px},
            {"center_px", {geom.center_px.x, geom.center_px.y}},
            {"border_half_width_px", geom.border_half_width_px},
            {"rings", rings},
        };
        std::ofstream f(out_path + ".geom.json");
        if (!f) throw oilu::IoError("cannot write geometry sidecar");
        f << j.dump() << "\n";
    }

    oilu::FacetGroup facets = oilu::facet_values(code);
    for (const oilu::OiluNumber& v : facets.values) std::cout << v.str() << "\n";
    return kExitOk;
}

int cmd_decode(const std::string& path, const DecodeFlags& flags) {
    try {
        oilu::DecodeResult result = oilu::decode_file(path, flags.config());
        std::cout << result.to_json().dump() << "\n";
        return kExitOk;
    } catch (const oilu::DecodeFailure& f) {
        std::cout << f.to_json().dump() << "\n";
        return kExitDecode;
    }
}

int cmd_facets(const std::string& number) {
    oilu::FacetGroup g = oilu::facet_values(oilu::OiluNumber::parse(number));
    for (const oilu::OiluNumber& v : g.values) std::cout << v.str() << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& config_path, const std::string& out_dir, bool plots,
             std::optional<std::uint64_t> seed, std::optional<int> trials, bool no_timing) {
    oilu::SweepConfig cfg;
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw oilu::IoError("cannot read config " + config_path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw oilu::Error(std::string("bad eval config: ") + e.what());
        }
        cfg = oilu::SweepConfig::from_json(j);
    } else {
        cfg = oilu::SweepConfig::defaults();
    }
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (no_timing) cfg.measure_timing = false;

    std::vector<oilu::EvalRecord> records = oilu::run_eval(cfg);

    std::filesystem::create_directories(out_dir);
    std::string csv_path = out_dir + "/eval.csv";
    {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw oilu::IoError("cannot write " + csv_path);
        oilu::write_csv(records, f, cfg.measure_timing);
    }
    std::vector<std::string> plot_paths;
    if (plots) plot_paths = oilu::render_curves(records, out_dir);

    // Human summary on stderr; machine payload on stdout.
    std::fprintf(stderr, "%-9s %-8s %9s %9s %9s\n", "kind", "level", "success", "mean_ms",
                 "p95_ms");
    for (const oilu::EvalRecord& r : records)
        std::fprintf(stderr, "%-9s %-8.4g %8.1f%% %9.2f %9.2f\n", oilu::distortion_name(r.kind),
                     r.level, 100.0 * r.success_rate, r.mean_ms, r.p95_ms);

    nlohmann::json out{{"csv", csv_path}, {"plots", plot_paths}, {"records", records.size()}};
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    bool all_ok = true;
    for (const oilu::selftest::SuiteResult& r : oilu::selftest::run_all(seed)) {
        std::printf("%-26s %s  (%d checks, %.1f ms)%s%s\n", r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.checks, r.ms, r.passed ? "" : ": ",
                    r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    return all_ok ? kExitOk : kExitDecode;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concentric square-ring marker toolkit"};
    app.require_subcommand(1);

    // encode
    auto* encode = app.add_subcommand("encode", "Render a number as a marker image");
    std::string number, out_path = "marker.png";
    bool geometry = false;
    encode->add_option("number", number, "Decimal digits")->required();
    encode->add_option("--out", out_path, "Output image path (.png or .pgm)");
    encode->add_flag("--geometry", geometry, "Also write <out>.geom.json");
    StyleFlags style_flags;
    style_flags.attach(encode);

    // decode
    auto* dec = app.add_subcommand("decode", "Decode a marker image to JSON");
    std::string decode_path;
    dec->add_option("image", decode_path, "PNG or PGM file")->required();
    DecodeFlags decode_flags;
    decode_flags.attach(dec);

    // facets
    auto* fac = app.add_subcommand("facets", "Print the four facet values");
    std::string facets_number;
    fac->add_option("number", facets_number, "Decimal digits")->required();

    // eval
    auto* ev = app.add_subcommand("eval", "Run the distortion sweep and write CSV/plots");
    std::string config_path, out_dir = "eval_out";
    bool plots = false, no_timing = false;
    std::uint64_t seed_flag = 0;
    int trials_flag = 0;
    ev->add_option("--config", config_path, "Sweep config JSON");
    ev->add_option("--out-dir", out_dir, "Output directory");
    ev->add_flag("--plots", plots, "Render success-rate charts");
    ev->add_option("--seed", seed_flag, "Override the sweep seed");
    ev->add_option("--trials", trials_flag, "Override trials per level");
    ev->add_flag("--no-timing", no_timing,
                 "Write zero timing columns so the CSV is byte-reproducible");

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the embedded oracle suites");
    std::uint64_t selftest_seed = 7;
    st->add_option("--seed", selftest_seed, "Oracle suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (encode->parsed()) return cmd_encode(number, style_flags, out_path, geometry);
        if (dec->parsed()) return cmd_decode(decode_path, decode_flags);
        if (fac->parsed()) return cmd_facets(facets_number);
        if (ev->parsed())
            return cmd_eval(config_path, out_dir, plots,
                            ev->count("--seed") ? std::optional(seed_flag) : std::nullopt,
                            ev->count("--trials") ? std::optional(trials_flag) : std::nullopt,
                            no_timing);
        if (st->parsed()) return cmd_selftest(selftest_seed);
    } catch (const oilu::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const oilu::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const oilu::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
