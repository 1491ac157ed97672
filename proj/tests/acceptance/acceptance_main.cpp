// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Criteria (tolerances pinned in code, not deferred):
//   1. facet reproduction of 4670, via codec and via decode-under-rotation
//   2. 2000-code clean round trip, lengths 1-6, both polarities
//   3. distance transform bit-exact vs all-pairs brute force (100 masks)
//   4. Otsu identical to the exhaustive 256-candidate search (50 histograms)
//   5. median decode <= 40 ms on a 640x480 frame, single-threaded, >= 200 runs
//   6. robustness sweeps: 100% at level 0, non-increasing within 5 points,
//      >= 90% at the mild-regime knees (noise 10, blur 1, radial 0.05,
//      tilt 20 rectified)
//   7. rotation equivariance for 200 codes x 3 turns
//   8. declared stand-ins: physical distance/lux/camera-angle figures are
//      out of scope by design; synthetic sweeps carry their own bounds

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oilu/decoder.hpp"
#include "oilu/eval.hpp"
#include "oilu/render.hpp"
#include "oilu/selftest.hpp"
#include "oilu/vision.hpp"

using namespace oilu;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    const char* name;
    bool passed;
    std::string note;
};

std::vector<Criterion> results;

void report(int id, const char* name, bool passed, const std::string& note) {
    results.push_back({id, name, passed, note});
    std::printf("[%d] %-28s %s  %s\n", id, name, passed ? "PASS" : "FAIL", note.c_str());
    std::fflush(stdout);
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------

void facet_reproduction() {
    auto t0 = Clock::now();
    const std::set<std::string> expected{"4670", "2450", "8230", "6890"};

    std::set<std::string> via_codec;
    for (const OiluNumber& v : facet_values(OiluNumber::parse("4670")).values)
        via_codec.insert(v.str());

    std::set<std::string> via_decode;
    Raster img = render_marker(OiluNumber::parse("4670"), MarkerStyle{});
    for (int k = 0; k < 4; ++k)
        via_decode.insert(decode(rotated_quarter_turns_ccw(img, k)).value.str());

    double ms = ms_since(t0);
    bool ok = via_codec == expected && via_decode == expected && ms < 1000.0;
    char note[128];
    std::snprintf(note, sizeof note, "(%.1f ms; codec %s, decode-under-rotation %s)", ms,
                  via_codec == expected ? "ok" : "wrong", via_decode == expected ? "ok" : "wrong");
    report(1, "facet-reproduction", ok, note);
}

// --- criterion 2 -----------------------------------------------------------

void clean_round_trip() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240901);
    int failures = 0;
    std::string first_failure;
    const int total = 2000;
    for (int i = 0; i < total; ++i) {
        int length = 1 + static_cast<int>(rng() % 6);
        OiluNumber code = random_code(rng(), length);
        MarkerStyle style = MarkerStyle::fitted(length);
        style.polarity = (i & 1) ? Polarity::light_on_dark : Polarity::dark_on_light;
        try {
            DecodeResult r = decode(render_marker(code, style));
            if (r.value != code) {
                ++failures;
                if (first_failure.empty())
                    first_failure = code.str() + " read as " + r.value.str();
            }
        } catch (const Error& e) {
            ++failures;
            if (first_failure.empty()) first_failure = code.str() + " threw: " + e.what();
        }
    }
    double s = ms_since(t0) / 1000.0;
    bool ok = failures == 0 && s < 120.0;
    char note[256];
    std::snprintf(note, sizeof note, "(%d/%d in %.1f s%s%s)", total - failures, total, s,
                  first_failure.empty() ? "" : "; first: ", first_failure.c_str());
    report(2, "clean-round-trip", ok, note);
}

// --- criterion 3 -----------------------------------------------------------

void distance_transform_exactness() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(31337);
    int mismatches = 0;
    for (int m = 0; m < 100; ++m) {
        std::vector<std::uint8_t> seeds(32 * 32, 0);
        int n = 1 + static_cast<int>(rng() % 64);
        for (int i = 0; i < n; ++i) seeds[rng() % seeds.size()] = 1;
        if (edt_squared(seeds, 32, 32) != selftest::brute_force_edt_squared(seeds, 32, 32))
            ++mismatches;
    }
    char note[128];
    std::snprintf(note, sizeof note, "(100 masks, %d mismatches, %.1f ms)", mismatches,
                  ms_since(t0));
    report(3, "distance-transform-exact", mismatches == 0, note);
}

// --- criterion 4 -----------------------------------------------------------

void otsu_oracle() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(555);
    int mismatches = 0, tested = 0;
    while (tested < 50) {
        std::array<std::uint64_t, 256> hist{};
        int modes = 1 + static_cast<int>(rng() % 3);
        for (int p = 0; p < modes; ++p) {
            int center = static_cast<int>(rng() % 256);
            for (int k = 0; k < 96; ++k) {
                int v = std::clamp(center + static_cast<int>(rng() % 41) - 20, 0, 255);
                hist[static_cast<std::size_t>(v)] += rng() % 16;
            }
        }
        int nonzero = 0;
        for (auto c : hist) nonzero += c != 0;
        if (nonzero <= 1) continue;
        ++tested;
        if (otsu_threshold(hist) != selftest::exhaustive_otsu(hist)) ++mismatches;
    }
    char note[128];
    std::snprintf(note, sizeof note, "(50 histograms, %d mismatches, %.1f ms)", mismatches,
                  ms_since(t0));
    report(4, "otsu-exhaustive-oracle", mismatches == 0, note);
}

// --- criterion 5 -----------------------------------------------------------

void timing_budget() {
    // A marker embedded in a 640x480 frame, decoded single-threaded.
    MarkerStyle style;
    style.canvas_px = 448;
    style.quiet_zone_px = 24;
    style.pitch_px = 36;
    style.stroke_px = 9;
    OiluNumber code = OiluNumber::parse("4670");
    Raster marker = render_marker(code, style);

    Raster frame(640, 480, 1, 255);
    int ox = (640 - 448) / 2, oy = (480 - 448) / 2;
    for (int y = 0; y < 448; ++y)
        for (int x = 0; x < 448; ++x) frame.at(ox + x, oy + y) = marker.at(x, y);

    // Warm-up plus sanity.
    DecodeResult warm = decode(frame);
    bool value_ok = warm.value == code;

    const int runs = 200;
    std::vector<double> times;
    times.reserve(runs);
    for (int i = 0; i < runs; ++i) {
        auto t0 = Clock::now();
        DecodeResult r = decode(frame);
        times.push_back(ms_since(t0));
        value_ok = value_ok && r.value == code;
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    double p95 = times[(times.size() * 95 + 99) / 100 - 1];
    bool ok = value_ok && median <= 40.0;
    char note[160];
    std::snprintf(note, sizeof note, "(median %.2f ms, p95 %.2f ms over %d decodes of 640x480)",
                  median, p95, runs);
    report(5, "timing-budget-40ms", ok, note);
}

// --- criterion 6 -----------------------------------------------------------

void robustness_trends() {
    auto t0 = Clock::now();
    SweepConfig cfg = SweepConfig::defaults();
    cfg.trials = 200;
    cfg.seed = 20240902;
    std::vector<EvalRecord> records = run_eval(cfg);

    std::string problems;
    auto complain = [&](const std::string& p) {
        if (!problems.empty()) problems += "; ";
        problems += p;
    };

    // 100% at level 0 for every family.
    for (const EvalRecord& r : records)
        if (r.level == 0.0 && r.success_rate < 1.0)
            complain(std::string(distortion_name(r.kind)) + " level0=" +
                     std::to_string(r.success_rate));

    // Non-increasing within a 5-point allowance along each sweep.
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].kind != records[i - 1].kind) continue;
        if (records[i].success_rate > records[i - 1].success_rate + 0.05)
            complain(std::string(distortion_name(records[i].kind)) + " rises at level " +
                     std::to_string(records[i].level));
    }

    // Mild-regime floors, frozen.
    struct Floor {
        Distortion kind;
        double level;
        double min_rate;
    };
    const Floor floors[] = {
        {Distortion::noise, 10.0, 0.90},
        {Distortion::blur, 1.0, 0.90},
        {Distortion::radial, 0.05, 0.90},
        {Distortion::tilt, 20.0, 0.90},
    };
    for (const Floor& f : floors) {
        bool found = false;
        for (const EvalRecord& r : records) {
            if (r.kind == f.kind && r.level == f.level) {
                found = true;
                if (r.success_rate < f.min_rate)
                    complain(std::string(distortion_name(f.kind)) + "@" +
                             std::to_string(f.level) + "=" + std::to_string(r.success_rate));
            }
        }
        if (!found) complain(std::string("missing ") + distortion_name(f.kind) + " floor level");
    }

    char note[512];
    std::snprintf(note, sizeof note, "(%zu cells, 200 trials each, %.1f s%s%s)", records.size(),
                  ms_since(t0) / 1000.0, problems.empty() ? "" : "; ", problems.c_str());
    report(6, "robustness-trends", problems.empty(), note);
}

// --- criterion 7 -----------------------------------------------------------

void rotation_equivariance() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(777);
    int failures = 0;
    const int codes = 200;
    for (int i = 0; i < codes; ++i) {
        int length = 1 + static_cast<int>(rng() % 4);
        OiluNumber n = random_code(rng(), length);
        Raster img = render_marker(n, MarkerStyle{});
        for (int k = 1; k <= 3; ++k) {
            try {
                if (decode(rotated_quarter_turns_ccw(img, k)).value != n.rotated(k)) ++failures;
            } catch (const Error&) {
                ++failures;
            }
        }
    }
    char note[128];
    std::snprintf(note, sizeof note, "(%d codes x 3 turns, %d failures, %.1f s)", codes, failures,
                  ms_since(t0) / 1000.0);
    report(7, "rotation-equivariance", failures == 0, note);
}

// --- criterion 8 -----------------------------------------------------------

void declared_exclusions() {
    // Physical distance ranges, lux thresholds and the real-camera angle
    // cutoff are not reproducible at desk scale; the contrast and tilt
    // sweeps above are their declared stand-ins and claim no numeric
    // equivalence to field measurements.
    report(8, "declared-stand-ins", true, "(documented exclusion; sweeps carry their own bounds)");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    facet_reproduction();
    clean_round_trip();
    distance_transform_exactness();
    otsu_oracle();
    timing_budget();
    robustness_trends();
    rotation_equivariance();
    declared_exclusions();

    int failed = 0;
    for (const Criterion& c : results) failed += !c.passed;
    std::printf("----------------\n%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
