#include "oilu/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "oilu/decoder.hpp"
#include "oilu/eval.hpp"
#include "oilu/levelset.hpp"
#include "oilu/render.hpp"
#include "oilu/vision.hpp"

namespace oilu::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct SuiteRun {
    SuiteResult result;
    Clock::time_point t0 = Clock::now();

    explicit SuiteRun(std::string name) { result.name = std::move(name); }

    void check(bool ok, const std::string& what) {
        ++result.checks;
        if (!ok && result.detail.empty()) result.detail = what;
    }

    SuiteResult finish() {
        result.passed = result.detail.empty();
        result.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        return result;
    }
};

}  // namespace

std::vector<std::int64_t> brute_force_edt_squared(const std::vector<std::uint8_t>& seeds,
                                                  int width, int height) {
    std::vector<std::pair<int, int>> pts;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (seeds[static_cast<std::size_t>(y) * width + x]) pts.emplace_back(x, y);

    std::vector<std::int64_t> out(static_cast<std::size_t>(width) * height, kEdtInfinity);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            std::int64_t best = kEdtInfinity;
            for (auto [px, py] : pts) {
                std::int64_t dx = x - px, dy = y - py;
                best = std::min(best, dx * dx + dy * dy);
            }
            out[static_cast<std::size_t>(y) * width + x] = best;
        }
    }
    return out;
}

int exhaustive_otsu(const std::array<std::uint64_t, 256>& histogram) {
    int best_t = -1;
    double best_sb = -1.0;
    for (int t = 0; t < 256; ++t) {
        std::uint64_t n0 = 0, s0 = 0, n1 = 0, s1 = 0;
        for (int v = 0; v <= t; ++v) {
            n0 += histogram[static_cast<std::size_t>(v)];
            s0 += histogram[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(v);
        }
        for (int v = t + 1; v < 256; ++v) {
            n1 += histogram[static_cast<std::size_t>(v)];
            s1 += histogram[static_cast<std::size_t>(v)] * static_cast<std::uint64_t>(v);
        }
        if (n0 == 0 || n1 == 0) continue;
        double dmu = static_cast<double>(s0) / static_cast<double>(n0) -
                     static_cast<double>(s1) / static_cast<double>(n1);
        double sb = static_cast<double>(n0) * static_cast<double>(n1) * dmu * dmu;
        if (sb > best_sb) {
            best_sb = sb;
            best_t = t;
        }
    }
    if (best_t < 0) throw DegenerateHistogram("single-intensity histogram");
    return best_t;
}

SuiteResult run_codec_suite(const std::function<SidePattern(int)>& digit_table) {
    SuiteRun run("codec-group-laws");

    // Round trip and rotation group law.
    for (int d = 0; d <= 9; ++d) {
        run.check(pattern_to_digit(digit_table(d)) == d,
                  "round trip failed for digit " + std::to_string(d));
        run.check(rotate_digit(d, 0) == d, "rho^0 must be identity");
        run.check(rotate_digit(d, 4) == d, "rho^4 must be identity");
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                run.check(rotate_digit(rotate_digit(d, a), b) == rotate_digit(d, a + b),
                          "group law failed");
        for (int k = 0; k < 4; ++k)
            run.check(pattern_to_digit(rotate_pattern_ccw(digit_table(d), k)) ==
                          rotate_digit(d, k),
                      "pattern/digit rotation squares do not commute at digit " +
                          std::to_string(d));
    }

    // Validity partition: 13 of the 16 subsets decode.
    int valid = 0;
    for (int m = 0; m < 16; ++m) valid += SidePattern(static_cast<std::uint8_t>(m)).valid();
    run.check(valid == 13, "expected 13 valid patterns, got " + std::to_string(valid));

    // The published facet family.
    FacetGroup g = facet_values(OiluNumber::parse("4670"));
    std::set<std::string> got;
    for (const OiluNumber& v : g.values) got.insert(v.str());
    run.check(got == std::set<std::string>{"4670", "2450", "8230", "6890"},
              "facet set of 4670 is wrong");

    // Facet closure: every member generates the same set.
    for (const OiluNumber& v : g.values) {
        FacetGroup h = facet_values(v);
        std::set<std::string> hs;
        for (const OiluNumber& x : h.values) hs.insert(x.str());
        run.check(hs == got, "facet group is not closed");
    }
    return run.finish();
}

SuiteResult run_codec_suite() {
    return run_codec_suite([](int d) { return digit_to_pattern(d); });
}

SuiteResult run_edt_suite(std::uint64_t seed, int masks) {
    SuiteRun run("edt-exactness");
    std::mt19937_64 rng(seed);
    for (int m = 0; m < masks; ++m) {
        const int w = 32, h = 32;
        std::vector<std::uint8_t> seeds(w * h, 0);
        int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) seeds[rng() % seeds.size()] = 1;
        auto fast = edt_squared(seeds, w, h);
        auto brute = brute_force_edt_squared(seeds, w, h);
        run.check(fast == brute, "EDT mismatch on mask " + std::to_string(m));
    }
    return run.finish();
}

SuiteResult run_otsu_suite(std::uint64_t seed, int histograms) {
    SuiteRun run("otsu-exhaustive");
    std::mt19937_64 rng(seed);
    for (int i = 0; i < histograms; ++i) {
        std::array<std::uint64_t, 256> hist{};
        // Mix of bimodal and flat-noise histograms.
        int mode_a = static_cast<int>(rng() % 256), mode_b = static_cast<int>(rng() % 256);
        for (int k = 0; k < 512; ++k) {
            hist[rng() % 256] += rng() % 4;
            hist[static_cast<std::size_t>(std::clamp(
                mode_a + static_cast<int>(rng() % 21) - 10, 0, 255))] += rng() % 32;
            hist[static_cast<std::size_t>(std::clamp(
                mode_b + static_cast<int>(rng() % 21) - 10, 0, 255))] += rng() % 32;
        }
        bool degenerate = false;
        int nonzero = 0, first = -1;
        for (int v = 0; v < 256; ++v)
            if (hist[static_cast<std::size_t>(v)]) {
                ++nonzero;
                if (first < 0) first = v;
            }
        degenerate = nonzero <= 1;
        if (degenerate) continue;
        run.check(otsu_threshold(hist) == exhaustive_otsu(hist),
                  "Otsu mismatch on histogram " + std::to_string(i));
    }
    return run.finish();
}

SuiteResult run_roundtrip_suite(std::uint64_t seed, int codes) {
    SuiteRun run("render-decode-roundtrip");
    std::mt19937_64 rng(seed);
    for (int i = 0; i < codes; ++i) {
        int length = 1 + static_cast<int>(rng() % 4);
        OiluNumber code = random_code(rng(), length);
        MarkerStyle style;
        style.polarity = (rng() & 1) ? Polarity::light_on_dark : Polarity::dark_on_light;
        try {
            DecodeResult r = decode(render_marker(code, style));
            run.check(r.value == code, "round trip read " + r.value.str() + " for " + code.str());
        } catch (const Error& e) {
            run.check(false, "round trip threw for " + code.str() + ": " + e.what());
        }
    }
    return run.finish();
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
    return {run_codec_suite(), run_edt_suite(seed), run_otsu_suite(seed + 1),
            run_roundtrip_suite(seed + 2)};
}

}  // namespace oilu::selftest
