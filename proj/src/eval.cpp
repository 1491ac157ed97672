#include "oilu/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace oilu {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int worker_count(int trials) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* cap = std::getenv("OILU_EVAL_WORKERS")) {
        int c = std::atoi(cap);
        if (c >= 1) n = std::min(n, c);
    }
    return std::max(1, std::min(n, trials));
}

enum class Outcome : std::uint8_t { success, wrong_value, no_marker, no_rings, undecodable, ambiguous };

struct TrialResult {
    Outcome outcome;
    double ms;
};

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint32_t kind_index, std::uint32_t level_index,
                         std::uint32_t trial) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(kind_index) << 32 | level_index));
    return splitmix64(h ^ trial);
}

OiluNumber random_code(std::uint64_t seed, int length) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> digits(static_cast<std::size_t>(length));
    for (auto& d : digits) d = static_cast<std::uint8_t>(rng() % 10);
    return OiluNumber(std::move(digits));
}

SweepConfig SweepConfig::defaults() {
    SweepConfig cfg;
    cfg.cells = {
        {Distortion::noise, {0, 5, 10, 20, 40}, false},
        {Distortion::blur, {0, 0.5, 1, 2, 4}, false},
        {Distortion::radial, {0, 0.02, 0.05, 0.1, 0.2}, false},
        {Distortion::tilt, {0, 10, 20, 40, 60}, true},
        {Distortion::contrast, {0, 0.5, 0.75, 0.85, 0.92}, false},
    };
    cfg.trials = 200;
    cfg.code_length = 4;
    cfg.seed = 1;
    // Wide quiet zone so the geometric kinds keep the marker inside the
    // frame at their top sweep levels.
    cfg.style.canvas_px = 640;
    cfg.style.quiet_zone_px = 100;
    cfg.style.pitch_px = 48;
    cfg.style.stroke_px = 12;
    return cfg;
}

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
    SweepConfig cfg = defaults();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("code_length")) cfg.code_length = j.at("code_length").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("measure_timing")) cfg.measure_timing = j.at("measure_timing").get<bool>();
    if (j.contains("style")) {
        const auto& s = j.at("style");
        if (s.contains("canvas_px")) cfg.style.canvas_px = s.at("canvas_px").get<int>();
        if (s.contains("quiet_zone_px")) cfg.style.quiet_zone_px = s.at("quiet_zone_px").get<int>();
        if (s.contains("stroke_px")) cfg.style.stroke_px = s.at("stroke_px").get<int>();
        if (s.contains("pitch_px")) cfg.style.pitch_px = s.at("pitch_px").get<int>();
        if (s.contains("polarity"))
            cfg.style.polarity = s.at("polarity").get<std::string>() == "light_on_dark"
                                     ? Polarity::light_on_dark
                                     : Polarity::dark_on_light;
    }
    if (j.contains("decode")) {
        const auto& d = j.at("decode");
        if (d.contains("out_size")) cfg.decode.out_size = d.at("out_size").get<int>();
        if (d.contains("beta")) cfg.decode.beta = d.at("beta").get<double>();
        if (d.contains("floor_factor")) cfg.decode.floor_factor = d.at("floor_factor").get<double>();
        if (d.contains("binarization"))
            cfg.decode.binarization = d.at("binarization").get<std::string>() == "adaptive"
                                          ? Binarization::adaptive
                                          : Binarization::otsu;
        if (d.contains("ring_count_hint"))
            cfg.decode.ring_count_hint = d.at("ring_count_hint").get<int>();
    }
    if (j.contains("cells")) {
        cfg.cells.clear();
        for (const auto& c : j.at("cells")) {
            SweepCell cell;
            cell.kind = distortion_from_name(c.at("kind").get<std::string>());
            cell.levels = c.at("levels").get<std::vector<double>>();
            cell.rectify = c.value("rectify", cell.kind == Distortion::tilt);
            cfg.cells.push_back(cell);
        }
    }
    return cfg;
}

nlohmann::json SweepConfig::to_json() const {
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& c : this->cells)
        cells.push_back({{"kind", distortion_name(c.kind)},
                         {"levels", c.levels},
                         {"rectify", c.rectify}});
    return nlohmann::json{
        {"cells", cells},
        {"trials", trials},
        {"code_length", code_length},
        {"seed", seed},
        {"measure_timing", measure_timing},
        {"style",
         {{"canvas_px", style.canvas_px},
          {"quiet_zone_px", style.quiet_zone_px},
          {"stroke_px", style.stroke_px},
          {"pitch_px", style.pitch_px},
          {"polarity",
           style.polarity == Polarity::light_on_dark ? "light_on_dark" : "dark_on_light"}}},
    };
}

int EvalRecord::failure_total() const {
    int t = 0;
    for (const auto& [stage, n] : failures) t += n;
    return t;
}

std::vector<EvalRecord> run_eval(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw Error("trials must be at least 1");
    cfg.style.validate(cfg.code_length);

    std::vector<EvalRecord> records;
    for (std::uint32_t kind_idx = 0; kind_idx < cfg.cells.size(); ++kind_idx) {
        const SweepCell& cell = cfg.cells[kind_idx];
        DecodeConfig decode_cfg = cfg.decode;
        decode_cfg.rectify = cell.rectify;

        for (std::uint32_t level_idx = 0; level_idx < cell.levels.size(); ++level_idx) {
            const double level = cell.levels[level_idx];
            std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));

            auto run_trial = [&](int trial) {
                std::uint64_t ts = trial_seed(cfg.seed, kind_idx, level_idx,
                                              static_cast<std::uint32_t>(trial));
                OiluNumber code = random_code(ts, cfg.code_length);
                Raster img = render_marker(code, cfg.style);
                img = apply_distortion(img, cell.kind, level, splitmix64(ts));

                TrialResult r{};
                try {
                    DecodeResult dr = decode(img, decode_cfg);
                    r.ms = dr.timing_ms;
                    bool ok = cell.kind == Distortion::tilt ? dr.facets.contains(code)
                                                            : dr.value == code;
                    r.outcome = ok ? Outcome::success : Outcome::wrong_value;
                } catch (const DecodeFailure& f) {
                    r.ms = f.timing_ms();
                    switch (f.stage()) {
                        case DecodeStage::no_marker: r.outcome = Outcome::no_marker; break;
                        case DecodeStage::no_rings: r.outcome = Outcome::no_rings; break;
                        case DecodeStage::ambiguous: r.outcome = Outcome::ambiguous; break;
                        default: r.outcome = Outcome::undecodable; break;
                    }
                }
                results[static_cast<std::size_t>(trial)] = r;
            };

            int workers = worker_count(cfg.trials);
            if (workers == 1) {
                for (int t = 0; t < cfg.trials; ++t) run_trial(t);
            } else {
                std::atomic<int> next{0};
                std::vector<std::thread> pool;
                pool.reserve(static_cast<std::size_t>(workers));
                for (int w = 0; w < workers; ++w) {
                    pool.emplace_back([&] {
                        for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                            run_trial(t);
                    });
                }
                for (std::thread& th : pool) th.join();
            }

            EvalRecord rec;
            rec.kind = cell.kind;
            rec.level = level;
            rec.trials = cfg.trials;
            std::vector<double> times;
            times.reserve(results.size());
            for (const TrialResult& r : results) {
                times.push_back(r.ms);
                switch (r.outcome) {
                    case Outcome::success: ++rec.successes; break;
                    case Outcome::no_marker: ++rec.failures[DecodeStage::no_marker]; break;
                    case Outcome::no_rings: ++rec.failures[DecodeStage::no_rings]; break;
                    case Outcome::ambiguous: ++rec.failures[DecodeStage::ambiguous]; break;
                    // A confidently wrong read is an undecodable ring that
                    // slipped the thresholds; same bucket.
                    case Outcome::wrong_value:
                    case Outcome::undecodable: ++rec.failures[DecodeStage::undecodable]; break;
                }
            }
            rec.success_rate = static_cast<double>(rec.successes) / rec.trials;
            if (cfg.measure_timing) {
                double sum = 0.0;
                for (double t : times) sum += t;
                rec.mean_ms = sum / static_cast<double>(times.size());
                std::sort(times.begin(), times.end());
                std::size_t idx = (times.size() * 95 + 99) / 100;  // nearest-rank p95
                rec.p95_ms = times[std::min(times.size() - 1, idx == 0 ? 0 : idx - 1)];
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

void write_csv(const std::vector<EvalRecord>& records, std::ostream& out, bool include_timing) {
    out << kCsvHeader << "\n";
    char buf[256];
    for (const EvalRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%.6g,%d,%d,%.4f,%.3f,%.3f,%d,%d,%d,%d\n",
                      distortion_name(r.kind), r.level, r.trials, r.successes, r.success_rate,
                      include_timing ? r.mean_ms : 0.0, include_timing ? r.p95_ms : 0.0,
                      r.failure(DecodeStage::no_marker), r.failure(DecodeStage::no_rings),
                      r.failure(DecodeStage::undecodable), r.failure(DecodeStage::ambiguous));
        out << buf;
    }
}

std::string csv_string(const std::vector<EvalRecord>& records, bool include_timing) {
    std::ostringstream ss;
    write_csv(records, ss, include_timing);
    return ss.str();
}

}  // namespace oilu
