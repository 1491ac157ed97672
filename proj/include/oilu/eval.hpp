#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "oilu/decoder.hpp"
#include "oilu/distortion.hpp"
#include "oilu/render.hpp"

#include "json.hpp"

namespace oilu {

struct SweepCell {
    Distortion kind;
    std::vector<double> levels;
    bool rectify = false;  // per-kind decode override (tilt wants it)
};

struct SweepConfig {
    std::vector<SweepCell> cells;
    int trials = 200;
    int code_length = 4;
    std::uint64_t seed = 1;
    MarkerStyle style;       // must leave headroom for the geometric kinds
    DecodeConfig decode;
    bool measure_timing = true;  // off: timing columns are written as zero

    static SweepConfig defaults();
    static SweepConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct EvalRecord {
    Distortion kind;
    double level = 0.0;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    double mean_ms = 0.0;
    double p95_ms = 0.0;
    // Failure histogram by decode stage; wrong-value reads count as
    // undecodable so that trials = successes + sum(failures).
    std::map<DecodeStage, int> failures;

    int failure(DecodeStage s) const {
        auto it = failures.find(s);
        return it == failures.end() ? 0 : it->second;
    }
    int failure_total() const;
};

// Renders `trials` seeded random codes per (kind, level), distorts,
// decodes, and aggregates. A trial succeeds on an exact value match, or
// on any facet match for the tilt kind (camera roll is not controlled
// there). Per-trial RNG streams derive from (seed, kind, level, trial),
// so worker parallelism (OILU_EVAL_WORKERS caps it) cannot change any
// outcome.
std::vector<EvalRecord> run_eval(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader =
    "kind,level,trials,successes,success_rate,mean_ms,p95_ms,"
    "fail_no_marker,fail_no_rings,fail_undecodable,fail_ambiguous";

void write_csv(const std::vector<EvalRecord>& records, std::ostream& out,
               bool include_timing = true);
std::string csv_string(const std::vector<EvalRecord>& records, bool include_timing = true);

// Deterministic per-trial RNG stream (splitmix-style hash of the
// coordinates); exposed for tests.
std::uint64_t trial_seed(std::uint64_t seed, std::uint32_t kind_index, std::uint32_t level_index,
                         std::uint32_t trial);

// Seeded random code of the given length.
OiluNumber random_code(std::uint64_t seed, int length);

}  // namespace oilu
