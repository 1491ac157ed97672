#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oilu/codec.hpp"

namespace oilu::selftest {

// Independent reference implementations the fast paths are checked
// against. They live here (not next to the implementations) so `oilu
// selftest` and the test suites share one set of oracles.

// All-pairs O(n^2) squared Euclidean distance to the nearest seed.
std::vector<std::int64_t> brute_force_edt_squared(const std::vector<std::uint8_t>& seeds,
                                                  int width, int height);

// Exhaustive 256-candidate Otsu search recomputing class moments from
// scratch per candidate, smallest t on ties.
int exhaustive_otsu(const std::array<std::uint64_t, 256>& histogram);

struct SuiteResult {
    std::string name;
    bool passed = false;
    int checks = 0;
    double ms = 0.0;
    std::string detail;  // first failure, empty when green
};

// Codec group laws and the published facet set. The digit table is
// injectable so a fault-injection test can prove the suite catches a
// corrupted mapping.
SuiteResult run_codec_suite(const std::function<SidePattern(int)>& digit_table);
SuiteResult run_codec_suite();

// Fast EDT vs brute force on random small masks.
SuiteResult run_edt_suite(std::uint64_t seed, int masks = 25);

// Fast Otsu vs exhaustive search on random histograms.
SuiteResult run_otsu_suite(std::uint64_t seed, int histograms = 25);

// Render/decode round trips over random codes.
SuiteResult run_roundtrip_suite(std::uint64_t seed, int codes = 25);

std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace oilu::selftest
