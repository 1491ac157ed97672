#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("OILU_CLI");
    REQUIRE_MESSAGE(p != nullptr, "OILU_CLI must point at the built binary");
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("oilu_cli_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("encode then decode round trip through files") {
    TempDir dir;
    RunResult enc = run("encode 4670 --out " + dir.file("m.png") + " --geometry");
    CHECK(enc.exit_code == 0);
    CHECK(enc.out == "4670\n6890\n8230\n2450\n");
    CHECK(std::filesystem::exists(dir.file("m.png")));
    CHECK(std::filesystem::exists(dir.file("m.png") + ".geom.json"));

    nlohmann::json geom = nlohmann::json::parse(slurp(dir.file("m.png") + ".geom.json"));
    CHECK(geom.at("border_half_width_px") == 224);
    CHECK(geom.at("rings").size() == 4);

    RunResult dec = run("decode " + dir.file("m.png"));
    CHECK(dec.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(dec.out);
    CHECK(j.at("value") == "4670");

    // PGM output decodes identically.
    RunResult enc_pgm = run("encode 4670 --out " + dir.file("m.pgm"));
    CHECK(enc_pgm.exit_code == 0);
    RunResult dec_pgm = run("decode " + dir.file("m.pgm"));
    CHECK(nlohmann::json::parse(dec_pgm.out).at("value") == "4670");
}

TEST_CASE("cli exit codes") {
    TempDir dir;
    CHECK(run("encode 12x --out " + dir.file("x.png")).exit_code == 1);     // bad number
    CHECK(run("encode 123456789 --out " + dir.file("x.png")).exit_code == 1);  // overflow
    CHECK(run("facets 12x").exit_code == 1);
    CHECK(run("decode " + dir.file("missing.png")).exit_code == 3);         // I/O
    CHECK(run("bogus-subcommand").exit_code == 1);

    // Markerless image: decode failure with a JSON error record.
    std::ofstream pgm(dir.file("blank.pgm"), std::ios::binary);
    pgm << "P5\n128 128\n255\n";
    for (int i = 0; i < 128 * 128; ++i) pgm.put(static_cast<char>(200));
    pgm.close();
    RunResult dec = run("decode " + dir.file("blank.pgm"));
    CHECK(dec.exit_code == 2);
    nlohmann::json err = nlohmann::json::parse(dec.out);
    CHECK(err.at("error") == "NoMarkerFound");
}

TEST_CASE("facets subcommand prints the group in turn order") {
    RunResult r = run("facets 4670");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "4670\n6890\n8230\n2450\n");
    CHECK(run("facets 0").out == "0\n0\n0\n0\n");
}

TEST_CASE("decode --debug-dir writes the stage files") {
    TempDir dir;
    REQUIRE(run("encode 31 --out " + dir.file("m.png")).exit_code == 0);
    RunResult dec = run("decode " + dir.file("m.png") + " --debug-dir " + dir.file("dbg"));
    CHECK(dec.exit_code == 0);
    for (const char* name : {"01_gray.png", "02_binary.png", "03_clean.png", "04_quad.png",
                             "05_depth.png", "06_labels.png"})
        CHECK(std::filesystem::exists(dir.path / "dbg" / name));
}

TEST_CASE("eval produces the pinned CSV schema and is seed-deterministic") {
    TempDir dir;
    std::string cfg_path = dir.file("sweep.json");
    {
        std::ofstream f(cfg_path);
        f << R"({"trials": 4, "code_length": 2, "cells": [
                 {"kind": "noise", "levels": [0, 5]},
                 {"kind": "contrast", "levels": [0]}]})";
    }
    RunResult a = run("eval --config " + cfg_path + " --seed 7 --no-timing --out-dir " +
                      dir.file("a") + " --plots");
    CHECK(a.exit_code == 0);
    nlohmann::json meta = nlohmann::json::parse(a.out);
    CHECK(meta.at("records") == 3);

    std::string csv_a = slurp(dir.file("a") + "/eval.csv");
    CHECK(csv_a.rfind("kind,level,trials,successes,success_rate,mean_ms,p95_ms,"
                      "fail_no_marker,fail_no_rings,fail_undecodable,fail_ambiguous\n",
                      0) == 0);
    CHECK(std::filesystem::exists(dir.file("a") + "/plot_noise.png"));
    CHECK(std::filesystem::exists(dir.file("a") + "/plot_contrast.png"));

    RunResult b = run("eval --config " + cfg_path + " --seed 7 --no-timing --out-dir " +
                      dir.file("b"));
    CHECK(b.exit_code == 0);
    CHECK(slurp(dir.file("b") + "/eval.csv") == csv_a);

    // Level-0 rows decode everything.
    CHECK(csv_a.find("noise,0,4,4,1.0000,") != std::string::npos);
    CHECK(csv_a.find("contrast,0,4,4,1.0000,") != std::string::npos);
}

TEST_CASE("selftest passes on a healthy build") {
    RunResult r = run("selftest");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("codec-group-laws") != std::string::npos);
    CHECK(r.out.find("edt-exactness") != std::string::npos);
    CHECK(r.out.find("otsu-exhaustive") != std::string::npos);
    CHECK(r.out.find("render-decode-roundtrip") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("ms)") != std::string::npos);  // per-suite timing
}

TEST_CASE("bundled default sweep config parses") {
    const char* repo = std::getenv("OILU_REPO_DIR");
    REQUIRE(repo != nullptr);
    std::string cfg = slurp(std::string(repo) + "/configs/default_sweep.json");
    REQUIRE_FALSE(cfg.empty());
    nlohmann::json j = nlohmann::json::parse(cfg);
    CHECK(j.contains("cells"));
    CHECK(j.at("cells").size() == 5);
}
