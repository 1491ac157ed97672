#pragma once

#include <optional>
#include <string>

#include "oilu/codec.hpp"
#include "oilu/geometry.hpp"
#include "oilu/levelset.hpp"
#include "oilu/raster.hpp"
#include "oilu/vision.hpp"

#include "json.hpp"

namespace oilu {

enum class Binarization : std::uint8_t { otsu, adaptive };

struct DecodeConfig {
    bool rectify = false;
    int out_size = 512;
    std::optional<int> ring_count_hint;
    double beta = 0.5;
    double floor_factor = 0.1;
    double band_half_width_factor = 0.4;
    Binarization binarization = Binarization::otsu;
    double min_area_factor = 1e-4;       // small-component cleanup, fraction of pixels
    double min_quad_area_factor = 5e-4;  // quad candidates, fraction of pixels
    PolarityHint polarity = PolarityHint::automatic;
    std::optional<std::string> debug_dir;

    void validate() const;  // throws Error on out-of-range factors
};

struct RingReadout {
    SidePattern pattern;
    int digit = 0;
    double margin = 0.0;
};

struct DecodeResult {
    OiluNumber value;  // as-seen orientation, outermost ring first
    FacetGroup facets;
    std::vector<RingReadout> per_ring;
    Quad quad;
    double timing_ms = 0.0;

    nlohmann::json to_json() const;  // single-line machine record
};

// Why a decode gave up, for failure attribution in the harness.
enum class DecodeStage : std::uint8_t {
    no_marker,    // quad detection (incl. degenerate quads)
    no_rings,     // depth histogram had no code band
    undecodable,  // a ring's counts formed no valid glyph
    ambiguous,    // ring bands irregularly spaced
};

const char* decode_stage_name(DecodeStage s);

class DecodeFailure : public Error {
public:
    DecodeFailure(DecodeStage stage, const std::string& what, double timing_ms,
                  std::optional<int> ring = std::nullopt)
        : Error(what), stage_(stage), timing_ms_(timing_ms), ring_(ring) {}

    DecodeStage stage() const { return stage_; }
    double timing_ms() const { return timing_ms_; }
    std::optional<int> ring() const { return ring_; }

    nlohmann::json to_json() const;

private:
    DecodeStage stage_;
    double timing_ms_;
    std::optional<int> ring_;
};

// Full pipeline: grayscale, binarize, cleanup, quad detection, optional
// rectification, distance map, ring bands, labels, occupancy, bits,
// digits. Throws DecodeFailure carrying the failing stage; anything else
// it throws (format errors, bad config) is not a decode failure.
DecodeResult decode(const Raster& img, const DecodeConfig& cfg = {});

// Loads PNG/PGM then decodes; I/O and format problems throw
// IoError/FormatError rather than DecodeFailure.
DecodeResult decode_file(const std::string& path, const DecodeConfig& cfg = {});

}  // namespace oilu
