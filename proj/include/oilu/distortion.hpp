#pragma once

#include <cstdint>
#include <string>

#include "oilu/raster.hpp"
#include "oilu/vision.hpp"

namespace oilu {

enum class Distortion : std::uint8_t { noise, blur, radial, tilt, contrast };

const char* distortion_name(Distortion d);
Distortion distortion_from_name(const std::string& name);

// Additive zero-mean Gaussian noise (sigma in 8-bit intensity units),
// clamped to [0,255]. Deterministic for a given seed.
Raster apply_noise(const Raster& img, double sigma, std::uint64_t seed);

// Gaussian convolution, kernel radius ceil(3*sigma), clamp-to-edge.
Raster apply_blur(const Raster& img, double sigma_px);

// Single-coefficient radial model about the image center: an output
// pixel at normalized radius r (1 at the corner) samples the source at
// its position scaled by (1 + k1*r^2) about the center; bilinear,
// out-of-domain filled with the corner-median background.
Raster apply_radial(const Raster& img, double k1);

// View of the image plane rotated theta degrees about the horizontal
// axis through its center under a pinhole with focal 1.2 x width.
Raster apply_tilt(const Raster& img, double theta_deg);

// Exposed so tests can forward-project ground-truth points through the
// same camera model apply_tilt resamples with.
Homography tilt_homography(int width, int height, double theta_deg);

// Linear compression toward mid-gray: out = 128 + c*(in - 128).
Raster apply_contrast(const Raster& img, double c);

// Uniform level interface for sweeps; level 0 is the identity for every
// kind (contrast interprets level as 1 - c).
Raster apply_distortion(const Raster& img, Distortion kind, double level, std::uint64_t seed);

}  // namespace oilu
