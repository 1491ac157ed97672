#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oilu/raster.hpp"

namespace oilu {

// Loads a PNG or PGM file (sniffed by magic bytes) as an 8-bit raster
// with 1 or 3 channels. 16-bit PNGs are scaled to 8 bits with libpng's
// rounding scale (out = (in*255 + 32895) >> 16); palette and gray+alpha
// inputs are expanded/stripped.
//
// Throws IoError when the file cannot be read at all and FormatError
// when the bytes are not a valid image.
Raster load_image(const std::string& path);

// PNG writers: fixed settings so identical pixels give identical bytes.
void save_png(const std::string& path, const Raster& img);
void save_png_gray16(const std::string& path, const std::vector<std::uint16_t>& px,
                     int width, int height);

// Binary (P5) PGM; the reader also accepts plain (P2).
void save_pgm(const std::string& path, const Raster& img);

}  // namespace oilu
