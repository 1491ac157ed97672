#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oilu/errors.hpp"

namespace oilu {

// Row-major 8-bit pixel grid, 1 channel (grayscale or binary 0/1) or
// 3 channels (RGB). The one image currency of the whole pipeline.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, int channels = 1, std::uint8_t fill = 0)
        : width_(width), height_(height), channels_(channels),
          px_(static_cast<std::size_t>(width) * height * channels, fill) {
        if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
            throw UnsupportedFormat("raster must be non-empty with 1 or 3 channels");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }
    bool empty() const { return px_.empty(); }

    std::uint8_t& at(int x, int y, int c = 0) {
        return px_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return px_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    std::span<std::uint8_t> row(int y) {
        return {px_.data() + static_cast<std::size_t>(y) * width_ * channels_,
                static_cast<std::size_t>(width_) * channels_};
    }
    std::span<const std::uint8_t> row(int y) const {
        return {px_.data() + static_cast<std::size_t>(y) * width_ * channels_,
                static_cast<std::size_t>(width_) * channels_};
    }

    std::vector<std::uint8_t>& data() { return px_; }
    const std::vector<std::uint8_t>& data() const { return px_; }

    bool operator==(const Raster& o) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<std::uint8_t> px_;
};

// v -> 255 - v on every channel.
Raster complement(const Raster& img);

// Quarter-turn rotations, counter-clockwise as displayed (y-down).
Raster rot90_ccw(const Raster& img);
Raster rot180(const Raster& img);
Raster rotated_quarter_turns_ccw(const Raster& img, int quarter_turns);

}  // namespace oilu
