#include "oilu/raster.hpp"

namespace oilu {

Raster complement(const Raster& img) {
    Raster out = img;
    for (std::uint8_t& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

Raster rot90_ccw(const Raster& img) {
    // dst(x, y) = src(W-1-y, x): the top edge becomes the left edge.
    Raster out(img.height(), img.width(), img.channels());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            for (int c = 0; c < img.channels(); ++c)
                out.at(x, y, c) = img.at(img.width() - 1 - y, x, c);
    return out;
}

Raster rot180(const Raster& img) {
    Raster out(img.width(), img.height(), img.channels());
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x)
            for (int c = 0; c < img.channels(); ++c)
                out.at(x, y, c) = img.at(img.width() - 1 - x, img.height() - 1 - y, c);
    return out;
}

Raster rotated_quarter_turns_ccw(const Raster& img, int quarter_turns) {
    int k = ((quarter_turns % 4) + 4) % 4;
    switch (k) {
        case 0: return img;
        case 1: return rot90_ccw(img);
        case 2: return rot180(img);
        default: return rot180(rot90_ccw(img));
    }
}

}  // namespace oilu
