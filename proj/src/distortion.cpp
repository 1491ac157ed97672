#include "oilu/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oilu/errors.hpp"

namespace oilu {

namespace {

std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Background fill for pixels mapped from outside the frame: the median
// of the four corner pixels (deterministic, polarity-aware).
std::uint8_t corner_median(const Raster& img, int c) {
    std::array<std::uint8_t, 4> v{img.at(0, 0, c), img.at(img.width() - 1, 0, c),
                                  img.at(0, img.height() - 1, c),
                                  img.at(img.width() - 1, img.height() - 1, c)};
    std::sort(v.begin(), v.end());
    return static_cast<std::uint8_t>((v[1] + v[2] + 1) / 2);
}

// Inverse-map resampling through src = f(output position).
template <typename MapFn>
Raster inverse_map(const Raster& img, MapFn f) {
    Raster out(img.width(), img.height(), img.channels());
    std::array<std::uint8_t, 3> fill{};
    for (int c = 0; c < img.channels(); ++c) fill[static_cast<std::size_t>(c)] = corner_median(img, c);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            Point src = f(Point{static_cast<double>(x), static_cast<double>(y)});
            bool in = src.x >= 0 && src.y >= 0 && src.x <= img.width() - 1 &&
                      src.y <= img.height() - 1;
            for (int c = 0; c < img.channels(); ++c)
                out.at(x, y, c) = in ? clamp_u8(bilinear_sample(img, src.x, src.y, c))
                                     : fill[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

}  // namespace

const char* distortion_name(Distortion d) {
    switch (d) {
        case Distortion::noise: return "noise";
        case Distortion::blur: return "blur";
        case Distortion::radial: return "radial";
        case Distortion::tilt: return "tilt";
        case Distortion::contrast: return "contrast";
    }
    return "?";
}

Distortion distortion_from_name(const std::string& name) {
    for (Distortion d : {Distortion::noise, Distortion::blur, Distortion::radial,
                         Distortion::tilt, Distortion::contrast})
        if (name == distortion_name(d)) return d;
    throw Error("unknown distortion kind: " + name);
}

Raster apply_noise(const Raster& img, double sigma, std::uint64_t seed) {
    if (sigma < 0) throw Error("noise sigma must be nonnegative");
    if (sigma == 0) return img;
    Raster out = img;
    std::mt19937_64 rng(seed);
    // Box-Muller from explicit uniforms, so results do not depend on the
    // standard library's distribution internals.
    auto uniform = [&] {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    bool have_spare = false;
    double spare = 0.0;
    for (std::uint8_t& v : out.data()) {
        double z;
        if (have_spare) {
            z = spare;
            have_spare = false;
        } else {
            double u1 = uniform(), u2 = uniform();
            double r = std::sqrt(-2.0 * std::log(u1));
            z = r * std::cos(2.0 * std::numbers::pi * u2);
            spare = r * std::sin(2.0 * std::numbers::pi * u2);
            have_spare = true;
        }
        v = clamp_u8(v + sigma * z);
    }
    return out;
}

Raster apply_blur(const Raster& img, double sigma_px) {
    if (sigma_px < 0) throw Error("blur sigma must be nonnegative");
    if (sigma_px == 0) return img;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma_px));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-0.5 * (i / sigma_px) * (i / sigma_px));
        kernel[static_cast<std::size_t>(i + radius)] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;

    const int W = img.width(), H = img.height(), C = img.channels();
    auto idx = [&](int x, int y, int c) {
        return (static_cast<std::size_t>(y) * W + x) * C + c;
    };
    // Horizontal pass into a float buffer, vertical pass rounding once.
    std::vector<double> tmp(img.data().size());
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            for (int c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    int xs = std::clamp(x + k, 0, W - 1);
                    acc += kernel[static_cast<std::size_t>(k + radius)] * img.at(xs, y, c);
                }
                tmp[idx(x, y, c)] = acc;
            }
        }
    }
    Raster out(W, H, C);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            for (int c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    int ys = std::clamp(y + k, 0, H - 1);
                    acc += kernel[static_cast<std::size_t>(k + radius)] * tmp[idx(x, ys, c)];
                }
                out.at(x, y, c) = clamp_u8(acc);
            }
        }
    }
    return out;
}

Raster apply_radial(const Raster& img, double k1) {
    if (std::abs(k1) > 0.5) throw Error("|k1| must be at most 0.5");
    if (k1 == 0) return img;
    const double cx = (img.width() - 1) / 2.0, cy = (img.height() - 1) / 2.0;
    const double r_norm = std::hypot(cx, cy);  // r = 1 at the frame corner
    return inverse_map(img, [&](Point p) {
        double dx = p.x - cx, dy = p.y - cy;
        double r2 = (dx * dx + dy * dy) / (r_norm * r_norm);
        double s = 1.0 + k1 * r2;
        return Point{cx + dx * s, cy + dy * s};
    });
}

Homography tilt_homography(int width, int height, double theta_deg) {
    const double f = 1.2 * width;
    const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
    const double st = std::sin(theta_deg * std::numbers::pi / 180.0);
    const double ct = std::cos(theta_deg * std::numbers::pi / 180.0);
    // Plane point (x, y, 0) centered at distance f: rotate about the
    // horizontal axis, project with focal f. In centered coordinates
    //   u = f*x / (f + y*sin), v = f*y*cos / (f + y*sin).
    // Composed with the (de)centering translations as one 3x3 map.
    std::array<double, 9> m{};
    // [u'] = T(cx,cy) * P * T(-cx,-cy), with P = [[f,0,0],[0,f*ct,0],[0,st,f]]
    // row 0: f*(x-cx) + cx*(st*(y-cy) + f)
    m[0] = f;
    m[1] = cx * st;
    m[2] = -f * cx + cx * (-st * cy + f);
    m[3] = 0;
    m[4] = f * ct + cy * st;
    m[5] = -f * ct * cy + cy * (-st * cy + f);
    m[6] = 0;
    m[7] = st;
    m[8] = -st * cy + f;
    return Homography{m};
}

Raster apply_tilt(const Raster& img, double theta_deg) {
    if (theta_deg < 0 || theta_deg >= 80) throw Error("tilt must be in [0, 80) degrees");
    if (theta_deg == 0) return img;
    Homography inv = tilt_homography(img.width(), img.height(), theta_deg).inverse();
    return inverse_map(img, [&](Point p) { return inv.apply(p); });
}

Raster apply_contrast(const Raster& img, double c) {
    if (c < 0 || c > 1) throw Error("contrast factor must be in [0, 1]");
    Raster out = img;
    for (std::uint8_t& v : out.data()) v = clamp_u8(128.0 + c * (v - 128.0));
    return out;
}

Raster apply_distortion(const Raster& img, Distortion kind, double level, std::uint64_t seed) {
    switch (kind) {
        case Distortion::noise: return apply_noise(img, level, seed);
        case Distortion::blur: return apply_blur(img, level);
        case Distortion::radial: return apply_radial(img, level);
        case Distortion::tilt: return apply_tilt(img, level);
        case Distortion::contrast: return apply_contrast(img, 1.0 - level);
    }
    throw Error("unknown distortion kind");
}

}  // namespace oilu
