#include "oilu/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "oilu/image_io.hpp"

namespace oilu {

namespace {

// Classic 5x7 glyphs, column-major bytes (bit 0 = top row), ASCII 32..90.
// Lowercase input is uppercased before lookup.
constexpr std::uint8_t kFont5x7[][5] = {
    {0x00, 0x00, 0x00, 0x00, 0x00},  // ' '
    {0x00, 0x00, 0x5f, 0x00, 0x00},  // !
    {0x00, 0x07, 0x00, 0x07, 0x00},  // "
    {0x14, 0x7f, 0x14, 0x7f, 0x14},  // #
    {0x24, 0x2a, 0x7f, 0x2a, 0x12},  // $
    {0x23, 0x13, 0x08, 0x64, 0x62},  // %
    {0x36, 0x49, 0x55, 0x22, 0x50},  // &
    {0x00, 0x05, 0x03, 0x00, 0x00},  // '
    {0x00, 0x1c, 0x22, 0x41, 0x00},  // (
    {0x00, 0x41, 0x22, 0x1c, 0x00},  // )
    {0x14, 0x08, 0x3e, 0x08, 0x14},  // *
    {0x08, 0x08, 0x3e, 0x08, 0x08},  // +
    {0x00, 0x50, 0x30, 0x00, 0x00},  // ,
    {0x08, 0x08, 0x08, 0x08, 0x08},  // -
    {0x00, 0x60, 0x60, 0x00, 0x00},  // .
    {0x20, 0x10, 0x08, 0x04, 0x02},  // /
    {0x3e, 0x51, 0x49, 0x45, 0x3e},  // 0
    {0x00, 0x42, 0x7f, 0x40, 0x00},  // 1
    {0x42, 0x61, 0x51, 0x49, 0x46},  // 2
    {0x21, 0x41, 0x45, 0x4b, 0x31},  // 3
    {0x18, 0x14, 0x12, 0x7f, 0x10},  // 4
    {0x27, 0x45, 0x45, 0x45, 0x39},  // 5
    {0x3c, 0x4a, 0x49, 0x49, 0x30},  // 6
    {0x01, 0x71, 0x09, 0x05, 0x03},  // 7
    {0x36, 0x49, 0x49, 0x49, 0x36},  // 8
    {0x06, 0x49, 0x49, 0x29, 0x1e},  // 9
    {0x00, 0x36, 0x36, 0x00, 0x00},  // :
    {0x00, 0x56, 0x36, 0x00, 0x00},  // ;
    {0x08, 0x14, 0x22, 0x41, 0x00},  // <
    {0x14, 0x14, 0x14, 0x14, 0x14},  // =
    {0x00, 0x41, 0x22, 0x14, 0x08},  // >
    {0x02, 0x01, 0x51, 0x09, 0x06},  // ?
    {0x32, 0x49, 0x79, 0x41, 0x3e},  // @
    {0x7e, 0x11, 0x11, 0x11, 0x7e},  // A
    {0x7f, 0x49, 0x49, 0x49, 0x36},  // B
    {0x3e, 0x41, 0x41, 0x41, 0x22},  // C
    {0x7f, 0x41, 0x41, 0x22, 0x1c},  // D
    {0x7f, 0x49, 0x49, 0x49, 0x41},  // E
    {0x7f, 0x09, 0x09, 0x09, 0x01},  // F
    {0x3e, 0x41, 0x49, 0x49, 0x7a},  // G
    {0x7f, 0x08, 0x08, 0x08, 0x7f},  // H
    {0x00, 0x41, 0x7f, 0x41, 0x00},  // I
    {0x20, 0x40, 0x41, 0x3f, 0x01},  // J
    {0x7f, 0x08, 0x14, 0x22, 0x41},  // K
    {0x7f, 0x40, 0x40, 0x40, 0x40},  // L
    {0x7f, 0x02, 0x0c, 0x02, 0x7f},  // M
    {0x7f, 0x04, 0x08, 0x10, 0x7f},  // N
    {0x3e, 0x41, 0x41, 0x41, 0x3e},  // O
    {0x7f, 0x09, 0x09, 0x09, 0x06},  // P
    {0x3e, 0x41, 0x51, 0x21, 0x5e},  // Q
    {0x7f, 0x09, 0x19, 0x29, 0x46},  // R
    {0x46, 0x49, 0x49, 0x49, 0x31},  // S
    {0x01, 0x01, 0x7f, 0x01, 0x01},  // T
    {0x3f, 0x40, 0x40, 0x40, 0x3f},  // U
    {0x1f, 0x20, 0x40, 0x20, 0x1f},  // V
    {0x3f, 0x40, 0x38, 0x40, 0x3f},  // W
    {0x63, 0x14, 0x08, 0x14, 0x63},  // X
    {0x07, 0x08, 0x70, 0x08, 0x07},  // Y
    {0x61, 0x51, 0x49, 0x45, 0x43},  // Z
};

void put_px(Raster& img, int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (!img.in_bounds(x, y)) return;
    img.at(x, y, 0) = r;
    img.at(x, y, 1) = g;
    img.at(x, y, 2) = b;
}

void draw_hline(Raster& img, int x0, int x1, int y, std::uint8_t r, std::uint8_t g,
                std::uint8_t b) {
    for (int x = x0; x <= x1; ++x) put_px(img, x, y, r, g, b);
}

void draw_vline(Raster& img, int x, int y0, int y1, std::uint8_t r, std::uint8_t g,
                std::uint8_t b) {
    for (int y = y0; y <= y1; ++y) put_px(img, x, y, r, g, b);
}

void draw_line(Raster& img, int x0, int y0, int x1, int y1, std::uint8_t r, std::uint8_t g,
               std::uint8_t b) {
    int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        put_px(img, x0, y0, r, g, b);
        if (x0 == x1 && y0 == y1) break;
        int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

std::string fmt_level(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

void draw_text(Raster& img, int x, int y, const std::string& text, std::uint8_t r,
               std::uint8_t g, std::uint8_t b, int scale) {
    int cx = x;
    for (char raw : text) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
        if (c < 32 || c > 90) c = '?';
        const std::uint8_t* glyph = kFont5x7[c - 32];
        for (int col = 0; col < 5; ++col) {
            for (int row = 0; row < 7; ++row) {
                if (!(glyph[col] & (1u << row))) continue;
                for (int sy = 0; sy < scale; ++sy)
                    for (int sx = 0; sx < scale; ++sx)
                        put_px(img, cx + col * scale + sx, y + row * scale + sy, r, g, b);
            }
        }
        cx += 6 * scale;
    }
}

Raster draw_success_chart(const std::string& title, const std::vector<double>& levels,
                          const std::vector<double>& rates) {
    const int W = 640, H = 480;
    const int left = 70, right = 25, top = 45, bottom = 55;
    const int x0 = left, x1 = W - right, y0 = top, y1 = H - bottom;

    Raster img(W, H, 3, 255);
    draw_text(img, left, 16, title, 20, 20, 20, 2);

    // y gridlines and labels at 0, 0.25, ..., 1.
    for (int i = 0; i <= 4; ++i) {
        int y = y1 - (y1 - y0) * i / 4;
        draw_hline(img, x0, x1, y, 225, 225, 225);
        char lab[8];
        std::snprintf(lab, sizeof lab, "%.2f", i / 4.0);
        draw_text(img, x0 - 34, y - 3, lab, 90, 90, 90);
    }

    double lo = *std::min_element(levels.begin(), levels.end());
    double hi = *std::max_element(levels.begin(), levels.end());
    if (hi <= lo) hi = lo + 1.0;
    auto px = [&](double level) {
        return x0 + static_cast<int>(std::lround((level - lo) / (hi - lo) * (x1 - x0)));
    };
    auto py = [&](double rate) {
        return y1 - static_cast<int>(std::lround(std::clamp(rate, 0.0, 1.0) * (y1 - y0)));
    };

    // x ticks at each sweep level.
    for (double level : levels) {
        int x = px(level);
        draw_vline(img, x, y1, y1 + 4, 90, 90, 90);
        std::string lab = fmt_level(level);
        draw_text(img, x - static_cast<int>(lab.size()) * 3, y1 + 9, lab, 90, 90, 90);
    }
    draw_text(img, (x0 + x1) / 2 - 15, H - 18, "LEVEL", 60, 60, 60);
    draw_text(img, 8, (y0 + y1) / 2 - 3, "RATE", 60, 60, 60);

    draw_hline(img, x0, x1, y1, 40, 40, 40);
    draw_vline(img, x0, y0, y1, 40, 40, 40);

    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        draw_line(img, px(levels[i]), py(rates[i]), px(levels[i + 1]), py(rates[i + 1]), 40, 80,
                  200);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        int cx = px(levels[i]), cy = py(rates[i]);
        for (int dy = -2; dy <= 2; ++dy)
            for (int dx = -2; dx <= 2; ++dx) put_px(img, cx + dx, cy + dy, 180, 40, 40);
    }
    return img;
}

std::vector<std::string> render_curves(const std::vector<EvalRecord>& records,
                                       const std::string& out_dir) {
    if (records.empty()) throw NoData("no evaluation records to plot");
    std::filesystem::create_directories(out_dir);

    std::map<Distortion, std::vector<const EvalRecord*>> by_kind;
    for (const EvalRecord& r : records) by_kind[r.kind].push_back(&r);

    std::vector<std::string> paths;
    for (const auto& [kind, recs] : by_kind) {
        std::vector<double> levels, rates;
        for (const EvalRecord* r : recs) {
            levels.push_back(r->level);
            rates.push_back(r->success_rate);
        }
        std::string title = std::string("SUCCESS RATE VS ") + distortion_name(kind);
        Raster chart = draw_success_chart(title, levels, rates);
        std::string path = out_dir + "/plot_" + distortion_name(kind) + ".png";
        save_png(path, chart);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace oilu
