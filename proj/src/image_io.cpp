#include "oilu/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <memory>

namespace oilu {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    (void)png;
    throw FormatError(std::string("png: ") + msg);
}

void png_warn_fn(png_structp, png_const_charp) {}

Raster load_png(std::FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             png_error_fn, png_warn_fn);
    if (!png) throw IoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: out of memory");
    }
    try {
        png_init_io(png, f);
        png_read_info(png, info);

        png_set_scale_16(png);              // 16-bit -> 8-bit, rounded
        png_set_palette_to_rgb(png);
        png_set_expand_gray_1_2_4_to_8(png);
        png_set_strip_alpha(png);
        png_read_update_info(png, info);

        const png_uint_32 w = png_get_image_width(png, info);
        const png_uint_32 h = png_get_image_height(png, info);
        const int ch = png_get_channels(png, info);
        if (ch != 1 && ch != 3)
            throw UnsupportedFormat(path + ": unsupported channel count " + std::to_string(ch));

        Raster img(static_cast<int>(w), static_cast<int>(h), ch);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y) rows[y] = img.row(static_cast<int>(y)).data();
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
        png_destroy_read_struct(&png, &info, nullptr);
        return img;
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
}

int pgm_next_token(std::FILE* f) {
    int c;
    for (;;) {
        c = std::fgetc(f);
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (c == EOF || !std::isspace(c)) {
            return c;
        }
    }
}

long pgm_read_int(std::FILE* f, const std::string& path) {
    int c = pgm_next_token(f);
    if (c == EOF || !std::isdigit(c)) throw FormatError(path + ": malformed PGM header");
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1 << 30) throw FormatError(path + ": absurd PGM value");
        c = std::fgetc(f);
    }
    if (c != EOF) std::ungetc(c, f);
    return v;
}

Raster load_pgm(std::FILE* f, const std::string& path, bool plain) {
    long w = pgm_read_int(f, path);
    long h = pgm_read_int(f, path);
    long maxval = pgm_read_int(f, path);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw UnsupportedFormat(path + ": PGM must be 8-bit with positive dimensions");

    Raster img(static_cast<int>(w), static_cast<int>(h), 1);
    if (plain) {
        for (std::uint8_t& px : img.data()) {
            long v = pgm_read_int(f, path);
            if (v > maxval) throw FormatError(path + ": sample exceeds maxval");
            px = static_cast<std::uint8_t>(v);
        }
    } else {
        int c = std::fgetc(f);  // single whitespace byte after maxval
        if (c == EOF || !std::isspace(c)) throw FormatError(path + ": malformed PGM header");
        std::size_t n = std::fread(img.data().data(), 1, img.data().size(), f);
        if (n != img.data().size()) throw FormatError(path + ": truncated PGM pixel data");
    }
    return img;
}

}  // namespace

Raster load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw IoError("cannot open " + path);

    unsigned char magic[8] = {0};
    std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
    std::rewind(f.get());

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    if (got >= 8 && std::equal(png_sig, png_sig + 8, magic)) return load_png(f.get(), path);
    if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '2')) {
        std::fseek(f.get(), 2, SEEK_SET);
        return load_pgm(f.get(), path, magic[1] == '2');
    }
    throw FormatError(path + ": not a PNG or PGM file");
}

namespace {

void save_png_impl(const std::string& path, int width, int height, int color_type,
                   int bit_depth, const std::vector<png_bytep>& rows) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              png_error_fn, png_warn_fn);
    if (!png) throw IoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png: out of memory");
    }
    try {
        png_init_io(png, f.get());
        png_set_compression_level(png, 6);
        png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                     static_cast<png_uint_32>(height), bit_depth, color_type,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        if (bit_depth == 16) png_set_swap(png);  // buffers are host-endian
        png_write_image(png, const_cast<png_bytepp>(rows.data()));
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
}

}  // namespace

void save_png(const std::string& path, const Raster& img) {
    if (img.empty()) throw UnsupportedFormat("refusing to write an empty image");
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
    for (int y = 0; y < img.height(); ++y)
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(img.row(y).data());
    save_png_impl(path, img.width(), img.height(),
                  img.channels() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, 8, rows);
}

void save_png_gray16(const std::string& path, const std::vector<std::uint16_t>& px,
                     int width, int height) {
    if (width <= 0 || height <= 0 ||
        px.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw UnsupportedFormat("gray16 buffer size mismatch");
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] =
            reinterpret_cast<png_bytep>(const_cast<std::uint16_t*>(px.data()) +
                                        static_cast<std::size_t>(y) * width);
    save_png_impl(path, width, height, PNG_COLOR_TYPE_GRAY, 16, rows);
}

void save_pgm(const std::string& path, const Raster& img) {
    if (img.channels() != 1) throw UnsupportedFormat("PGM is single-channel");
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw IoError("cannot write " + path);
    std::string header = "P5\n" + std::to_string(img.width()) + " " +
                         std::to_string(img.height()) + "\n255\n";
    if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size() ||
        std::fwrite(img.data().data(), 1, img.data().size(), f.get()) != img.data().size())
        throw IoError("short write to " + path);
}

}  // namespace oilu
