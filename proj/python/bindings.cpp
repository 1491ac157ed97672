#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oilu/decoder.hpp"
#include "oilu/distortion.hpp"
#include "oilu/eval.hpp"
#include "oilu/render.hpp"

namespace py = pybind11;
using namespace oilu;

namespace {

Raster raster_from_array(const py::array_t<std::uint8_t>& arr) {
    py::buffer_info info = arr.request();
    if (info.ndim != 2 && !(info.ndim == 3 && info.shape[2] == 3))
        throw std::invalid_argument("expected a HxW or HxWx3 uint8 array");
    int h = static_cast<int>(info.shape[0]);
    int w = static_cast<int>(info.shape[1]);
    int ch = info.ndim == 3 ? 3 : 1;
    Raster img(w, h, ch);
    auto a = arr.unchecked();
    (void)a;
    const auto* src = static_cast<const std::uint8_t*>(info.ptr);
    // Respect strides (the array may be a view, e.g. np.rot90 output).
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c) {
                std::size_t off = static_cast<std::size_t>(y) * info.strides[0] +
                                  static_cast<std::size_t>(x) * info.strides[1];
                if (ch == 3) off += static_cast<std::size_t>(c) * info.strides[2];
                img.at(x, y, c) = src[off];
            }
    return img;
}

py::array_t<std::uint8_t> array_from_raster(const Raster& img) {
    if (img.channels() == 1) {
        py::array_t<std::uint8_t> out({img.height(), img.width()});
        std::copy(img.data().begin(), img.data().end(), out.mutable_data());
        return out;
    }
    py::array_t<std::uint8_t> out({img.height(), img.width(), img.channels()});
    std::copy(img.data().begin(), img.data().end(), out.mutable_data());
    return out;
}

MarkerStyle style_from_kwargs(int canvas, int quiet, int stroke, int pitch,
                              const std::string& polarity) {
    MarkerStyle s;
    s.canvas_px = canvas;
    s.quiet_zone_px = quiet;
    s.stroke_px = stroke;
    s.pitch_px = pitch;
    if (polarity == "light_on_dark")
        s.polarity = Polarity::light_on_dark;
    else if (polarity != "dark_on_light")
        throw std::invalid_argument("polarity must be dark_on_light or light_on_dark");
    return s;
}

py::dict result_to_dict(const DecodeResult& r) {
    py::dict d;
    d["value"] = r.value.str();
    py::list facets;
    for (const OiluNumber& f : r.facets.values) facets.append(f.str());
    d["facets"] = facets;
    py::list rings;
    for (const RingReadout& ring : r.per_ring) {
        py::dict rd;
        rd["digit"] = ring.digit;
        rd["pattern"] = ring.pattern.str();
        rd["margin"] = ring.margin;
        rings.append(rd);
    }
    d["rings"] = rings;
    py::list corners;
    for (const Point& p : r.quad.corners) corners.append(py::make_tuple(p.x, p.y));
    d["corners"] = corners;
    d["timing_ms"] = r.timing_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_oilu, m) {
    m.doc() = "Concentric square-ring marker codec: encode, decode, facets.";

    py::register_exception<DecodeFailure>(m, "DecodeFailure");

    m.def(
        "encode",
        [](const std::string& number, int canvas, int quiet, int stroke, int pitch,
           const std::string& polarity) {
            MarkerStyle s = style_from_kwargs(canvas, quiet, stroke, pitch, polarity);
            return array_from_raster(render_marker(OiluNumber::parse(number), s));
        },
        py::arg("number"), py::arg("canvas") = 512, py::arg("quiet") = 32,
        py::arg("stroke") = 12, py::arg("pitch") = 48, py::arg("polarity") = "dark_on_light",
        "Render a marker for a decimal number; returns a HxW uint8 array.");

    m.def(
        "decode",
        [](const py::array_t<std::uint8_t>& img, bool rectify, int out_size,
           std::optional<int> ring_count_hint, double beta) {
            DecodeConfig cfg;
            cfg.rectify = rectify;
            cfg.out_size = out_size;
            cfg.ring_count_hint = ring_count_hint;
            cfg.beta = beta;
            return result_to_dict(decode(raster_from_array(img), cfg));
        },
        py::arg("image"), py::arg("rectify") = false, py::arg("out_size") = 512,
        py::arg("ring_count_hint") = std::nullopt, py::arg("beta") = 0.5,
        "Decode a marker image (HxW or HxWx3 uint8). Returns a dict with "
        "value, facets, rings, corners and timing_ms.");

    m.def(
        "facets",
        [](const std::string& number) {
            FacetGroup g = facet_values(OiluNumber::parse(number));
            std::vector<std::string> out;
            for (const OiluNumber& v : g.values) out.push_back(v.str());
            return out;
        },
        py::arg("number"), "The four quarter-turn facet values, k = 0..3.");

    m.def(
        "rotate_digit", [](int digit, int k) { return rotate_digit(digit, k); },
        py::arg("digit"), py::arg("quarter_turns"));

    m.def(
        "digit_pattern",
        [](int digit) {
            SidePattern p = digit_to_pattern(digit);
            std::vector<std::string> sides;
            for (Side s : all_sides)
                if (p.contains(s)) sides.push_back(side_name(s));
            return sides;
        },
        py::arg("digit"), "Present ring sides for a digit, as side names.");

    m.def(
        "apply_noise",
        [](const py::array_t<std::uint8_t>& img, double sigma, std::uint64_t seed) {
            return array_from_raster(apply_noise(raster_from_array(img), sigma, seed));
        },
        py::arg("image"), py::arg("sigma"), py::arg("seed") = 0);

    m.def(
        "apply_blur",
        [](const py::array_t<std::uint8_t>& img, double sigma_px) {
            return array_from_raster(apply_blur(raster_from_array(img), sigma_px));
        },
        py::arg("image"), py::arg("sigma_px"));

    m.def(
        "apply_radial",
        [](const py::array_t<std::uint8_t>& img, double k1) {
            return array_from_raster(apply_radial(raster_from_array(img), k1));
        },
        py::arg("image"), py::arg("k1"));

    m.def(
        "apply_tilt",
        [](const py::array_t<std::uint8_t>& img, double theta_deg) {
            return array_from_raster(apply_tilt(raster_from_array(img), theta_deg));
        },
        py::arg("image"), py::arg("theta_deg"));

    m.def(
        "apply_contrast",
        [](const py::array_t<std::uint8_t>& img, double c) {
            return array_from_raster(apply_contrast(raster_from_array(img), c));
        },
        py::arg("image"), py::arg("c"));

    m.attr("__version__") = "0.1.0";
}
