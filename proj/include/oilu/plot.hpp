#pragma once

#include <string>
#include <vector>

#include "oilu/eval.hpp"
#include "oilu/raster.hpp"

namespace oilu {

// One success-rate-vs-level chart per distortion kind, written as
// plot_<kind>.png under out_dir. Pure integer layout and an embedded
// bitmap font keep the bytes stable across runs. Returns the written
// paths; throws NoData on empty input.
std::vector<std::string> render_curves(const std::vector<EvalRecord>& records,
                                       const std::string& out_dir);

// Low-level chart drawing, exposed for tests.
Raster draw_success_chart(const std::string& title, const std::vector<double>& levels,
                          const std::vector<double>& rates);

// 5x7 bitmap text, scale >= 1.
void draw_text(Raster& img, int x, int y, const std::string& text, std::uint8_t r,
               std::uint8_t g, std::uint8_t b, int scale = 1);

}  // namespace oilu
