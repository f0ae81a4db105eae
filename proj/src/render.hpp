#pragma once

#include <string>

#include "layout.hpp"

namespace cpat {

struct RenderOptions {
    std::string view = "plane";  // "plane" or "stereographic"
    double width = 800.0;        // canvas width in SVG units
    double margin_fraction = 0.05;
    double clip_halfwidth = 0.0;  // 0 → derived from the circle bounding box
};

// Deterministic SVG: one path per circle (degenerate circles become clipped
// lines), one dot per vertex.  Throws std::invalid_argument when the layout
// holds no circle.
std::string render_svg(const LayoutResult& layout, const RenderOptions& opt = {});

}  // namespace cpat
