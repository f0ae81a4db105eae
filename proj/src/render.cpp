#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace cpat {
namespace {

constexpr double kLineThreshold = 1e-9;  // |h11| below this renders as a line

std::string num(double v) {
    char buf[64];
    if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0.000000"
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct Box {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool initialized = false;
    void include(double x, double y) {
        if (!initialized) {
            xmin = xmax = x;
            ymin = ymax = y;
            initialized = true;
            return;
        }
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

}  // namespace

std::string render_svg(const LayoutResult& layout, const RenderOptions& opt) {
    bool any_circle = false;
    for (const auto& c : layout.circles) any_circle = any_circle || c.has_value();
    if (!any_circle) throw std::invalid_argument("layout holds no circle to render");

    // model-plane bounding box from proper circles and finite vertices
    Box box;
    for (const auto& c : layout.circles) {
        if (!c || std::abs(c->h11) <= kLineThreshold) continue;
        const Complex center = -c->h12 / c->h11;
        const double r = std::sqrt(std::max(0.0, -c->det())) / std::abs(c->h11);
        box.include(std::real(center) - r, std::imag(center) - r);
        box.include(std::real(center) + r, std::imag(center) + r);
    }
    for (const auto& v : layout.vertices)
        if (v && !v->is_infinite(1e-9)) box.include(std::real(v->value()), std::imag(v->value()));
    if (!box.initialized) throw std::invalid_argument("layout holds only degenerate circles");
    if (opt.clip_halfwidth > 0.0) {
        const double cx = 0.5 * (box.xmin + box.xmax), cy = 0.5 * (box.ymin + box.ymax);
        box.xmin = cx - opt.clip_halfwidth;
        box.xmax = cx + opt.clip_halfwidth;
        box.ymin = cy - opt.clip_halfwidth;
        box.ymax = cy + opt.clip_halfwidth;
    }

    const double span = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-9});
    const double pad = opt.margin_fraction * span;
    const double x0 = box.xmin - pad, y0 = box.ymin - pad;
    const double side = span + 2.0 * pad;
    const double scale = opt.width / side;
    // model (x, y) → canvas (scale·(x−x0), height − scale·(y−y0)); y flips so
    // the mathematical orientation is preserved on screen
    const double height = opt.width;
    const auto X = [&](double x) { return scale * (x - x0); };
    const auto Y = [&](double y) { return height - scale * (y - y0); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opt.width) +
           "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(opt.width) + " " +
           num(height) + "\">\n";
    svg += "<!-- view: " + opt.view + "; model window [" + num(x0) + ", " +
           num(x0 + side) + "] x [" + num(y0) + ", " + num(y0 + side) +
           "], y axis pointing up -->\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double diag = 2.0 * side;
    for (const auto& c : layout.circles) {
        if (!c) continue;
        if (std::abs(c->h11) > kLineThreshold) {
            const Complex center = -c->h12 / c->h11;
            const double r = std::sqrt(std::max(0.0, -c->det())) / std::abs(c->h11);
            svg += "<circle cx=\"" + num(X(std::real(center))) + "\" cy=\"" +
                   num(Y(std::imag(center))) + "\" r=\"" + num(scale * r) +
                   "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        } else {
            // straight-line degeneration 2 Re(conj(h12) z) + h22 = 0
            const double m = std::abs(c->h12);
            if (m <= kLineThreshold) continue;
            const Complex base = -0.5 * c->h22 * c->h12 / (m * m);
            const Complex dir = Complex{0.0, 1.0} * c->h12 / m;
            const Complex p = base - diag * dir, q = base + diag * dir;
            svg += "<line x1=\"" + num(X(std::real(p))) + "\" y1=\"" +
                   num(Y(std::imag(p))) + "\" x2=\"" + num(X(std::real(q))) +
                   "\" y2=\"" + num(Y(std::imag(q))) +
                   "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        }
    }
    for (const auto& v : layout.vertices) {
        if (!v || v->is_infinite(1e-9)) continue;
        const Complex z = v->value();
        svg += "<circle cx=\"" + num(X(std::real(z))) + "\" cy=\"" +
               num(Y(std::imag(z))) + "\" r=\"3\" fill=\"#c00\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace cpat
