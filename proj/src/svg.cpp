#include "pentile/svg.hpp"

#include <cstdio>

namespace pentile {

namespace {

std::string fmt(double v) {
    char buf[40];
    // normalize negative zero so output is byte-stable
    if (v == 0.0) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PentagonShape& prototile, const std::vector<PlacedTile>& tiles,
                       const std::vector<NodeRecord>& nodes, const SvgOptions& opts) {
    Vec2 lo(0, 0), hi(1, 1);
    if (!tiles.empty()) {
        lo = hi = tiles.front().corner[0];
        for (const auto& t : tiles) {
            for (const auto& c : t.corner) {
                lo = lo.cwiseMin(c);
                hi = hi.cwiseMax(c);
            }
        }
    }
    const double pad = 0.05 * std::max(hi.x() - lo.x(), hi.y() - lo.y()) + 1e-9;
    lo -= Vec2(pad, pad);
    hi += Vec2(pad, pad);
    const double w = hi.x() - lo.x();
    const double h = hi.y() - lo.y();
    const double scale = opts.width_px / w;
    const double height_px = h * scale;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(opts.width_px) +
           "\" height=\"" + fmt(height_px) + "\" viewBox=\"0 0 " + fmt(opts.width_px) + " " +
           fmt(height_px) + "\">\n";
    auto map = [&](const Vec2& p) {
        // y grows upward in the plane, downward in SVG
        return Vec2((p.x() - lo.x()) * scale, (hi.y() - p.y()) * scale);
    };

    out += "<g stroke=\"#1d3557\" stroke-width=\"1\" stroke-linejoin=\"round\">\n";
    for (const auto& t : tiles) {
        std::string d = "M";
        for (int i = 0; i < 5; ++i) {
            const Vec2 q = map(t.corner[static_cast<size_t>(i)]);
            d += (i == 0 ? " " : " L ") + fmt(q.x()) + " " + fmt(q.y());
        }
        d += " Z";
        out += "<path d=\"" + d + "\" fill=\"" +
               (t.mirrored ? std::string("#f4a261") : std::string("#a8dadc")) + "\"/>\n";
    }
    out += "</g>\n";

    if (opts.node_markers) {
        out += "<g stroke=\"none\">\n";
        for (const auto& node : nodes) {
            const Vec2 q = map(node.pos);
            const bool closed = std::abs(node.angle_sum - 360.0) <= 1e-6;
            const char* color = !closed ? "#adb5bd" : (node.valence() == 3 ? "#e63946" : "#457b9d");
            out += "<circle cx=\"" + fmt(q.x()) + "\" cy=\"" + fmt(q.y()) + "\" r=\"" +
                   fmt(0.04 * prototile.diameter() * scale) + "\" fill=\"" + color + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string render_svg(const Patch& patch, const SvgOptions& opts) {
    std::vector<PlacedTile> tiles;
    tiles.reserve(static_cast<size_t>(patch.tile_count()));
    for (int i = 0; i < patch.tile_count(); ++i) tiles.push_back(patch.tile(i));
    std::vector<NodeRecord> nodes;
    nodes.reserve(static_cast<size_t>(patch.node_count()));
    for (int i = 0; i < patch.node_count(); ++i) nodes.push_back(patch.node(i));
    return render_svg(patch.prototile(), tiles, nodes, opts);
}

std::string render_svg(const TorusTiling& torus, const SvgOptions& opts) {
    return render_svg(torus.prototile, torus.tiles, {}, opts);
}

}  // namespace pentile
