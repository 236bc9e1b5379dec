#pragma once

#include "pentile/patch.hpp"
#include "pentile/periodicity.hpp"

#include <string>
#include <vector>

namespace pentile {

struct SvgOptions {
    double width_px = 800.0;
    bool node_markers = false;
    bool label_rings = false;
};

// Deterministic SVG: fixed canvas transform, tiles as filled paths colored by
// chirality, byte-stable for identical inputs.
std::string render_svg(const PentagonShape& prototile, const std::vector<PlacedTile>& tiles,
                       const std::vector<NodeRecord>& nodes, const SvgOptions& opts = {});

std::string render_svg(const Patch& patch, const SvgOptions& opts = {});
std::string render_svg(const TorusTiling& torus, const SvgOptions& opts = {});

}  // namespace pentile
