#ifndef WAVESET_SVG_HPP
#define WAVESET_SVG_HPP

#include <string>
#include <vector>

#include "waveset/geometry.hpp"

namespace waveset {

struct SvgLayer {
    Region region;
    std::string label;   // optional; used for the fill class when styled
    std::string stroke = "#222222";
    double opacity = 0.75;
};

/// One <polygon> element per convex piece; fills cycle deterministically by
/// piece index; viewBox is the joint bounding box padded by 5%.
std::string render_svg_string(const std::vector<SvgLayer>& layers);

/// Writes the document; throws error for an empty layer list or an
/// unwritable path.
void render_svg(const std::vector<SvgLayer>& layers, const std::string& path);

}  // namespace waveset

#endif
