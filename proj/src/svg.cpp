#include "waveset/svg.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace waveset {

namespace {

constexpr std::array<const char*, 12> kPalette = {
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
    "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd", "#b07aa1", "#76b7b2"};

}  // namespace

std::string render_svg_string(const std::vector<SvgLayer>& layers) {
    if (layers.empty()) throw error("render_svg: empty region list");
    BBox box;
    for (const SvgLayer& layer : layers) box.expand(layer.region.bbox());
    if (box.empty()) throw error("render_svg: all regions are empty");
    const double pad = 0.05 * std::max(box.width(), box.height());
    const double x0 = box.xmin - pad;
    const double y0 = box.ymin - pad;
    const double w = box.width() + 2.0 * pad;
    const double h = box.height() + 2.0 * pad;

    std::ostringstream os;
    os.precision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << " " << -(y0 + h) << " "
       << w << " " << h << "\">\n";
    std::size_t piece_index = 0;
    for (const SvgLayer& layer : layers) {
        if (!layer.label.empty()) os << "  <g data-label=\"" << layer.label << "\">\n";
        for (const ConvexPolygon& p : layer.region.pieces()) {
            os << "  <polygon points=\"";
            bool first = true;
            for (const Point& v : p.vertices()) {
                if (!first) os << " ";
                first = false;
                os << v.x << "," << -v.y;  // flip y so the figure reads math-up
            }
            os << "\" fill=\"" << kPalette[piece_index % kPalette.size()] << "\" fill-opacity=\""
               << layer.opacity << "\" stroke=\"" << layer.stroke
               << "\" stroke-width=\"" << 0.002 * std::max(w, h) << "\"/>\n";
            ++piece_index;
        }
        if (!layer.label.empty()) os << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void render_svg(const std::vector<SvgLayer>& layers, const std::string& path) {
    const std::string doc = render_svg_string(layers);
    std::ofstream out(path);
    if (!out) throw error("render_svg: cannot write to '" + path + "'");
    out << doc;
    if (!out) throw error("render_svg: write failed for '" + path + "'");
}

}  // namespace waveset
