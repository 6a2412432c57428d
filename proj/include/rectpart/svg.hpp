#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "rectpart/geometry.hpp"
#include "rectpart/instance_gen.hpp"
#include "rectpart/io.hpp"

namespace rectpart {

enum class SvgLabels { None, Index, Full };

struct SvgOptions {
  SvgLabels labels = SvgLabels::Index;
  double pixel_size = 800.0;  // length of the container's longer side in px
};

// 20-colour categorical palette (d3 category20).
inline constexpr std::array<const char*, 20> kPalette = {
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c", "#98df8a", "#d62728",
    "#ff9896", "#9467bd", "#c5b0d5", "#8c564b", "#c49c94", "#e377c2", "#f7b6d2",
    "#7f7f7f", "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5"};

inline const char* fill_color(std::size_t index) {
  return kPalette[splitmix64(index) % kPalette.size()];
}

/// SVG 1.1 document with one <rect> per region, in container coordinates.
/// The y axis is flipped so that larger y renders higher on the page.
inline std::string render_svg(std::span<const Rect> rects, const Instance& inst,
                              const SvgOptions& options = {}) {
  const Rect& c = inst.container();
  const double scale = options.pixel_size / std::max(c.w, c.h);
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         format_number(c.w * scale) + "\" height=\"" + format_number(c.h * scale) +
         "\" viewBox=\"" + format_number(c.x) + " " + format_number(c.y) + " " +
         format_number(c.w) + " " + format_number(c.h) + "\">\n";
  const auto areas = inst.areas();
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    const double y = c.y + (c.top() - r.top());
    out += "  <rect x=\"" + format_number(r.x) + "\" y=\"" + format_number(y) + "\" width=\"" +
           format_number(r.w) + "\" height=\"" + format_number(r.h) + "\" fill=\"" +
           fill_color(i) +
           "\" stroke=\"#000000\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/>\n";
    if (options.labels == SvgLabels::None) continue;
    std::string label = std::to_string(i);
    if (options.labels == SvgLabels::Full && i < areas.size()) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.4g)", areas[i]);
      label += buf;
    }
    const double font = 0.25 * std::min(r.w, r.h);
    out += "  <text x=\"" + format_number(r.x + 0.5 * r.w) + "\" y=\"" +
           format_number(y + 0.5 * r.h) + "\" font-size=\"" + format_number(font) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_svg(const Layout& layout, const Instance& inst,
                              const SvgOptions& options = {}) {
  return render_svg(std::span<const Rect>(layout.rects), inst, options);
}

}  // namespace rectpart
