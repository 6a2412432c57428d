#pragma once

#include <cstddef>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rectpart/bounds.hpp"
#include "rectpart/geometry.hpp"

namespace rectpart {

/// Malformed or infeasible input document. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Fixed 17-significant-digit rendering; round-trips every double.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
}

inline double positive_number(const nlohmann::json& j, std::string_view text,
                              std::string_view key) {
  if (!j.is_number()) throw ParseError("\"" + std::string(key) + "\" must be a number",
                                       line_of_key(text, key));
  const double v = j.get<double>();
  if (!(v > 0.0)) throw ParseError("\"" + std::string(key) + "\" must be positive",
                                   line_of_key(text, key));
  return v;
}

inline const nlohmann::json& member(const nlohmann::json& obj, std::string_view text,
                                    const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing key \"") + key + "\"", line_of_key(text, key));
  }
  return obj.at(key);
}

inline double number(const nlohmann::json& obj, std::string_view text, const char* key) {
  const nlohmann::json& j = member(obj, text, key);
  if (!j.is_number()) throw ParseError(std::string("\"") + key + "\" must be a number",
                                       line_of_key(text, key));
  return j.get<double>();
}

}  // namespace detail

/// Reads an instance document:
///   {"container": {"width": W, "height": H}, "areas": [a1, ...]}
/// The container's lower-left corner is the origin.
inline Instance parse_instance(std::string_view text,
                               Instance::Normalize normalize = Instance::Normalize::No) {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object", 1);
  const nlohmann::json& container = detail::member(doc, text, "container");
  const double width = detail::positive_number(detail::member(container, text, "width"), text, "width");
  const double height =
      detail::positive_number(detail::member(container, text, "height"), text, "height");
  const nlohmann::json& list = detail::member(doc, text, "areas");
  if (!list.is_array()) throw ParseError("\"areas\" must be an array", detail::line_of_key(text, "areas"));
  if (list.empty()) throw ParseError("n >= 1 required", detail::line_of_key(text, "areas"));
  std::vector<double> areas;
  areas.reserve(list.size());
  for (const auto& a : list) areas.push_back(detail::positive_number(a, text, "areas"));
  try {
    return Instance(Rect{0.0, 0.0, width, height}, std::move(areas), normalize);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), detail::line_of_key(text, "areas"));
  }
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out = "{\n  \"container\": {\"width\": " + format_number(inst.container().w) +
                    ", \"height\": " + format_number(inst.container().h) + "},\n  \"areas\": [";
  const auto areas = inst.areas();
  for (std::size_t i = 0; i < areas.size(); ++i) {
    out += (i ? ", " : "") + format_number(areas[i]);
  }
  out += "]\n}\n";
  return out;
}

/// Contents of a layout document. The tree is present only when the
/// producer included it.
struct LayoutDocument {
  std::vector<Rect> rects;
  std::optional<LayoutTree> tree;
  double total_half_perimeter = 0.0;
};

namespace detail {

inline std::string rect_fields(const Rect& r) {
  return "\"x\": " + format_number(r.x) + ", \"y\": " + format_number(r.y) +
         ", \"width\": " + format_number(r.w) + ", \"height\": " + format_number(r.h);
}

inline Rect parse_rect_fields(const nlohmann::json& j, std::string_view text) {
  Rect r{number(j, text, "x"), number(j, text, "y"), number(j, text, "width"),
         number(j, text, "height")};
  if (!is_valid(r)) throw ParseError("rect extents must be positive", line_of_key(text, "width"));
  return r;
}

inline std::size_t index_field(const nlohmann::json& j, std::string_view text, const char* key) {
  const nlohmann::json& v = member(j, text, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("\"") + key + "\" must be a non-negative integer",
                     line_of_key(text, key));
  }
  return v.get<std::size_t>();
}

}  // namespace detail

/// Writes {"rects": [...], "totalHalfPerimeter": T} and, when requested, a
/// "tree" array of nodes in id order (node 0 is the root).
inline std::string serialize_layout(const Layout& layout, bool include_tree = false) {
  std::string out = "{\n  \"rects\": [";
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += "{\"index\": " + std::to_string(i) + ", " + detail::rect_fields(layout.rects[i]) + "}";
  }
  out += "\n  ],\n  \"totalHalfPerimeter\": " + format_number(total_half_perimeter(layout));
  if (include_tree) {
    out += ",\n  \"tree\": [";
    for (std::size_t id = 0; id < layout.tree.size(); ++id) {
      const LayoutNode& node = layout.tree[id];
      out += id ? ",\n    {" : "\n    {";
      out += detail::rect_fields(node.rect);
      if (node.is_leaf()) {
        out += ", \"index\": " + std::to_string(node.area_index);
      } else {
        out += std::string(", \"cut\": \"") +
               (node.cut == Cut::Vertical ? "vertical" : "horizontal") +
               "\", \"left\": " + std::to_string(node.left) +
               ", \"right\": " + std::to_string(node.right);
      }
      out += "}";
    }
    out += "\n  ]";
  }
  out += "\n}\n";
  return out;
}

inline LayoutDocument parse_layout(std::string_view text) {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError("layout document must be a JSON object", 1);
  const nlohmann::json& list = detail::member(doc, text, "rects");
  if (!list.is_array() || list.empty()) {
    throw ParseError("\"rects\" must be a non-empty array", detail::line_of_key(text, "rects"));
  }
  LayoutDocument out;
  out.rects.resize(list.size());
  std::vector<bool> seen(list.size(), false);
  for (const auto& entry : list) {
    const std::size_t index = detail::index_field(entry, text, "index");
    if (index >= list.size() || seen[index]) {
      throw ParseError("rect indices must cover 0..n-1 exactly once",
                       detail::line_of_key(text, "index"));
    }
    seen[index] = true;
    out.rects[index] = detail::parse_rect_fields(entry, text);
  }
  out.total_half_perimeter = detail::number(doc, text, "totalHalfPerimeter");

  if (doc.contains("tree")) {
    const nlohmann::json& nodes = doc.at("tree");
    if (!nodes.is_array()) throw ParseError("\"tree\" must be an array", detail::line_of_key(text, "tree"));
    LayoutTree tree;
    for (const auto& entry : nodes) {
      LayoutNode node{detail::parse_rect_fields(entry, text)};
      if (entry.contains("index")) {
        node.area_index = detail::index_field(entry, text, "index");
      } else {
        const std::string cut = detail::member(entry, text, "cut").get<std::string>();
        if (cut != "vertical" && cut != "horizontal") {
          throw ParseError("\"cut\" must be \"vertical\" or \"horizontal\"",
                           detail::line_of_key(text, "cut"));
        }
        node.cut = cut == "vertical" ? Cut::Vertical : Cut::Horizontal;
        node.left = detail::index_field(entry, text, "left");
        node.right = detail::index_field(entry, text, "right");
      }
      tree.nodes.push_back(node);
    }
    try {
      (void)leaf_rects(tree, out.rects.size());
    } catch (const DomainError& e) {
      throw ParseError(e.what(), detail::line_of_key(text, "tree"));
    }
    out.tree = std::move(tree);
  }
  return out;
}

inline std::string serialize_report(const QualityReport& rep) {
  std::string out = "{\n  \"totalHalfPerimeter\": " + format_number(rep.total_half_perimeter) +
                    ",\n  \"naiveLowerBound\": " + format_number(rep.naive_lower_bound) +
                    ",\n  \"forcedAwareLowerBound\": " + format_number(rep.forced_aware_lower_bound) +
                    ",\n  \"approxRatio\": " + format_number(rep.approx_ratio) +
                    ",\n  \"maxAspectRatio\": " + format_number(rep.max_aspect_ratio) +
                    ",\n  \"perRect\": [";
  for (std::size_t i = 0; i < rep.per_rect.size(); ++i) {
    const RectQuality& q = rep.per_rect[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"index\": " + std::to_string(q.index) +
           ", \"halfPerimeter\": " + format_number(q.half_perimeter) +
           ", \"aspectRatio\": " + format_number(q.aspect_ratio) +
           ", \"isForced\": " + (q.is_forced ? "true" : "false") + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

}  // namespace rectpart
