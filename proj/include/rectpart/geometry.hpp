#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rectpart {

/// Relative tolerance used for area feasibility and area matching.
inline constexpr double kRelTol = 1e-9;

/// Overlap tolerance, as a fraction of the container area.
inline constexpr double kOverlapTol = 1e-12;

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Axis-aligned rectangle. (x, y) is the lower-left corner; y grows upward.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double right() const { return x + w; }
  double top() const { return y + h; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline bool is_valid(const Rect& r) {
  return std::isfinite(r.x) && std::isfinite(r.y) && std::isfinite(r.w) &&
         std::isfinite(r.h) && r.w > 0.0 && r.h > 0.0;
}

inline double area(const Rect& r) { return r.w * r.h; }

/// Half of the usual perimeter: width + height.
inline double half_perimeter(const Rect& r) { return r.w + r.h; }

/// max(w/h, h/w), always >= 1.
inline double aspect_ratio(const Rect& r) { return std::max(r.w / r.h, r.h / r.w); }

inline Rect transpose(const Rect& r) { return Rect{r.y, r.x, r.h, r.w}; }

enum class Cut { Vertical, Horizontal };

struct SplitResult {
  Rect first;   // left piece (vertical cut) or top piece (horizontal cut)
  Rect second;  // right piece or bottom piece
  Cut cut;
};

/// Cuts q into a piece of area `first_area` and a piece of area
/// `second_area`. Wide rectangles (w > h) are cut vertically with the first
/// piece on the left; all others are cut horizontally with the first piece on
/// top. Both extents are derived from the piece's own area so that a tiny
/// second piece keeps full relative precision.
inline SplitResult split_rect(const Rect& q, double first_area, double second_area) {
  if (!(first_area > 0.0) || !(second_area > 0.0) || !std::isfinite(first_area) ||
      !std::isfinite(second_area)) {
    throw DomainError("split_rect: piece areas must be positive and finite");
  }
  if (q.w > q.h) {
    const double w1 = first_area / q.h;
    const double w2 = second_area / q.h;
    return {Rect{q.x, q.y, w1, q.h}, Rect{q.x + w1, q.y, w2, q.h}, Cut::Vertical};
  }
  const double h1 = first_area / q.w;
  const double h2 = second_area / q.w;
  return {Rect{q.x, q.y + h2, q.w, h1}, Rect{q.x, q.y, q.w, h2}, Cut::Horizontal};
}

/// Single-area form: the second piece receives the remainder Area(q) - a1.
inline SplitResult split_rect(const Rect& q, double a1) {
  const double total = area(q);
  if (!(a1 > 0.0) || !(a1 < total)) {
    throw DomainError("split_rect: a1 must lie in (0, Area(q))");
  }
  if (q.w > q.h) {
    const double w1 = a1 / q.h;
    return {Rect{q.x, q.y, w1, q.h}, Rect{q.x + w1, q.y, q.w - w1, q.h}, Cut::Vertical};
  }
  const double h1 = a1 / q.w;
  const double h2 = q.h - h1;
  return {Rect{q.x, q.y + h2, q.w, h1}, Rect{q.x, q.y, q.w, h2}, Cut::Horizontal};
}

/// Container rectangle plus the list of target areas.
class Instance {
 public:
  enum class Normalize { No, Yes };

  Instance(Rect container, std::vector<double> areas, Normalize normalize = Normalize::No)
      : container_(container), areas_(std::move(areas)) {
    if (!is_valid(container_)) {
      throw DomainError("instance: container must have finite, positive extents");
    }
    if (areas_.empty()) {
      throw DomainError("instance: n >= 1 required");
    }
    for (double a : areas_) {
      if (!std::isfinite(a) || !(a > 0.0)) {
        throw DomainError("instance: every area must be positive and finite");
      }
    }
    const double target = area(container_);
    double sum = std::accumulate(areas_.begin(), areas_.end(), 0.0);
    if (normalize == Normalize::Yes) {
      for (double& a : areas_) a = a / sum * target;
      sum = std::accumulate(areas_.begin(), areas_.end(), 0.0);
    }
    if (std::abs(sum - target) > kRelTol * target) {
      throw DomainError("instance: sum of areas (" + std::to_string(sum) +
                        ") does not match container area (" + std::to_string(target) + ")");
    }
  }

  const Rect& container() const { return container_; }
  std::span<const double> areas() const { return areas_; }
  std::size_t size() const { return areas_.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Rect container_;
  std::vector<double> areas_;
};

/// One node of a guillotine layout tree. Internal nodes have both children
/// set; leaves carry the original area index.
struct LayoutNode {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  Rect rect;
  Cut cut = Cut::Vertical;
  std::size_t left = kNone;   // left piece, or top piece of a horizontal cut
  std::size_t right = kNone;
  std::size_t area_index = kNone;

  bool is_leaf() const { return left == kNone; }

  friend bool operator==(const LayoutNode&, const LayoutNode&) = default;
};

/// Binary guillotine-cut tree stored as an arena; node 0 is the root and every
/// child has a larger id than its parent.
struct LayoutTree {
  std::vector<LayoutNode> nodes;

  const LayoutNode& root() const { return nodes.front(); }
  const LayoutNode& operator[](std::size_t id) const { return nodes[id]; }
  std::size_t size() const { return nodes.size(); }

  friend bool operator==(const LayoutTree&, const LayoutTree&) = default;
};

/// Placed rectangles, index-aligned with the instance's areas.
struct Layout {
  std::vector<Rect> rects;
  LayoutTree tree;

  friend bool operator==(const Layout&, const Layout&) = default;
};

inline double total_half_perimeter(std::span<const Rect> rects) {
  double total = 0.0;
  for (const Rect& r : rects) total += half_perimeter(r);
  return total;
}

inline double total_half_perimeter(const Layout& layout) {
  return total_half_perimeter(layout.rects);
}

/// Checks that a tree is structurally sound for an n-area layout and
/// returns the per-index leaf rects. Throws DomainError otherwise.
inline std::vector<Rect> leaf_rects(const LayoutTree& tree, std::size_t n) {
  if (tree.nodes.empty()) throw DomainError("layout tree: empty");
  std::vector<Rect> out(n);
  std::vector<bool> seen_index(n, false);
  std::vector<bool> seen_node(tree.size(), false);
  std::vector<std::size_t> stack{0};
  seen_node[0] = true;
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    const LayoutNode& node = tree[id];
    if (node.is_leaf()) {
      if (node.right != LayoutNode::kNone || node.area_index >= n || seen_index[node.area_index]) {
        throw DomainError("layout tree: bad leaf at node " + std::to_string(id));
      }
      seen_index[node.area_index] = true;
      out[node.area_index] = node.rect;
      continue;
    }
    for (std::size_t child : {node.left, node.right}) {
      if (child >= tree.size() || child <= id || seen_node[child]) {
        throw DomainError("layout tree: bad child link at node " + std::to_string(id));
      }
      seen_node[child] = true;
      stack.push_back(child);
    }
  }
  if (std::find(seen_index.begin(), seen_index.end(), false) != seen_index.end()) {
    throw DomainError("layout tree: some area index has no leaf");
  }
  if (std::find(seen_node.begin(), seen_node.end(), false) != seen_node.end()) {
    throw DomainError("layout tree: unreachable nodes");
  }
  return out;
}

struct LayoutDiagnostics {
  bool count_ok = true;
  std::vector<std::size_t> area_mismatch;                        // indices
  std::vector<std::pair<std::size_t, std::size_t>> overlapping;  // index pairs
  std::vector<std::size_t> outside;                              // indices
  bool sum_ok = true;

  bool area_ok() const { return area_mismatch.empty(); }
  bool tiling_ok() const { return sum_ok && overlapping.empty(); }
  bool containment_ok() const { return outside.empty(); }
  bool ok() const { return count_ok && area_ok() && tiling_ok() && containment_ok(); }
};

/// Area match, tiling and containment checks of `rects` against `inst`.
inline LayoutDiagnostics validate_layout(const Instance& inst, std::span<const Rect> rects) {
  LayoutDiagnostics d;
  const auto areas = inst.areas();
  if (rects.size() != areas.size()) {
    d.count_ok = false;
    return d;
  }
  const Rect& c = inst.container();
  const double container_area = area(c);
  const double coord_tol = kRelTol * std::max(c.w, c.h);
  const double overlap_tol = kOverlapTol * container_area;

  double sum = 0.0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    if (!is_valid(r)) {
      d.area_mismatch.push_back(i);
      d.outside.push_back(i);
      continue;
    }
    sum += area(r);
    if (std::abs(area(r) - areas[i]) > kRelTol * areas[i]) d.area_mismatch.push_back(i);
    if (r.x < c.x - coord_tol || r.y < c.y - coord_tol || r.right() > c.right() + coord_tol ||
        r.top() > c.top() + coord_tol) {
      d.outside.push_back(i);
    }
  }
  d.sum_ok = std::abs(sum - container_area) <= kRelTol * container_area;

  // Sweep along x so only rects with overlapping x-ranges are compared.
  std::vector<std::size_t> order(rects.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rects[a].x < rects[b].x || (rects[a].x == rects[b].x && a < b);
  });
  for (std::size_t p = 0; p < order.size(); ++p) {
    const Rect& a = rects[order[p]];
    if (!is_valid(a)) continue;
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      const Rect& b = rects[order[q]];
      if (b.x >= a.right()) break;
      if (!is_valid(b)) continue;
      const double ox = std::min(a.right(), b.right()) - std::max(a.x, b.x);
      const double oy = std::min(a.top(), b.top()) - std::max(a.y, b.y);
      if (ox > 0.0 && oy > 0.0 && ox * oy > overlap_tol) {
        d.overlapping.emplace_back(std::min(order[p], order[q]), std::max(order[p], order[q]));
      }
    }
  }
  std::sort(d.overlapping.begin(), d.overlapping.end());
  return d;
}

inline LayoutDiagnostics validate_layout(const Instance& inst, const Layout& layout) {
  return validate_layout(inst, std::span<const Rect>(layout.rects));
}

}  // namespace rectpart
