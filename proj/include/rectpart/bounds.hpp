#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rectpart/geometry.hpp"

namespace rectpart {

/// How rule (c) of forced-rectangle detection attributes long edges.
enum class EdgeAttribution {
  PerEdge,   // each long edge may lie in a different forced rectangle
  SameRect,  // both long edges must lie in one forced rectangle
};

/// Forced flags indexed by node id of the tree they were computed on.
struct ForcedSet {
  std::vector<bool> flags;

  bool contains(std::size_t id) const { return id < flags.size() && flags[id]; }
  std::vector<std::size_t> ids() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) out.push_back(i);
    return out;
  }
};

namespace detail {

struct Segment {
  bool horizontal;
  double at;  // y of a horizontal edge, x of a vertical one
  double lo;
  double hi;
};

struct EdgePairs {
  std::array<std::pair<Segment, Segment>, 2> pairs;
  std::size_t count = 0;

  std::span<const std::pair<Segment, Segment>> view() const { return {pairs.data(), count}; }
};

/// Long edges of r as opposite pairs: one pair, or both pairs for a square.
inline EdgePairs long_edge_pairs(const Rect& r) {
  EdgePairs out;
  const bool square = std::abs(r.w - r.h) <= 1e-12 * std::max(r.w, r.h);
  if (r.w > r.h || square) {
    out.pairs[out.count++] = {Segment{true, r.y, r.x, r.right()},
                              Segment{true, r.top(), r.x, r.right()}};
  }
  if (r.h > r.w || square) {
    out.pairs[out.count++] = {Segment{false, r.x, r.y, r.top()},
                              Segment{false, r.right(), r.y, r.top()}};
  }
  return out;
}

inline bool segment_within(const Segment& s, const Segment& host, double tol) {
  return s.horizontal == host.horizontal && std::abs(s.at - host.at) <= tol &&
         s.lo >= host.lo - tol && s.hi <= host.hi + tol;
}

}  // namespace detail

/// Forced-rectangle detection on a layout tree, computed as a fixpoint:
///  (a) the root is forced;
///  (b) at a forced internal node whose largest constituent area is at least
///      half the node's area, the child not holding that area is forced
///      (both children when they hold equal halves);
///  (c) a node whose long edges both lie inside long edges of forced
///      rectangles is forced.
/// A square has all four edges long; as a candidate either opposite pair may
/// qualify. `areas` is indexed by the leaves' area indices.
inline ForcedSet detect_forced(const LayoutTree& tree, std::span<const double> areas,
                               EdgeAttribution mode = EdgeAttribution::SameRect) {
  (void)leaf_rects(tree, areas.size());
  const std::size_t count = tree.size();

  // Children have larger ids than parents, so a reverse sweep is post-order.
  std::vector<double> node_area(count, 0.0);
  std::vector<double> largest(count, 0.0);
  std::vector<bool> holds_largest_left(count, false);
  for (std::size_t id = count; id-- > 0;) {
    const LayoutNode& node = tree[id];
    if (node.is_leaf()) {
      node_area[id] = largest[id] = areas[node.area_index];
      continue;
    }
    node_area[id] = node_area[node.left] + node_area[node.right];
    holds_largest_left[id] = largest[node.left] >= largest[node.right];
    largest[id] = std::max(largest[node.left], largest[node.right]);
  }

  const Rect& container = tree.root().rect;
  const double tol = kRelTol * std::max(container.w, container.h);

  std::vector<detail::EdgePairs> edges;
  edges.reserve(count);
  for (const LayoutNode& node : tree.nodes) edges.push_back(detail::long_edge_pairs(node.rect));

  ForcedSet forced{std::vector<bool>(count, false)};
  forced.flags[0] = true;
  std::vector<std::size_t> certifiers{0};

  auto certified = [&](const detail::Segment& edge, std::size_t host) {
    for (const auto& [a, b] : edges[host].view()) {
      if (detail::segment_within(edge, a, tol) || detail::segment_within(edge, b, tol)) return true;
    }
    return false;
  };
  auto edge_certified = [&](const detail::Segment& edge) {
    return std::any_of(certifiers.begin(), certifiers.end(),
                       [&](std::size_t host) { return certified(edge, host); });
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < certifiers.size(); ++k) {
      const std::size_t id = certifiers[k];
      const LayoutNode& node = tree[id];
      if (node.is_leaf() || largest[id] < 0.5 * node_area[id] * (1.0 - 1e-12)) continue;
      // Two equal halves: each child is the other's remainder.
      const bool tie = std::abs(largest[node.left] - largest[node.right]) <= 1e-12 * largest[id];
      for (std::size_t child : {node.left, node.right}) {
        const bool other = child == node.right ? holds_largest_left[id] : !holds_largest_left[id];
        if ((other || tie) && !forced.flags[child]) {
          forced.flags[child] = true;
          certifiers.push_back(child);
          changed = true;
        }
      }
    }
    for (std::size_t id = 1; id < count; ++id) {
      if (forced.flags[id]) continue;
      bool hit = false;
      for (const auto& [a, b] : edges[id].view()) {
        if (mode == EdgeAttribution::PerEdge) {
          hit = edge_certified(a) && edge_certified(b);
        } else {
          hit = std::any_of(certifiers.begin(), certifiers.end(), [&](std::size_t host) {
            return certified(a, host) && certified(b, host);
          });
        }
        if (hit) break;
      }
      if (hit) {
        forced.flags[id] = true;
        certifiers.push_back(id);
        changed = true;
      }
    }
  }
  return forced;
}

struct LowerBounds {
  double naive = 0.0;         // sum of 2 sqrt(A_i)
  double forced_aware = 0.0;  // forced simple leaves contribute w + h
  ForcedSet forced;
};

struct RectQuality {
  std::size_t index = 0;
  double half_perimeter = 0.0;
  double aspect_ratio = 0.0;
  bool is_forced = false;
};

struct QualityReport {
  double total_half_perimeter = 0.0;
  double naive_lower_bound = 0.0;
  double forced_aware_lower_bound = 0.0;
  double approx_ratio = 0.0;
  double max_aspect_ratio = 0.0;
  std::vector<RectQuality> per_rect;
};

namespace detail {

inline void require_consistent(const Instance& inst, const Layout& layout) {
  const LayoutDiagnostics diag = validate_layout(inst, layout);
  if (!diag.ok()) throw DomainError("layout does not validate against the instance");
  const std::vector<Rect> from_tree = leaf_rects(layout.tree, inst.size());
  if (from_tree != layout.rects) throw DomainError("layout rects disagree with the layout tree");
}

}  // namespace detail

inline LowerBounds lower_bound(const Instance& inst, const Layout& layout,
                               EdgeAttribution mode = EdgeAttribution::SameRect) {
  detail::require_consistent(inst, layout);
  LowerBounds lb;
  lb.forced = detect_forced(layout.tree, inst.areas(), mode);
  for (double a : inst.areas()) lb.naive += 2.0 * std::sqrt(a);
  for (std::size_t id = 0; id < layout.tree.size(); ++id) {
    const LayoutNode& node = layout.tree[id];
    if (!node.is_leaf()) continue;
    lb.forced_aware += lb.forced.contains(id) ? half_perimeter(node.rect)
                                              : 2.0 * std::sqrt(inst.areas()[node.area_index]);
  }
  return lb;
}

inline QualityReport report(const Instance& inst, const Layout& layout,
                            EdgeAttribution mode = EdgeAttribution::SameRect) {
  const LowerBounds lb = lower_bound(inst, layout, mode);
  QualityReport rep;
  rep.total_half_perimeter = total_half_perimeter(layout);
  rep.naive_lower_bound = lb.naive;
  rep.forced_aware_lower_bound = lb.forced_aware;
  rep.approx_ratio = rep.total_half_perimeter / lb.forced_aware;
  rep.per_rect.resize(inst.size());
  for (std::size_t id = 0; id < layout.tree.size(); ++id) {
    const LayoutNode& node = layout.tree[id];
    if (!node.is_leaf()) continue;
    rep.per_rect[node.area_index] = RectQuality{node.area_index, half_perimeter(node.rect),
                                                aspect_ratio(node.rect), lb.forced.contains(id)};
  }
  for (const RectQuality& q : rep.per_rect) {
    rep.max_aspect_ratio = std::max(rep.max_aspect_ratio, q.aspect_ratio);
  }
  return rep;
}

/// Report for a layout without guillotine structure: only the naive bound
/// applies, except that a single area is the (forced) container itself.
inline QualityReport report_flat(const Instance& inst, std::span<const Rect> rects) {
  if (!validate_layout(inst, rects).ok()) {
    throw DomainError("layout does not validate against the instance");
  }
  QualityReport rep;
  rep.total_half_perimeter = total_half_perimeter(rects);
  for (double a : inst.areas()) rep.naive_lower_bound += 2.0 * std::sqrt(a);
  const bool single = inst.size() == 1;
  rep.forced_aware_lower_bound = single ? half_perimeter(rects[0]) : rep.naive_lower_bound;
  rep.approx_ratio = rep.total_half_perimeter / rep.forced_aware_lower_bound;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    rep.per_rect.push_back(RectQuality{i, half_perimeter(rects[i]), aspect_ratio(rects[i]), single});
    rep.max_aspect_ratio = std::max(rep.max_aspect_ratio, aspect_ratio(rects[i]));
  }
  return rep;
}

/// Rebuilds a guillotine tree from flat rects. At each region the cut
/// orientation follows the algorithms' rule (vertical when wider than tall)
/// when such a cut exists; among candidate cut lines the one splitting the
/// area most evenly wins. Returns nullopt for non-guillotine layouts.
inline std::optional<LayoutTree> reconstruct_tree(const Rect& container,
                                                  std::span<const Rect> rects) {
  // Cut lines are matched relative to the region being split, but never
  // tighter than the rounding noise of container-sized coordinates.
  const double floor_tol = 64 * std::numeric_limits<double>::epsilon() *
                           (std::max(std::abs(container.x), std::abs(container.y)) +
                            std::max(container.w, container.h));
  LayoutTree tree;
  tree.nodes.push_back(LayoutNode{container});

  struct Task {
    std::size_t node;
    std::vector<std::size_t> members;
  };
  std::vector<std::size_t> all(rects.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Task> work{{0, std::move(all)}};

  while (!work.empty()) {
    Task task = std::move(work.back());
    work.pop_back();
    const Rect region = tree.nodes[task.node].rect;
    const double tol = std::max(kRelTol * std::min(region.w, region.h), floor_tol);
    if (task.members.size() == 1) {
      tree.nodes[task.node].area_index = task.members.front();
      tree.nodes[task.node].rect = rects[task.members.front()];
      continue;
    }

    struct Candidate {
      Cut cut;
      double at;
      double balance;
    };
    std::optional<Candidate> best;
    const Cut preferred = region.w > region.h ? Cut::Vertical : Cut::Horizontal;
    for (Cut cut : {preferred, preferred == Cut::Vertical ? Cut::Horizontal : Cut::Vertical}) {
      const bool vertical = cut == Cut::Vertical;
      std::vector<std::size_t> order = task.members;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ka = vertical ? rects[a].x : rects[a].y;
        const double kb = vertical ? rects[b].x : rects[b].y;
        return ka < kb || (ka == kb && a < b);
      });
      const double lo = vertical ? region.x : region.y;
      const double hi = vertical ? region.right() : region.top();
      double reach = -std::numeric_limits<double>::infinity();
      double swept = 0.0;
      double total = 0.0;
      for (std::size_t i : task.members) total += area(rects[i]);
      for (std::size_t p = 0; p + 1 < order.size(); ++p) {
        const Rect& r = rects[order[p]];
        reach = std::max(reach, vertical ? r.right() : r.top());
        swept += area(r);
        const Rect& next = rects[order[p + 1]];
        const double next_lo = vertical ? next.x : next.y;
        if (next_lo >= reach - tol && reach > lo + tol && reach < hi - tol) {
          const double balance = std::abs(swept / total - 0.5);
          if (!best || balance < best->balance) best = Candidate{cut, reach, balance};
        }
      }
      if (best) break;
    }
    if (!best) return std::nullopt;

    const bool vertical = best->cut == Cut::Vertical;
    std::vector<std::size_t> first, second;
    for (std::size_t i : task.members) {
      const Rect& r = rects[i];
      const bool below_line = vertical ? r.x < best->at - tol : r.y < best->at - tol;
      // Vertical: first = left. Horizontal: first = top, i.e. above the line.
      if (vertical ? below_line : !below_line) first.push_back(i);
      else second.push_back(i);
    }
    if (first.empty() || second.empty()) return std::nullopt;
    Rect a, b;
    if (vertical) {
      a = Rect{region.x, region.y, best->at - region.x, region.h};
      b = Rect{best->at, region.y, region.right() - best->at, region.h};
    } else {
      a = Rect{region.x, best->at, region.w, region.top() - best->at};
      b = Rect{region.x, region.y, region.w, best->at - region.y};
    }
    const std::size_t left_id = tree.nodes.size();
    tree.nodes.push_back(LayoutNode{a});
    tree.nodes.push_back(LayoutNode{b});
    LayoutNode& parent = tree.nodes[task.node];
    parent.cut = best->cut;
    parent.left = left_id;
    parent.right = left_id + 1;
    work.push_back({left_id + 1, std::move(second)});
    work.push_back({left_id, std::move(first)});
  }
  return tree;
}

}  // namespace rectpart
