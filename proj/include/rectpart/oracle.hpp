#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rectpart/detail/recursive_partition.hpp"
#include "rectpart/geometry.hpp"

namespace rectpart {

/// Raised when an exhaustive search is asked for more areas than allowed.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double value = 0.0;
  Layout layout;
};

namespace detail {

/// Exhaustive minimum total half-perimeter over guillotine partitions.
/// Subproblems are memoized on (area multiset, {w, h}) rounded to 12
/// significant digits. Splits are scanned with the largest area pinned to the
/// first group, masks ascending, vertical before horizontal; a later candidate
/// replaces the incumbent only when it is smaller by more than 1e-12 relative.
class GuillotineSearch {
 public:
  double value(const std::vector<double>& sorted, double w, double h) {
    if (sorted.size() == 1) return w + h;
    const std::string k = key(sorted, w, h);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    const double best = scan(sorted, w, h).cost;
    memo_.emplace(k, best);
    return best;
  }

  void build(const std::vector<Item>& items, const Rect& rect, std::size_t node, Layout& out) {
    if (items.size() == 1) {
      out.tree.nodes[node].area_index = items.front().original;
      out.rects[items.front().original] = rect;
      return;
    }
    std::vector<double> sorted;
    for (const Item& it : items) sorted.push_back(it.area);
    const Choice c = scan(sorted, rect.w, rect.h);

    std::vector<Item> a, b;
    double sum_a = 0.0, sum_b = 0.0;
    split_by_mask(items, c.mask, a, b, sum_a, sum_b);
    Rect ra, rb;
    if (c.cut == Cut::Vertical) {
      const double wa = sum_a / rect.h;
      ra = Rect{rect.x, rect.y, wa, rect.h};
      rb = Rect{rect.x + wa, rect.y, sum_b / rect.h, rect.h};
    } else {
      const double hb = sum_b / rect.w;
      ra = Rect{rect.x, rect.y + hb, rect.w, sum_a / rect.w};
      rb = Rect{rect.x, rect.y, rect.w, hb};
    }
    const std::size_t left = out.tree.nodes.size();
    out.tree.nodes.push_back(LayoutNode{ra});
    out.tree.nodes.push_back(LayoutNode{rb});
    out.tree.nodes[node].cut = c.cut;
    out.tree.nodes[node].left = left;
    out.tree.nodes[node].right = left + 1;
    build(a, ra, left, out);
    build(b, rb, left + 1, out);
  }

 private:
  struct Choice {
    double cost = std::numeric_limits<double>::infinity();
    unsigned mask = 0;
    Cut cut = Cut::Vertical;
  };

  template <class T, class Sum>
  static void split_by_mask(const std::vector<T>& in, unsigned mask, std::vector<T>& a,
                            std::vector<T>& b, double& sum_a, double& sum_b, Sum area_of) {
    for (std::size_t i = 0; i < in.size(); ++i) {
      // Bit i-1 set moves element i (i >= 1) to the second group.
      if (i > 0 && (mask >> (i - 1)) & 1u) {
        b.push_back(in[i]);
        sum_b += area_of(in[i]);
      } else {
        a.push_back(in[i]);
        sum_a += area_of(in[i]);
      }
    }
  }

  static void split_by_mask(const std::vector<Item>& in, unsigned mask, std::vector<Item>& a,
                            std::vector<Item>& b, double& sum_a, double& sum_b) {
    split_by_mask(in, mask, a, b, sum_a, sum_b, [](const Item& it) { return it.area; });
  }

  Choice scan(const std::vector<double>& sorted, double w, double h) {
    Choice best;
    const unsigned limit = 1u << (sorted.size() - 1);
    std::vector<double> a, b;
    for (unsigned mask = 1; mask < limit; ++mask) {
      a.clear();
      b.clear();
      double sum_a = 0.0, sum_b = 0.0;
      split_by_mask(sorted, mask, a, b, sum_a, sum_b, [](double v) { return v; });
      for (Cut cut : {Cut::Vertical, Cut::Horizontal}) {
        const double cost = cut == Cut::Vertical
                                ? value(a, sum_a / h, h) + value(b, sum_b / h, h)
                                : value(a, w, sum_a / w) + value(b, w, sum_b / w);
        if (cost < best.cost - 1e-12 * std::abs(best.cost) || best.mask == 0) {
          best = Choice{cost, mask, cut};
        }
      }
    }
    return best;
  }

  static std::string key(const std::vector<double>& sorted, double w, double h) {
    std::string k;
    char buf[32];
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.11e,", v);
      k += buf;
    };
    put(std::max(w, h));
    put(std::min(w, h));
    for (double v : sorted) put(v);
    return k;
  }

  std::unordered_map<std::string, double> memo_;
};

}  // namespace detail

/// Minimum total half-perimeter over all guillotine partitions, with one
/// witness layout. Refuses instances with more than `max_n` areas.
inline OracleResult optimal_guillotine(const Instance& inst, std::size_t max_n = 8) {
  const std::size_t n = inst.size();
  if (n > max_n) {
    throw RefusalError("oracle: n = " + std::to_string(n) + " exceeds the limit of " +
                       std::to_string(max_n) + " areas");
  }
  if (n > 31) throw RefusalError("oracle: more than 31 areas cannot be enumerated");

  const SortedAreas sorted = sort_descending(inst.areas());
  std::vector<detail::Item> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back({sorted.areas[i], sorted.perm[i]});

  detail::GuillotineSearch search;
  const Rect& c = inst.container();
  OracleResult result;
  result.value = search.value(sorted.areas, c.w, c.h);
  result.layout.rects.resize(n);
  result.layout.tree.nodes.push_back(LayoutNode{c});
  search.build(items, c, 0, result.layout);
  return result;
}

}  // namespace rectpart
