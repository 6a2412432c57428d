#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rectpart/geometry.hpp"

namespace rectpart {

/// A group of merged areas. Members are positions in the sorted working list
/// the reduction started from, kept ascending.
struct Block {
  std::vector<std::size_t> members;
  double total = 0.0;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Instrumentation for the reduction loops.
struct ReductionStats {
  std::size_t bipartitions = 0;  // calls that reduced a list of length >= 2
  std::size_t iterations = 0;    // reduction-loop iterations, summed over calls
  std::size_t wide_merges = 0;   // iterations that merged three or more entries

  struct Call {
    std::size_t length;      // entries in the list being reduced
    std::size_t iterations;  // loop iterations spent on it
  };
  std::vector<Call> calls;
};

struct SortedAreas {
  std::vector<double> areas;        // non-increasing
  std::vector<std::size_t> perm;    // sorted position -> original index
};

/// Stable non-increasing sort; equal areas keep their input order.
inline SortedAreas sort_descending(std::span<const double> areas) {
  SortedAreas out;
  out.perm.resize(areas.size());
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  std::stable_sort(out.perm.begin(), out.perm.end(),
                   [&](std::size_t a, std::size_t b) { return areas[a] > areas[b]; });
  out.areas.reserve(areas.size());
  for (std::size_t i : out.perm) out.areas.push_back(areas[i]);
  return out;
}

namespace detail {

inline void require_sorted(std::span<const double> sorted, const char* who) {
  if (!std::is_sorted(sorted.begin(), sorted.end(), std::greater<>())) {
    throw DomainError(std::string(who) + ": list must be non-increasing");
  }
}

inline std::vector<Block> singleton_blocks(std::span<const double> sorted) {
  std::vector<Block> blocks;
  blocks.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) blocks.push_back(Block{{i}, sorted[i]});
  return blocks;
}

inline Block merge_blocks(std::span<Block> range, double total) {
  Block out;
  out.total = total;
  if (range.size() == 2) {
    out.members.reserve(range[0].members.size() + range[1].members.size());
    std::merge(range[0].members.begin(), range[0].members.end(), range[1].members.begin(),
               range[1].members.end(), std::back_inserter(out.members));
    return out;
  }
  for (Block& b : range) out.members.insert(out.members.end(), b.members.begin(), b.members.end());
  std::sort(out.members.begin(), out.members.end());
  return out;
}

/// Re-inserts `value` into the non-increasing list `values`, after every
/// entry equal to it, and places `block` at the same position of `blocks`.
/// The position is found by a linear scan from the front.
inline void insert_sorted(std::vector<double>& values, std::vector<Block>& blocks, double value,
                          Block block) {
  std::size_t k = 0;
  while (k < values.size() && values[k] >= value) ++k;
  values.insert(values.begin() + static_cast<std::ptrdiff_t>(k), value);
  blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(k), std::move(block));
}

struct Item {
  double area;
  std::size_t original;
};

/// Shared recursion skeleton: reduce the sorted list to two blocks, cut the
/// rectangle with the larger block on the left/top, repeat on each block.
/// `reduce` maps a non-increasing list of length >= 2 to its two blocks.
template <class Reduce>
Layout partition_recursive(const Instance& inst, Reduce&& reduce, ReductionStats* stats) {
  const std::size_t n = inst.size();
  Layout layout;
  layout.rects.resize(n);
  layout.tree.nodes.reserve(2 * n - 1);

  const SortedAreas sorted = sort_descending(inst.areas());
  std::vector<Item> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) items.push_back({sorted.areas[i], sorted.perm[i]});

  struct Task {
    std::size_t node;
    std::vector<Item> items;
  };
  layout.tree.nodes.push_back(LayoutNode{inst.container()});
  std::vector<Task> work;
  work.push_back({0, std::move(items)});

  std::vector<double> values;
  while (!work.empty()) {
    Task task = std::move(work.back());
    work.pop_back();
    const Rect rect = layout.tree.nodes[task.node].rect;

    if (task.items.size() == 1) {
      LayoutNode& leaf = layout.tree.nodes[task.node];
      leaf.area_index = task.items.front().original;
      layout.rects[leaf.area_index] = rect;
      continue;
    }

    values.clear();
    for (const Item& it : task.items) values.push_back(it.area);
    auto [first, second] = reduce(std::span<const double>(values), stats);

    const SplitResult pieces = split_rect(rect, first.total, second.total);
    const std::size_t left_id = layout.tree.nodes.size();
    layout.tree.nodes.push_back(LayoutNode{pieces.first});
    layout.tree.nodes.push_back(LayoutNode{pieces.second});
    LayoutNode& parent = layout.tree.nodes[task.node];
    parent.cut = pieces.cut;
    parent.left = left_id;
    parent.right = left_id + 1;

    auto gather = [&](const Block& b) {
      std::vector<Item> sub;
      sub.reserve(b.members.size());
      for (std::size_t pos : b.members) sub.push_back(task.items[pos]);
      return sub;
    };
    // Right task is pushed first so the left subtree is processed first.
    work.push_back({left_id + 1, gather(second)});
    work.push_back({left_id, gather(first)});
  }
  return layout;
}

}  // namespace detail
}  // namespace rectpart
