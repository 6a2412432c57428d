#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rectpart/detail/recursive_partition.hpp"
#include "rectpart/geometry.hpp"

namespace rectpart {

/// Reduces a non-increasing list to two blocks by repeatedly merging its two
/// smallest entries and re-inserting the sum in sorted position (after any
/// equal entries). The first block has the larger or equal total.
inline std::pair<Block, Block> bipartition_two_smallest(std::span<const double> sorted,
                                                        ReductionStats* stats = nullptr) {
  if (sorted.size() < 2) throw DomainError("bipartition_two_smallest: need at least two areas");
  detail::require_sorted(sorted, "bipartition_two_smallest");

  std::vector<double> values(sorted.begin(), sorted.end());
  std::vector<Block> blocks = detail::singleton_blocks(sorted);
  const std::size_t before = stats ? stats->iterations : 0;
  while (values.size() > 2) {
    const std::size_t m = values.size() - 2;
    const double merged = values[m] + values[m + 1];
    Block block = detail::merge_blocks(std::span<Block>(blocks).subspan(m), merged);
    values.resize(m);
    blocks.resize(m);
    detail::insert_sorted(values, blocks, merged, std::move(block));
    if (stats) ++stats->iterations;
  }
  if (stats) {
    ++stats->bipartitions;
    stats->calls.push_back({sorted.size(), stats->iterations - before});
  }
  return {std::move(blocks[0]), std::move(blocks[1])};
}

/// Divide-and-conquer partition: pairwise merging of the two smallest areas
/// decides every cut. Guaranteed within a factor 1.203 of the optimum total
/// half-perimeter, O(n^2) time.
inline Layout partition_dc(const Instance& inst, ReductionStats* stats = nullptr) {
  return detail::partition_recursive(
      inst,
      [](std::span<const double> sorted, ReductionStats* s) {
        return bipartition_two_smallest(sorted, s);
      },
      stats);
}

}  // namespace rectpart
