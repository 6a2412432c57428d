#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "rectpart/detail/recursive_partition.hpp"
#include "rectpart/geometry.hpp"

namespace rectpart {

/// One threshold-bundling step. With tau the mean of the current entries,
/// every entry from the first one strictly below tau through the end is summed
/// into a single block. When no such entry exists, or only the last one
/// qualifies, the list is cut at ceil(len/2) instead. The merged entry is
/// re-inserted in sorted position.
inline void mdc_reduce_step(std::vector<double>& values, std::vector<Block>& blocks,
                            ReductionStats* stats = nullptr) {
  const std::size_t len = values.size();
  if (len <= 2) throw DomainError("mdc_reduce_step: need more than two entries");
  if (blocks.size() != len) throw DomainError("mdc_reduce_step: blocks and areas differ in length");
  detail::require_sorted(values, "mdc_reduce_step");

  const double tau = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(len);
  // 0-based start of the merged tail. The head is never below the mean, so the
  // search starts at the second entry; an all-equal list has no minorant.
  std::size_t start = len;
  if (values.front() != values.back()) {
    for (std::size_t i = 1; i < len; ++i) {
      if (values[i] < tau) {
        start = i;
        break;
      }
    }
  }
  if (start >= len - 1) start = (len + 1) / 2 - 1;

  const double merged = std::accumulate(values.begin() + static_cast<std::ptrdiff_t>(start),
                                        values.end(), 0.0);
  Block block = detail::merge_blocks(std::span<Block>(blocks).subspan(start), merged);
  values.resize(start);
  blocks.resize(start);
  detail::insert_sorted(values, blocks, merged, std::move(block));
  if (stats) {
    ++stats->iterations;
    if (len - start >= 3) ++stats->wide_merges;
  }
}

/// Applies mdc_reduce_step until two blocks remain.
inline std::pair<Block, Block> bipartition_threshold(std::span<const double> sorted,
                                                     ReductionStats* stats = nullptr) {
  if (sorted.size() < 2) throw DomainError("bipartition_threshold: need at least two areas");
  detail::require_sorted(sorted, "bipartition_threshold");

  std::vector<double> values(sorted.begin(), sorted.end());
  std::vector<Block> blocks = detail::singleton_blocks(sorted);
  const std::size_t before = stats ? stats->iterations : 0;
  while (values.size() > 2) mdc_reduce_step(values, blocks, stats);
  if (stats) {
    ++stats->bipartitions;
    stats->calls.push_back({sorted.size(), stats->iterations - before});
  }
  return {std::move(blocks[0]), std::move(blocks[1])};
}

/// Threshold-bundling variant of partition_dc. Same recursion, fewer
/// reduction iterations on average, no approximation guarantee.
inline Layout partition_mdc(const Instance& inst, ReductionStats* stats = nullptr) {
  return detail::partition_recursive(
      inst,
      [](std::span<const double> sorted, ReductionStats* s) {
        return bipartition_threshold(sorted, s);
      },
      stats);
}

}  // namespace rectpart
