#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "rectpart/instance_gen.hpp"

namespace rectpart::fixtures {

/// The seeded sweep shared by the property tests and the acceptance suite:
/// families cycle Uniform, Geometric(0.5), Geometric(0.9), Geometric(0.99);
/// n is drawn from [min_n, max_n]; the container is the unit square.
inline GenSpec sweep_spec(std::uint64_t k, std::size_t min_n = 2, std::size_t max_n = 100) {
  GenSpec spec;
  spec.seed = k;
  spec.n = min_n + splitmix64(k * 7 + 1) % (max_n - min_n + 1);
  switch (k % 4) {
    case 0: spec.family = Family::Uniform; break;
    case 1: spec.family = Family::Geometric; spec.q = 0.5; break;
    case 2: spec.family = Family::Geometric; spec.q = 0.9; break;
    default: spec.family = Family::Geometric; spec.q = 0.99; break;
  }
  return spec;
}

/// Largest A_i / A_{i+1} over the non-increasing order of `areas`.
inline double max_consecutive_ratio(std::vector<double> areas) {
  std::sort(areas.begin(), areas.end(), std::greater<>());
  double worst = 1.0;
  for (std::size_t i = 0; i + 1 < areas.size(); ++i) worst = std::max(worst, areas[i] / areas[i + 1]);
  return worst;
}

}  // namespace rectpart::fixtures
