#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rectpart/geometry.hpp"

namespace rectpart {

enum class Family { Uniform, Geometric };

/// Parameters of a random instance. Uniform draws areas from (0, 1];
/// Geometric sets A_i proportional to q^i (i = 1..n) times a uniform jitter in
/// [0.9, 1.1]. Areas are rescaled to fill the container.
struct GenSpec {
  std::size_t n = 1;
  Family family = Family::Uniform;
  double q = 0.5;
  std::uint64_t seed = 0;
  Rect container{0.0, 0.0, 1.0, 1.0};
  bool jitter = true;  // Geometric only; switched off for analytic tests
};

/// SplitMix64 finalizer, used to derive generator state from a user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

namespace detail {

/// mt19937_64 is specified bit-exactly by the standard; the double
/// conversion below is done by hand because the standard distributions are
/// not portable across library implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on (0, 1], 53-bit resolution.
  double unit_open_closed() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double between(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

inline Instance generate(const GenSpec& spec) {
  if (spec.n < 1) throw DomainError("generate: n >= 1 required");
  if (!(spec.q > 0.0 && spec.q <= 1.0)) throw DomainError("generate: q must lie in (0, 1]");
  if (!is_valid(spec.container)) throw DomainError("generate: invalid container");

  detail::PortableRng rng(spec.seed);
  std::vector<double> areas(spec.n);
  double weight = 1.0;
  for (double& a : areas) {
    if (spec.family == Family::Uniform) {
      a = rng.unit_open_closed();
    } else {
      weight *= spec.q;
      a = spec.jitter ? weight * rng.between(0.9, 1.1) : weight;
    }
  }
  double sum = 0.0;
  for (double a : areas) sum += a;
  const double target = area(spec.container);
  for (double& a : areas) a = a / sum * target;
  return Instance(spec.container, std::move(areas));
}

}  // namespace rectpart
