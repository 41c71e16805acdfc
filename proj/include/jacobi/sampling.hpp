#pragma once

// Seeded sampling for the randomized suites. std::uniform_real_distribution
// is implementation-defined, so the conversion from raw 64-bit words is done
// here; mt19937_64 itself is fully specified by the standard.

#include "jacobi/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace jacobi {

class StableRng {
public:
  explicit StableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1)); }
  double phase() { return uniform(-std::numbers::pi, std::numbers::pi); }
  /// Uniform in area on the disk |z| <= radius.
  cplx disk(double radius) { return std::polar(radius * std::sqrt(uniform()), phase()); }

private:
  std::mt19937_64 engine_;
};

} // namespace jacobi
