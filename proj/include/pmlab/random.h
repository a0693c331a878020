#ifndef PMLAB_RANDOM_H_
#define PMLAB_RANDOM_H_

#include <cstdint>
#include <random>

namespace pmlab {

// mt19937_64 is fully specified by the standard, and the two helpers below
// avoid the implementation-defined std distributions, so a seed pins the
// stream on every conforming toolchain.
using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double UniformDouble(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on {0, ..., n - 1}; rejection keeps it unbiased.
inline int UniformInt(Rng& rng, int n) {
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<int>(x % range);
}

}  // namespace pmlab

#endif  // PMLAB_RANDOM_H_
