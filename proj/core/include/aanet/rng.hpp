#pragma once

// Portable random streams. std::mt19937_64 output is fixed by the standard;
// the standard distributions are not, so doubles are formed directly from the
// top 53 bits: u = (x >> 11) * 2^-53, which lies in [0, 1).

#include <cstdint>
#include <random>

namespace aanet {

/// One step of the SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for one (N_i, realization) cell of a sweep:
/// splitmix64(splitmix64(splitmix64(base) ^ n_intermediate) ^ realization).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n_intermediate, std::uint64_t realization);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aanet
