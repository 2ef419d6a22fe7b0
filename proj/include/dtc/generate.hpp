#pragma once

#include <cstdint>

#include "dtc/digraph.hpp"

namespace dtc {

/// Deterministic 64-bit generator (splitmix64: Weyl step 0x9E3779B97F4A7C15,
/// finalizer constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB). Chosen over
/// std::mt19937 so that generated corpora are reproducible byte-for-byte on
/// any platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

struct GenParams {
  std::uint32_t nodes = 0;
  std::uint32_t arcs = 0;
  unsigned long max_cost = 10;
  /// Probability that an arc cost is forced to zero, as an exact rational.
  Cost zero_frac;
  std::uint64_t seed = 1;
};

/// Random multigraph without self-loops; arc costs are uniform integers in
/// [0, max_cost], independently zeroed with probability zero_frac.
Digraph generate_instance(const GenParams& params);

/// Thread budget: DTC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency, clamped to [1, 16].
unsigned thread_budget();

}  // namespace dtc
