#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace wlab {

/// Mixes a base seed with stream indices so parallel ensembles draw from
/// statistically independent generators. SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0);

using Rng = std::mt19937_64;

/// Runs body(i) for i in [0, n). Thread count is capped by the
/// WIGNER_LAB_THREADS environment variable (default: hardware concurrency).
/// Results must be written to disjoint slots; bodies share no mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wlab
