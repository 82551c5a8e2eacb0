#pragma once

// Deterministic uniform random permutations.
//
// CounterRng is a counter-based generator: output i of stream s under seed
// is mix64(key(seed, s) + (i + 1) * golden), with mix64 the SplitMix64
// finalizer. A Monte Carlo sample with index s draws from stream s, so
// results do not depend on how samples are split across workers, and the
// output is identical on every platform.

#include <cstdint>
#include <span>

#include "vincstat/pattern.hpp"

namespace vincstat {

namespace detail {
__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;
}  // namespace detail

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream ^ 0xD1B54A32D192ED03ULL))) {}

  std::uint64_t next() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform01() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on {0..range-1} by the multiply-high map; no rejection loop.
  // The bias is at most range / 2^64.
  std::uint64_t bounded(std::uint64_t range) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<detail::u128>(next()) * range) >> 64);
  }

  // Box-Muller; consumes two outputs.
  double standard_normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

enum class SamplingMethod { Shuffle, Reduction };

// Fisher-Yates shuffle of the identity, driven by stream `index` of `seed`.
Permutation sample_uniform(int n, std::uint64_t seed, std::uint64_t index = 0);

// reduce(U_1..U_n) for n i.i.d. uniforms; ties force a silent redraw.
Permutation sample_by_reduction(int n, std::uint64_t seed,
                                std::uint64_t index = 0);

Permutation sample(SamplingMethod method, int n, std::uint64_t seed,
                   std::uint64_t index = 0);

// Writes a uniform permutation of {1..out.size()} into out.
void shuffle_into(std::span<int> out, CounterRng& rng);

}  // namespace vincstat
