#include "vincstat/sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace vincstat {

double CounterRng::standard_normal() noexcept {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void shuffle_into(std::span<int> out, CounterRng& rng) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i) + 1;
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = rng.bounded(i);
    std::swap(out[i - 1], out[j]);
  }
}

Permutation sample_uniform(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) {
    throw Error(ErrorKind::ZeroSize, "permutation size must be at least 1");
  }
  CounterRng rng(seed, index);
  std::vector<int> values(n);
  shuffle_into(values, rng);
  return Permutation(std::move(values));
}

Permutation sample_by_reduction(int n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) {
    throw Error(ErrorKind::ZeroSize, "permutation size must be at least 1");
  }
  CounterRng rng(seed, index);
  std::vector<double> u(n);
  while (true) {
    for (auto& x : u) x = rng.uniform01();
    try {
      return reduce(u);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DuplicateEntry) throw;
    }
  }
}

Permutation sample(SamplingMethod method, int n, std::uint64_t seed,
                   std::uint64_t index) {
  return method == SamplingMethod::Shuffle ? sample_uniform(n, seed, index)
                                           : sample_by_reduction(n, seed, index);
}

}  // namespace vincstat
