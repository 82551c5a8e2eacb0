#pragma once

// Admissible position sets and occurrence counting.
//
// A position set for a pattern of size k in a host of size n is a strictly
// increasing k-tuple of 1-based positions whose entries inside each block are
// consecutive. Enumeration walks the j block start positions as an odometer,
// so inadmissible tuples are never generated and memory stays O(k).

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "vincstat/pattern.hpp"

namespace vincstat {

struct PositionSet {
  std::vector<int> positions;  // 1-based, strictly increasing
  int host_size = 0;

  friend bool operator==(const PositionSet&, const PositionSet&) = default;
};

class PositionSetRange {
 public:
  PositionSetRange(int n, const VincularPattern& pattern);

  class iterator {
   public:
    using value_type = PositionSet;
    using difference_type = std::ptrdiff_t;

    iterator() = default;

    const PositionSet& operator*() const noexcept { return current_; }
    const PositionSet* operator->() const noexcept { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept {
      return it.done_;
    }

   private:
    friend class PositionSetRange;
    iterator(const VincularPattern* pattern, int n);
    void layout_from(int block);

    const VincularPattern* pattern_ = nullptr;
    std::vector<int> starts_;
    std::vector<int> last_start_;
    PositionSet current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(pattern_, n_); }
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  const VincularPattern* pattern_;
  int n_;
};

// Lazily yields every admissible set once, ordered lexicographically by the
// block start positions. The pattern must outlive the range.
PositionSetRange enumerate_position_sets(int n, const VincularPattern& pattern);

// binom(n - k + j, j) when n >= k, else 0. Throws Overflow past 2^64 - 1.
std::uint64_t position_count(int n, const VincularPattern& pattern);

// Exact binomial coefficient; 0 when r < 0 or r > m. Throws Overflow.
std::uint64_t binomial(std::int64_t m, std::int64_t r);

bool is_admissible(const PositionSet& set, const VincularPattern& pattern);

// Maps an admissible set to a j-subset of {1..n-k+j} by sliding each block
// start left by the total length of the earlier blocks minus their count.
std::vector<int> shift_bijection(const PositionSet& set,
                                 const VincularPattern& pattern);

// Inverse of shift_bijection for a host of size n.
PositionSet unshift_bijection(std::span<const int> subset, int n,
                              const VincularPattern& pattern);

// True iff sigma restricted to the (1-based) positions is order-isomorphic
// to pi. Works for permutations and for any sequence of distinct values.
template <typename T>
bool occurs_at_values(std::span<const T> values, const Permutation& pi,
                      std::span<const int> positions);

bool occurs_at(const Permutation& sigma, const Permutation& pi,
               const PositionSet& set);

std::uint64_t count_occurrences(const Permutation& sigma,
                                const VincularPattern& pattern);

// Same count over raw one-line values; used by the Monte Carlo hot loop.
std::uint64_t count_occurrences(std::span<const int> sigma,
                                const VincularPattern& pattern);

// -- implementation ---------------------------------------------------------

template <typename T>
bool occurs_at_values(std::span<const T> values, const Permutation& pi,
                      std::span<const int> positions) {
  if (positions.size() != pi.size()) {
    throw Error(ErrorKind::SizeMismatch,
                "position set size differs from pattern size");
  }
  for (int p : positions) {
    if (p < 1 || static_cast<std::size_t>(p) > values.size()) {
      throw Error(ErrorKind::SizeMismatch, "position outside the host");
    }
  }
  // The entries at positions[pi^-1(1)], positions[pi^-1(2)], ... must increase.
  const auto inv = pi.inverse();
  for (std::size_t r = 1; r < inv.size(); ++r) {
    if (!(values[positions[inv[r - 1]] - 1] < values[positions[inv[r]] - 1])) {
      return false;
    }
  }
  return true;
}

}  // namespace vincstat
