#pragma once

// Permutations and vincular patterns.
//
// A vincular pattern is an order permutation of size k together with a set
// A of adjacencies, a subset of {1..k-1}: position a in A forces the entries
// a and a+1 of an occurrence to be adjacent in the host. Equivalently the
// pattern is cut into j = k - |A| blocks of sizes (b_1..b_j), a composition
// of k. Both encodings are kept in sync by VincularPattern.
//
// Text form: blocks are separated by '|', entries within a block by ','.
// "3|1,2" is the pattern 312 whose last two entries must be adjacent.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vincstat/error.hpp"

namespace vincstat {

// One-line notation, values in 1..n. Indexing through operator[] is 0-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const int> values() const noexcept { return values_; }
  int operator[](std::size_t i) const noexcept { return values_[i]; }

  // inverse()[v - 1] is the 0-based position holding value v.
  std::vector<int> inverse() const;

  std::string to_string() const;  // comma separated

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

// Parses comma-separated one-line notation, e.g. "5,8,2,1,3,4,7,6".
Permutation parse_permutation(std::string_view text);

// Composition (b_1..b_j) of k from an adjacency set A of {1..k-1}.
std::vector<int> adjacencies_to_composition(std::span<const int> adjacencies,
                                            int k);

// Inverse of adjacencies_to_composition; returns A sorted ascending.
std::vector<int> composition_to_adjacencies(std::span<const int> blocks);

class VincularPattern {
 public:
  VincularPattern(Permutation order, std::vector<int> blocks);

  static VincularPattern from_adjacencies(Permutation order,
                                          std::span<const int> adjacencies);

  const Permutation& order() const noexcept { return order_; }
  std::span<const int> blocks() const noexcept { return blocks_; }
  std::span<const int> adjacencies() const noexcept { return adjacencies_; }

  int size() const noexcept { return static_cast<int>(order_.size()); }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  int last_block_size() const noexcept { return blocks_.back(); }

  // 0-based index of the first entry of block b (0 <= b < j).
  int block_offset(int b) const noexcept { return offsets_[b]; }

  friend bool operator==(const VincularPattern& a, const VincularPattern& b) {
    return a.order_ == b.order_ && a.blocks_ == b.blocks_;
  }

 private:
  Permutation order_;
  std::vector<int> blocks_;
  std::vector<int> adjacencies_;
  std::vector<int> offsets_;
};

VincularPattern parse_pattern(std::string_view text);

// Exact inverse of parse_pattern; no whitespace in the canonical form.
std::string format_pattern(const VincularPattern& pattern);

// The permutation with the same relative order as xs.
template <typename T>
Permutation reduce(std::span<const T> xs) {
  std::vector<int> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return xs[a] < xs[b]; });
  std::vector<int> ranks(xs.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (r > 0 && !(xs[idx[r - 1]] < xs[idx[r]])) {
      throw Error(ErrorKind::DuplicateEntry,
                  "reduce: sequence has repeated entries");
    }
    ranks[idx[r]] = static_cast<int>(r) + 1;
  }
  return Permutation(std::move(ranks));
}

template <typename T>
Permutation reduce(const std::vector<T>& xs) {
  return reduce(std::span<const T>(xs));
}

}  // namespace vincstat
