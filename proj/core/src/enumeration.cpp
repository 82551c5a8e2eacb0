#include "vincstat/enumeration.hpp"

#include <limits>

#include "vincstat/sampling.hpp"

namespace vincstat {

PositionSetRange::PositionSetRange(int n, const VincularPattern& pattern)
    : pattern_(&pattern), n_(n) {}

PositionSetRange::iterator::iterator(const VincularPattern* pattern, int n)
    : pattern_(pattern) {
  const int k = pattern->size();
  const int j = pattern->block_count();
  current_.host_size = n;
  if (n < k) {
    return;
  }
  starts_.assign(j, 1);
  last_start_.assign(j, 0);
  int tail = 0;
  for (int l = j - 1; l >= 0; --l) {
    tail += pattern->blocks()[l];
    last_start_[l] = n - tail + 1;
  }
  current_.positions.assign(k, 0);
  layout_from(0);
  done_ = false;
}

void PositionSetRange::iterator::layout_from(int block) {
  const auto blocks = pattern_->blocks();
  const int j = static_cast<int>(blocks.size());
  for (int l = block + 1; l < j; ++l) {
    starts_[l] = starts_[l - 1] + blocks[l - 1];
  }
  for (int l = block; l < j; ++l) {
    const int offset = pattern_->block_offset(l);
    for (int e = 0; e < blocks[l]; ++e) {
      current_.positions[offset + e] = starts_[l] + e;
    }
  }
}

PositionSetRange::iterator& PositionSetRange::iterator::operator++() {
  int l = static_cast<int>(starts_.size()) - 1;
  while (l >= 0 && starts_[l] == last_start_[l]) --l;
  if (l < 0) {
    done_ = true;
    return *this;
  }
  ++starts_[l];
  layout_from(l);
  return *this;
}

PositionSetRange enumerate_position_sets(int n, const VincularPattern& pattern) {
  return PositionSetRange(n, pattern);
}

std::uint64_t binomial(std::int64_t m, std::int64_t r) {
  if (r < 0 || m < 0 || r > m) return 0;
  r = std::min(r, m - r);
  detail::u128 result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result = result * static_cast<detail::u128>(m - r + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorKind::Overflow, "binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t position_count(int n, const VincularPattern& pattern) {
  const int k = pattern.size();
  const int j = pattern.block_count();
  if (n < k) return 0;
  return binomial(static_cast<std::int64_t>(n) - k + j, j);
}

bool is_admissible(const PositionSet& set, const VincularPattern& pattern) {
  const auto& pos = set.positions;
  if (static_cast<int>(pos.size()) != pattern.size()) return false;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (pos[i] < 1 || pos[i] > set.host_size) return false;
    if (i > 0 && pos[i] <= pos[i - 1]) return false;
  }
  for (int a : pattern.adjacencies()) {
    if (pos[a] != pos[a - 1] + 1) return false;
  }
  return true;
}

std::vector<int> shift_bijection(const PositionSet& set,
                                 const VincularPattern& pattern) {
  if (!is_admissible(set, pattern)) {
    throw Error(ErrorKind::NotAdmissible,
                "position set is not admissible for the pattern");
  }
  std::vector<int> subset;
  subset.reserve(pattern.block_count());
  for (int l = 0; l < pattern.block_count(); ++l) {
    // block l starts at 0-based offset c_{l}, shifted left by c_{l} - l
    const int offset = pattern.block_offset(l);
    subset.push_back(set.positions[offset] - (offset - l));
  }
  return subset;
}

PositionSet unshift_bijection(std::span<const int> subset, int n,
                              const VincularPattern& pattern) {
  const int k = pattern.size();
  const int j = pattern.block_count();
  if (static_cast<int>(subset.size()) != j) {
    throw Error(ErrorKind::SizeMismatch, "subset size differs from block count");
  }
  for (int l = 0; l < j; ++l) {
    if (subset[l] < 1 || subset[l] > n - k + j || (l > 0 && subset[l] <= subset[l - 1])) {
      throw Error(ErrorKind::NotAdmissible,
                  "not a strictly increasing subset of {1..n-k+j}");
    }
  }
  PositionSet set{std::vector<int>(k), n};
  for (int l = 0; l < j; ++l) {
    const int offset = pattern.block_offset(l);
    const int start = subset[l] + (offset - l);
    for (int e = 0; e < pattern.blocks()[l]; ++e) {
      set.positions[offset + e] = start + e;
    }
  }
  return set;
}

bool occurs_at(const Permutation& sigma, const Permutation& pi,
               const PositionSet& set) {
  return occurs_at_values(sigma.values(), pi, set.positions);
}

std::uint64_t count_occurrences(const Permutation& sigma,
                                const VincularPattern& pattern) {
  return count_occurrences(sigma.values(), pattern);
}

std::uint64_t count_occurrences(std::span<const int> sigma,
                                const VincularPattern& pattern) {
  const int n = static_cast<int>(sigma.size());
  const int k = pattern.size();
  if (n < k) return 0;
  const auto inv = pattern.order().inverse();
  std::uint64_t total = 0;
  for (const auto& set : enumerate_position_sets(n, pattern)) {
    const int* pos = set.positions.data();
    bool ok = true;
    int prev = sigma[pos[inv[0]] - 1];
    for (int r = 1; r < k; ++r) {
      const int cur = sigma[pos[inv[r]] - 1];
      if (cur < prev) {
        ok = false;
        break;
      }
      prev = cur;
    }
    total += ok;
  }
  return total;
}

}  // namespace vincstat
