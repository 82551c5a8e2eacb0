#include "vincstat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "vincstat/enumeration.hpp"
#include "vincstat/sampling.hpp"

namespace vincstat {

namespace {

using i128 = detail::i128;

// One way of distributing the ordered blocks of an admissible set I among
// the j + 1 free segments around a vertex H: segment q receives count[q]
// consecutive blocks of total length length[q].
struct Distribution {
  std::vector<int> count;
  std::vector<int> length;
};

std::vector<Distribution> block_distributions(std::span<const int> blocks) {
  const int j = static_cast<int>(blocks.size());
  std::vector<Distribution> out;
  std::vector<int> segment(j, 0);
  // Nondecreasing maps from blocks to segments 0..j.
  auto emit = [&] {
    Distribution d{std::vector<int>(j + 1, 0), std::vector<int>(j + 1, 0)};
    for (int l = 0; l < j; ++l) {
      ++d.count[segment[l]];
      d.length[segment[l]] += blocks[l];
    }
    out.push_back(std::move(d));
  };
  while (true) {
    emit();
    int l = j - 1;
    while (l >= 0 && segment[l] == j) --l;
    if (l < 0) break;
    ++segment[l];
    for (int m = l + 1; m < j; ++m) segment[m] = segment[l];
  }
  return out;
}

// Placements of c ordered blocks of total length s in a free run of g.
i128 placements(std::int64_t g, int s, int c) {
  if (c == 0) return 1;
  if (g < s) return 0;
  i128 result = 1;
  const std::int64_t top = g - s + c;
  for (int i = 1; i <= c; ++i) result = result * (top - c + i) / i;
  return result;
}

class DisjointCounter {
 public:
  explicit DisjointCounter(const VincularPattern& pattern)
      : j_(pattern.block_count()), dists_(block_distributions(pattern.blocks())) {}

  // Admissible sets avoiding a vertex whose free runs are gaps[0..j].
  i128 operator()(std::span<const std::int64_t> gaps) const {
    i128 total = 0;
    for (const auto& d : dists_) {
      i128 term = 1;
      for (int q = 0; q <= j_ && term != 0; ++q) {
        term *= placements(gaps[q], d.length[q], d.count[q]);
      }
      total += term;
    }
    return total;
  }

  // Splits the count for fixed interior gaps into per-distribution weights
  // so that the outer runs can vary cheaply.
  struct Outer {
    std::vector<i128> weight;
    std::vector<int> first_len, first_cnt, last_len, last_cnt;
  };

  Outer with_interior(std::span<const std::int64_t> gaps) const {
    Outer o;
    for (const auto& d : dists_) {
      i128 w = 1;
      for (int q = 1; q < j_ && w != 0; ++q) {
        w *= placements(gaps[q], d.length[q], d.count[q]);
      }
      if (w == 0) continue;
      o.weight.push_back(w);
      o.first_len.push_back(d.length[0]);
      o.first_cnt.push_back(d.count[0]);
      o.last_len.push_back(d.length[j_]);
      o.last_cnt.push_back(d.count[j_]);
    }
    return o;
  }

  static i128 evaluate(const Outer& o, std::int64_t first, std::int64_t last) {
    i128 total = 0;
    for (std::size_t e = 0; e < o.weight.size(); ++e) {
      total += o.weight[e] * placements(first, o.first_len[e], o.first_cnt[e]) *
               placements(last, o.last_len[e], o.last_cnt[e]);
    }
    return total;
  }

 private:
  int j_;
  std::vector<Distribution> dists_;
};

// Exact minimum over the integers of [lo, hi] of a function that agrees
// there with a polynomial of degree <= degree. The domain is cut into
// pieces on which each forward difference is monotone, working down from
// the constant top difference; the minimum sits on a piece boundary.
template <typename F>
i128 polynomial_min(F&& f, std::int64_t lo, std::int64_t hi, int degree) {
  if (hi - lo < 4 * (degree + 2)) {
    i128 best = f(lo);
    for (std::int64_t x = lo + 1; x <= hi; ++x) best = std::min(best, f(x));
    return best;
  }
  // Forward differences at lo.
  std::vector<i128> samples(degree + 1);
  for (int r = 0; r <= degree; ++r) samples[r] = f(lo + r);
  std::vector<i128> table(degree + 1);
  for (int r = 0; r <= degree; ++r) {
    table[r] = samples[0];
    for (int s = 0; s + 1 < static_cast<int>(samples.size()) - r; ++s) {
      samples[s] = samples[s + 1] - samples[s];
    }
  }
  auto choose = [](std::int64_t x, int r) {
    i128 c = 1;
    for (int i = 1; i <= r; ++i) c = c * (x - r + i) / i;
    return c;
  };
  // Value of the r-th difference at x.
  auto diff = [&](int r, std::int64_t x) {
    i128 total = 0;
    for (int q = r; q <= degree; ++q) total += table[q] * choose(x - lo, q - r);
    return total;
  };

  std::vector<std::int64_t> bounds{lo, hi};
  for (int r = degree - 1; r >= 0; --r) {
    // diff(r + 1, .) is monotone on each piece; locate its sign change.
    std::vector<std::int64_t> next;
    for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
      const std::int64_t a = bounds[p];
      const std::int64_t b = bounds[p + 1];
      next.push_back(a);
      const bool rising = diff(r + 1, a) <= diff(r + 1, b);
      auto past = [&](std::int64_t x) {
        const i128 v = diff(r + 1, x);
        return rising ? v >= 0 : v <= 0;
      };
      std::int64_t left = a, right = b;
      if (!past(right)) continue;
      while (left < right) {
        const std::int64_t mid = left + (right - left) / 2;
        if (past(mid)) right = mid; else left = mid + 1;
      }
      if (left > a && left < b) next.push_back(left);
    }
    next.push_back(bounds.back());
    bounds = std::move(next);
  }
  i128 best = f(lo);
  for (std::int64_t x : bounds) {
    for (std::int64_t y = std::max(lo, x - 1); y <= std::min(hi, x + 1); ++y) {
      best = std::min(best, f(y));
    }
  }
  return best;
}

std::uint64_t narrow(i128 value) {
  if (value < 0 || value > static_cast<i128>(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorKind::Overflow, "count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

void require_host(int n, const VincularPattern& pattern) {
  if (n < pattern.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "dependency graph needs n >= k (n = " + std::to_string(n) + ")");
  }
}

std::vector<std::int64_t> vertex_gaps(const PositionSet& set,
                                      const VincularPattern& pattern) {
  const int j = pattern.block_count();
  std::vector<std::int64_t> gaps(j + 1);
  int previous_end = 0;
  for (int l = 0; l < j; ++l) {
    const int start = set.positions[pattern.block_offset(l)];
    gaps[l] = start - previous_end - 1;
    previous_end = start + pattern.blocks()[l] - 1;
  }
  gaps[j] = set.host_size - previous_end;
  return gaps;
}

}  // namespace

std::uint64_t meeting_count(int n, const VincularPattern& pattern,
                            std::span<const int> positions) {
  const int j = pattern.block_count();
  std::vector<char> forbidden(n + 2, 0);
  for (int p : positions) {
    if (p >= 1 && p <= n) forbidden[p] = 1;
  }
  // clear[p]: length of the forbidden-free run starting at p.
  std::vector<int> clear(n + 2, 0);
  for (int p = n; p >= 1; --p) clear[p] = forbidden[p] ? 0 : clear[p + 1] + 1;
  // ways[l][p]: placements of blocks l.. with block l starting at >= p.
  std::vector<std::vector<i128>> ways(j + 1, std::vector<i128>(n + 2, 0));
  std::fill(ways[j].begin(), ways[j].end(), 1);
  for (int l = j - 1; l >= 0; --l) {
    const int b = pattern.blocks()[l];
    for (int p = n; p >= 1; --p) {
      ways[l][p] = ways[l][p + 1];
      if (clear[p] >= b && p + b <= n + 1) ways[l][p] += ways[l + 1][p + b];
    }
  }
  return position_count(n, pattern) - narrow(ways[0][1]);
}

std::uint64_t max_degree_plus_one(int n, const VincularPattern& pattern) {
  require_host(n, pattern);
  const int k = pattern.size();
  const int j = pattern.block_count();
  const std::uint64_t total = position_count(n, pattern);
  const std::int64_t slack = n - k;  // sum of the j + 1 free runs
  DisjointCounter disjoint(pattern);

  i128 fewest = std::numeric_limits<i128>::max();
  std::vector<std::int64_t> gaps(j + 1, 0);
  // Odometer over the interior runs gaps[1..j-1].
  while (true) {
    std::int64_t used = 0;
    for (int q = 1; q < j; ++q) used += gaps[q];
    const std::int64_t rest = slack - used;
    const auto outer = disjoint.with_interior(gaps);
    auto f = [&](std::int64_t first) {
      return DisjointCounter::evaluate(outer, first, rest - first);
    };
    // Below k the outer runs can be too short for a placement and the count
    // leaves its polynomial form; scan those ends directly.
    const std::int64_t edge = std::min<std::int64_t>(k, rest + 1);
    for (std::int64_t x = 0; x < edge; ++x) {
      fewest = std::min(fewest, f(x));
      fewest = std::min(fewest, f(rest - x));
    }
    if (rest - k >= k) fewest = std::min(fewest, polynomial_min(f, k, rest - k, j));

    int q = j - 1;
    while (q >= 1) {
      if (used < slack) {
        ++gaps[q];
        break;
      }
      used -= gaps[q];
      gaps[q] = 0;
      --q;
    }
    if (q < 1) break;
  }
  return total - narrow(fewest);
}

std::uint64_t edge_count(int n, const VincularPattern& pattern,
                         std::uint64_t edge_cap) {
  require_host(n, pattern);
  const std::uint64_t total = position_count(n, pattern);
  if (total > edge_cap) {
    throw Error(ErrorKind::SizeLimitExceeded,
                "edge count needs " + std::to_string(total) +
                    " vertices, above the cap " + std::to_string(edge_cap));
  }
  DisjointCounter disjoint(pattern);
  i128 degree_sum = 0;
  for (const auto& set : enumerate_position_sets(n, pattern)) {
    degree_sum += static_cast<i128>(total) - disjoint(vertex_gaps(set, pattern)) - 1;
  }
  if (degree_sum % 2 != 0) {
    throw Error(ErrorKind::DegenerateInput, "degree sum is odd");
  }
  return narrow(degree_sum / 2);
}

DependencyGraphSummary graph_summary(int n, const VincularPattern& pattern,
                                     std::uint64_t edge_cap) {
  require_host(n, pattern);
  DependencyGraphSummary s;
  s.n = n;
  s.k = pattern.size();
  s.j = pattern.block_count();
  s.vertices = position_count(n, pattern);
  s.max_degree_plus_one = max_degree_plus_one(n, pattern);
  if (s.vertices <= edge_cap) s.edge_count = edge_count(n, pattern, edge_cap);
  return s;
}

double stein_bound(double vertices, double max_degree_plus_one, double bound,
                   double sigma2) {
  if (!(vertices > 0 && max_degree_plus_one > 0 && bound > 0 && sigma2 > 0)) {
    throw Error(ErrorKind::NonPositiveInput, "stein bound inputs must be positive");
  }
  const double sigma = std::sqrt(sigma2);
  return 8.0 * bound * bound * std::pow(max_degree_plus_one, 1.5) * std::sqrt(vertices) / sigma2 +
         8.0 * bound * bound * bound * max_degree_plus_one * max_degree_plus_one * vertices /
             (sigma2 * sigma);
}

double cumulant_bound(int r, double vertices, double max_degree_plus_one,
                      double bound) {
  if (r < 1) {
    throw Error(ErrorKind::BadOrder, "cumulant order must be at least 1");
  }
  return std::pow(2.0, r - 1) * std::pow(static_cast<double>(r), r - 2) * vertices *
         std::pow(max_degree_plus_one, r - 1) * std::pow(bound, r);
}

double saulis_bound(double gamma, double delta) {
  if (!(delta > 0)) {
    throw Error(ErrorKind::NonPositiveDelta, "delta must be positive");
  }
  if (!(gamma >= 0)) {
    throw Error(ErrorKind::InvalidArgument, "gamma must be nonnegative");
  }
  return 108.0 / std::pow(delta * std::sqrt(2.0) / 6.0, 1.0 / (1.0 + 2.0 * gamma));
}

}  // namespace vincstat
