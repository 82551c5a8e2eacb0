#pragma once

// Dependency graph of the occurrence indicators and the normal
// approximation bounds evaluated on it.
//
// Vertices are the admissible position sets; two distinct sets are joined
// when they share a position. N is the vertex count and D is the maximum
// degree plus one, i.e. the largest number of admissible sets meeting a
// given vertex (itself included).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vincstat/pattern.hpp"

namespace vincstat {

struct DependencyGraphSummary {
  int n = 0;
  int k = 0;
  int j = 0;
  std::uint64_t vertices = 0;                 // N
  std::uint64_t max_degree_plus_one = 0;      // D
  std::optional<std::uint64_t> edge_count;    // present when N <= edge cap
};

inline constexpr std::uint64_t kDefaultEdgeCap = 10'000'000;

// N and D always; the edge count only when N <= edge_cap.
DependencyGraphSummary graph_summary(int n, const VincularPattern& pattern,
                                     std::uint64_t edge_cap = kDefaultEdgeCap);

// Exact D without visiting every vertex.
std::uint64_t max_degree_plus_one(int n, const VincularPattern& pattern);

// Number of admissible sets meeting `positions` (which need not be
// admissible itself).
std::uint64_t meeting_count(int n, const VincularPattern& pattern,
                            std::span<const int> positions);

// Sum of degrees over all vertices divided by two; throws
// SizeLimitExceeded when N > edge_cap.
std::uint64_t edge_count(int n, const VincularPattern& pattern,
                         std::uint64_t edge_cap = kDefaultEdgeCap);

// 8 B^2 D^{3/2} N^{1/2} / sigma^2 + 8 B^3 D^2 N / sigma^3.
double stein_bound(double vertices, double max_degree_plus_one, double bound,
                   double sigma2);

// Bound on |kappa_r| of a sum over a dependency graph:
// 2^{r-1} r^{r-2} N D^{r-1} B^r.
double cumulant_bound(int r, double vertices, double max_degree_plus_one,
                      double bound);

// Kolmogorov bound 108 / (delta sqrt(2) / 6)^{1 / (1 + 2 gamma)} for a
// variable whose cumulants satisfy |kappa_r| <= (r!)^{1+gamma} / delta^{r-2}.
double saulis_bound(double gamma, double delta);

}  // namespace vincstat
