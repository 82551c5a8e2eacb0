#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vincstat/bounds.hpp"
#include "vincstat/enumeration.hpp"
#include "vincstat/moments.hpp"

using namespace vincstat;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(GraphSummary, Examples) {
  const auto d = graph_summary(5, parse_pattern("2,1"));
  EXPECT_EQ(d.vertices, 4u);
  EXPECT_EQ(d.max_degree_plus_one, 3u);
  EXPECT_EQ(d.edge_count, 3u);

  const auto pairs = graph_summary(5, parse_pattern("1|2"));
  EXPECT_EQ(pairs.vertices, 10u);
  EXPECT_EQ(pairs.max_degree_plus_one - 1, 6u);

  const auto single = graph_summary(4, parse_pattern("2|1,3|4"));
  EXPECT_EQ(single.vertices, 1u);
  EXPECT_EQ(single.max_degree_plus_one, 1u);
  EXPECT_EQ(single.edge_count, 0u);

  EXPECT_EQ(kind_of([] { graph_summary(3, parse_pattern("1|2|3|4")); }),
            ErrorKind::InvalidArgument);
}

TEST(GraphSummary, EdgeCap) {
  const auto d = graph_summary(30, parse_pattern("1|2"), 100);
  EXPECT_EQ(d.vertices, 435u);
  EXPECT_FALSE(d.edge_count.has_value());
  EXPECT_EQ(kind_of([] { edge_count(30, parse_pattern("1|2"), 100); }),
            ErrorKind::SizeLimitExceeded);
}

TEST(GraphSummary, MatchesPairwiseOracle) {
  for (int k = 1; k <= 4; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
      std::vector<int> adj;
      for (int a = 1; a < k; ++a) {
        if (mask & (1u << (a - 1))) adj.push_back(a);
      }
      const auto p = VincularPattern::from_adjacencies(Permutation::identity(k), adj);
      for (int n = k; n <= 13; ++n) {
        const auto d = graph_summary(n, p);
        ASSERT_EQ(d.vertices, position_count(n, p));
        ASSERT_EQ(d.max_degree_plus_one, reference::naive_max_degree_plus_one(n, k, adj))
            << format_pattern(p) << " n=" << n;
        ASSERT_EQ(*d.edge_count, reference::naive_edge_count(n, k, adj))
            << format_pattern(p) << " n=" << n;
        ASSERT_LE(*d.edge_count, d.vertices * (d.vertices - 1) / 2);
      }
    }
  }
}

TEST(MeetingCount, MatchesPairwiseOracle) {
  const auto p = parse_pattern("1,2|3|4,5");
  const std::vector<int> adj{1, 4};
  const int n = 12;
  const auto sets = reference::naive_admissible(n, 5, adj);
  std::uint64_t degree_sum = 0;
  for (const auto& a : sets) {
    std::uint64_t expected = 0;
    for (const auto& b : sets) {
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      expected += !common.empty();
    }
    ASSERT_EQ(meeting_count(n, p, a), expected);
    degree_sum += expected - 1;
  }
  EXPECT_EQ(degree_sum, 2 * edge_count(n, p));
  // Arbitrary position sets, not only admissible ones.
  const std::vector<int> probe{1, 7, 12};
  std::uint64_t expected = 0;
  for (const auto& b : sets) {
    expected += std::find_first_of(b.begin(), b.end(), probe.begin(), probe.end()) != b.end();
  }
  EXPECT_EQ(meeting_count(n, p, probe), expected);
}

TEST(MaxDegree, FastRouteMatchesPerVertexScan) {
  // Larger hosts than the pairwise oracle can afford: compare against the
  // maximum of meeting_count over every vertex.
  for (const char* text : {"1|2", "1|2,3", "1,2|3,4", "1|2|3", "1,2|3|4", "1|2,3,4|5", "1,2,3|4,5"}) {
    const auto p = parse_pattern(text);
    for (int n : {p.size(), p.size() + 1, 17, 26, 31}) {
      std::uint64_t best = 0;
      for (const auto& s : enumerate_position_sets(n, p)) {
        best = std::max(best, meeting_count(n, p, s.positions));
      }
      ASSERT_EQ(max_degree_plus_one(n, p), best) << text << " n=" << n;
    }
  }
}

TEST(MaxDegree, GrowthRatio) {
  for (const char* text : {"2,1", "3,1,2", "1|2", "2,1|3", "1|2|3", "1,3|2|4"}) {
    const auto p = parse_pattern(text);
    const double target = std::pow(2.0, p.block_count() - 1);
    for (int n : {200, 400, 800}) {
      const double ratio = static_cast<double>(max_degree_plus_one(2 * n, p)) /
                           static_cast<double>(max_degree_plus_one(n, p));
      EXPECT_NEAR(ratio / target, 1.0, 0.15) << text << " n=" << n;
    }
  }
}

TEST(Stein, Examples) {
  EXPECT_DOUBLE_EQ(stein_bound(1, 1, 1, 1), 16.0);
  EXPECT_EQ(kind_of([] { stein_bound(0, 1, 1, 1); }), ErrorKind::NonPositiveInput);
  EXPECT_EQ(kind_of([] { stein_bound(1, 1, 1, -1); }), ErrorKind::NonPositiveInput);
  // Variance-dominated first term: doubling sigma^2 shrinks by a factor in (2, 8).
  const double a = stein_bound(1e6, 3, 1, 1e4), b = stein_bound(1e6, 3, 1, 2e4);
  EXPECT_GT(a / b, 2.0);
  EXPECT_LT(a / b, 8.0);
}

TEST(Stein, DecaysLikeInverseSquareRoot) {
  for (const char* text : {"2,1", "1|2"}) {
    const auto p = parse_pattern(text);
    const auto poly = variance_polynomial(p);
    std::vector<double> xs, ys;
    for (int n : {100, 1000, 10000, 100000}) {
      const double bound = stein_bound(static_cast<double>(position_count(n, p)),
                                       static_cast<double>(max_degree_plus_one(n, p)), 1.0,
                                       to_double(poly(n)));
      xs.push_back(std::log(n));
      ys.push_back(std::log(bound));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    EXPECT_GE(slope, -0.6) << text;
    EXPECT_LE(slope, -0.4) << text;
  }
}

TEST(Cumulant, Examples) {
  EXPECT_DOUBLE_EQ(cumulant_bound(1, 10, 2, 1), 10.0);
  EXPECT_DOUBLE_EQ(cumulant_bound(2, 10, 2, 1), 40.0);
  EXPECT_DOUBLE_EQ(cumulant_bound(3, 1, 1, 1), 12.0);
  EXPECT_EQ(kind_of([] { cumulant_bound(0, 1, 1, 1); }), ErrorKind::BadOrder);
}

TEST(Saulis, Examples) {
  EXPECT_NEAR(saulis_bound(0, 6 / std::sqrt(2.0)), 108.0, 1e-9);
  EXPECT_NEAR(saulis_bound(0, 600 / std::sqrt(2.0)), 1.08, 1e-12);
  EXPECT_NEAR(saulis_bound(0.5, 6 / std::sqrt(2.0)), 108.0, 1e-9);
  EXPECT_EQ(kind_of([] { saulis_bound(0, 0); }), ErrorKind::NonPositiveDelta);
  EXPECT_EQ(kind_of([] { saulis_bound(-1, 1); }), ErrorKind::InvalidArgument);
  // delta growing like sqrt(n) gives a bound shrinking like n^{-1/2}.
  EXPECT_NEAR(saulis_bound(0, std::sqrt(400.0)) / saulis_bound(0, std::sqrt(100.0)), 0.5, 1e-12);
}
