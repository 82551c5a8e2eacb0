#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "vincstat/enumeration.hpp"

using namespace vincstat;

namespace {

std::vector<std::vector<int>> collect(int n, const VincularPattern& p) {
  std::vector<std::vector<int>> out;
  for (const auto& s : enumerate_position_sets(n, p)) {
    EXPECT_EQ(s.host_size, n);
    out.push_back(s.positions);
  }
  return out;
}

const VincularPattern& seven() {
  // k = 7, A = {1,2,4,6}: blocks (3,2,2).
  static const auto p = VincularPattern::from_adjacencies(Permutation::identity(7),
                                                          std::vector<int>{1, 2, 4, 6});
  return p;
}

}  // namespace

TEST(Enumeration, SmallExamples) {
  EXPECT_EQ(collect(3, parse_pattern("2,1")), (std::vector<std::vector<int>>{{1, 2}, {2, 3}}));
  EXPECT_TRUE(collect(2, parse_pattern("1|2|3")).empty());
  EXPECT_EQ(collect(11, seven()).size(), 35u);
  EXPECT_EQ(position_count(11, seven()), 35u);
  EXPECT_EQ(position_count(4, parse_pattern("1,2,3,4")), 1u);
  EXPECT_EQ(position_count(3, parse_pattern("1,2,3,4")), 0u);
  EXPECT_EQ(position_count(0, parse_pattern("1")), 0u);
}

TEST(Enumeration, OrderedByBlockStarts) {
  const auto sets = collect(9, parse_pattern("2|1,3|4"));
  EXPECT_TRUE(std::is_sorted(sets.begin(), sets.end()));
}

TEST(Enumeration, MatchesSubsetFilterExhaustive) {
  for (int k = 1; k <= 5; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
      std::vector<int> adj;
      for (int a = 1; a < k; ++a) {
        if (mask & (1u << (a - 1))) adj.push_back(a);
      }
      const auto p = VincularPattern::from_adjacencies(Permutation::identity(k), adj);
      for (int n = 0; n <= 12; ++n) {
        const auto got = collect(n, p);
        ASSERT_EQ(got, reference::naive_admissible(n, k, adj)) << "k=" << k << " n=" << n;
        ASSERT_EQ(got.size(), position_count(n, p));
      }
    }
  }
}

TEST(Enumeration, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(binomial(5, -1), 0u);
  EXPECT_EQ(binomial(66, 33), 7219428434016265740ULL);
  EXPECT_THROW(binomial(70, 35), Error);
}

TEST(ShiftBijection, WorkedExample) {
  const PositionSet set{{3, 4, 5, 8, 9, 10, 11}, 11};
  EXPECT_EQ(shift_bijection(set, seven()), (std::vector<int>{3, 6, 7}));
  EXPECT_EQ(unshift_bijection(std::vector<int>{3, 6, 7}, 11, seven()), set);
}

TEST(ShiftBijection, IdentityForClassicalPatterns) {
  const auto p = parse_pattern("2|3|1");
  for (const auto& s : enumerate_position_sets(8, p)) {
    ASSERT_EQ(shift_bijection(s, p), s.positions);
  }
}

TEST(ShiftBijection, BijectsOntoAllSubsets) {
  for (const char* text : {"1,2|3", "2|1,3|4", "1,3|2,4|5", "4,1|3,5|2,6"}) {
    const auto p = parse_pattern(text);
    const int k = p.size(), j = p.block_count();
    for (int n = k; n <= 15; ++n) {
      std::set<std::vector<int>> images;
      for (const auto& s : enumerate_position_sets(n, p)) {
        const auto img = shift_bijection(s, p);
        ASSERT_EQ(static_cast<int>(img.size()), j);
        ASSERT_TRUE(std::is_sorted(img.begin(), img.end()));
        ASSERT_GE(img.front(), 1);
        ASSERT_LE(img.back(), n - k + j);
        ASSERT_EQ(unshift_bijection(img, n, p), s);
        images.insert(img);
      }
      ASSERT_EQ(images.size(), binomial(n - k + j, j));
    }
  }
}

TEST(ShiftBijection, RejectsInadmissible) {
  EXPECT_THROW(shift_bijection(PositionSet{{3, 4, 6, 8, 9, 10, 11}, 11}, seven()), Error);
  EXPECT_FALSE(is_admissible(PositionSet{{3, 4, 6, 8, 9, 10, 11}, 11}, seven()));
  EXPECT_TRUE(is_admissible(PositionSet{{3, 4, 5, 8, 9, 10, 11}, 11}, seven()));
  EXPECT_FALSE(is_admissible(PositionSet{{3, 4, 5, 8, 9, 10, 12}, 11}, seven()));
}

TEST(OccursAt, WorkedExamples) {
  const auto sigma = parse_permutation("2,3,7,4,5,6,1");
  const Permutation pi({2, 3, 1});
  EXPECT_TRUE(occurs_at(sigma, pi, {{2, 5, 7}, 7}));
  EXPECT_TRUE(occurs_at(sigma, pi, {{2, 3, 7}, 7}));
  EXPECT_FALSE(occurs_at(sigma, pi, {{1, 2, 3}, 7}));
  const auto id = Permutation::identity(6);
  reference::for_each_subset(6, 2, [&](const std::vector<int>& s) {
    EXPECT_FALSE(occurs_at(id, Permutation({2, 1}), {s, 6}));
  });
  EXPECT_THROW(occurs_at(sigma, pi, {{1, 2}, 7}), Error);
}

TEST(CountOccurrences, WorkedExamples) {
  EXPECT_EQ(count_occurrences(parse_permutation("5,8,2,1,3,4,7,6"), parse_pattern("3|1,2")), 5u);
  EXPECT_EQ(count_occurrences(parse_permutation("3,2,1"), parse_pattern("2,1")), 2u);
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(count_occurrences(Permutation::identity(n), parse_pattern("1|2")), binomial(n, 2));
  }
}

TEST(CountOccurrences, MatchesSubsetOracle) {
  std::mt19937_64 gen(99);
  for (int k = 1; k <= 4; ++k) {
    for (const auto& shape : reference::all_patterns(k)) {
      const auto p = reference::make_pattern(shape);
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> sigma(9);
        std::iota(sigma.begin(), sigma.end(), 1);
        std::shuffle(sigma.begin(), sigma.end(), gen);
        ASSERT_EQ(count_occurrences(Permutation(sigma), p),
                  reference::naive_count(sigma, shape.pi, shape.adj));
      }
    }
  }
}

TEST(CountOccurrences, ClassicalCountsPartitionSubsets) {
  std::mt19937_64 gen(7);
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> sigma(10);
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), gen);
    const Permutation s(sigma);
    std::uint64_t total = 0;
    std::vector<int> pi(k);
    std::iota(pi.begin(), pi.end(), 1);
    do {
      total += count_occurrences(s, VincularPattern(Permutation(pi), std::vector<int>(k, 1)));
    } while (std::next_permutation(pi.begin(), pi.end()));
    EXPECT_EQ(total, binomial(10, k));
  }
}

TEST(CountOccurrences, TightPatternMatchesSlidingWindow) {
  std::mt19937_64 gen(3);
  const std::vector<int> pi{2, 4, 1, 3};
  const auto p = VincularPattern(Permutation(pi), {4});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sigma(40);
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), gen);
    std::uint64_t windows = 0;
    for (std::size_t s = 0; s + 4 <= sigma.size(); ++s) {
      const std::vector<int> w(sigma.begin() + s, sigma.begin() + s + 4);
      windows += reference::naive_ranks(w) == pi;
    }
    ASSERT_EQ(count_occurrences(Permutation(sigma), p), windows);
  }
}

TEST(CountOccurrences, BoundedByPositionCount) {
  const auto p = parse_pattern("1|2,3");
  for (int n = 0; n <= 10; ++n) {
    const auto id = Permutation::identity(n);
    EXPECT_EQ(count_occurrences(id, p), position_count(n, p));
  }
}
