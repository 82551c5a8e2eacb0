#include "vincstat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "vincstat/moments.hpp"
#include "vincstat/sampling.hpp"

namespace vincstat {

OracleLimits OracleLimits::from_environment() {
  OracleLimits limits;
  if (const char* env = std::getenv("VINCSTAT_ORACLE_MAX_N")) {
    try {
      limits.max_n = std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument,
                  "VINCSTAT_ORACLE_MAX_N is not an integer: '" + std::string(env) + "'");
    }
  }
  return limits;
}

namespace {

void check_oracle_size(int n, const OracleLimits& limits) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  if (n > limits.max_n) {
    throw Error(ErrorKind::SizeLimitExceeded,
                "oracle enumerates n! permutations; n = " + std::to_string(n) +
                    " exceeds the limit " + std::to_string(limits.max_n));
  }
}

// Visits every sigma in S_n. Work is split by the first entry; worker w
// handles a contiguous range of first entries.
template <typename Body>
void for_each_permutation(int n, int threads, Body&& body) {
  if (n == 0) {
    body(0, std::span<const int>());
    return;
  }
  detail::parallel_chunks(static_cast<std::size_t>(n), resolve_threads(threads),
                          [&](int w, std::size_t begin, std::size_t end) {
                            std::vector<int> sigma(n);
                            for (std::size_t first = begin; first < end; ++first) {
                              sigma[0] = static_cast<int>(first) + 1;
                              int fill = 1;
                              for (int v = 1; v <= n; ++v) {
                                if (v != sigma[0]) sigma[fill++] = v;
                              }
                              do {
                                body(w, std::span<const int>(sigma));
                              } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
                            }
                          });
}

// Per-group sums of Y and Y^2.
struct GroupSums {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;

  void add(std::uint64_t y) {
    ++count;
    sum += y;
    sum_sq += y * y;
  }
  void merge(const GroupSums& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  // count * (group mean)^2
  Rational weighted_mean_sq() const {
    return Rational(BigInt(sum) * BigInt(sum), BigInt(count));
  }
};

}  // namespace

std::map<std::uint64_t, Rational> brute_force_distribution(const VincularPattern& pattern,
                                                           int n,
                                                           const OracleLimits& limits) {
  check_oracle_size(n, limits);
  const int workers = resolve_threads(limits.threads);
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(workers);
  for_each_permutation(n, limits.threads, [&](int w, std::span<const int> sigma) {
    ++partial[w][count_occurrences(sigma, pattern)];
  });
  std::map<std::uint64_t, std::uint64_t> tally;
  for (const auto& p : partial) {
    for (const auto& [value, c] : p) tally[value] += c;
  }
  const BigInt total = factorial(n);
  std::map<std::uint64_t, Rational> dist;
  for (const auto& [value, c] : tally) dist[value] = Rational(BigInt(c), total);
  return dist;
}

ExactMoments brute_force_moments(const VincularPattern& pattern, int n,
                                 const OracleLimits& limits) {
  const auto dist = brute_force_distribution(pattern, n, limits);
  ExactMoments out{0, 0};
  Rational second = 0;
  for (const auto& [value, p] : dist) {
    out.mean += p * BigInt(value);
    second += p * BigInt(value) * BigInt(value);
  }
  out.variance = second - out.mean * out.mean;
  return out;
}

VarianceDecomposition total_variance_check(const VincularPattern& pattern, int n, int c,
                                           const OracleLimits& limits) {
  check_oracle_size(n, limits);
  if (c < 0 || c > n) {
    throw Error(ErrorKind::InvalidArgument, "need 0 <= c <= n conditions");
  }
  const int workers = resolve_threads(limits.threads);
  // levels[w][i]: groups keyed by (sigma(n), ..., sigma(n-i+1)).
  std::vector<std::vector<std::map<std::uint64_t, GroupSums>>> partial(
      workers, std::vector<std::map<std::uint64_t, GroupSums>>(c + 1));
  for_each_permutation(n, limits.threads, [&](int w, std::span<const int> sigma) {
    const std::uint64_t y = count_occurrences(sigma, pattern);
    std::uint64_t key = 0;
    partial[w][0][0].add(y);
    for (int i = 1; i <= c; ++i) {
      key = key * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(sigma[n - i]);
      partial[w][i][key].add(y);
    }
  });
  std::vector<std::map<std::uint64_t, GroupSums>> levels(c + 1);
  for (const auto& worker : partial) {
    for (int i = 0; i <= c; ++i) {
      for (const auto& [key, g] : worker[i]) levels[i][key].merge(g);
    }
  }

  const Rational total_count(factorial(n));
  std::vector<Rational> level_energy(c + 1);
  for (int i = 0; i <= c; ++i) {
    Rational e = 0;
    for (const auto& [key, g] : levels[i]) e += g.weighted_mean_sq();
    level_energy[i] = e / total_count;
  }

  VarianceDecomposition out;
  out.n = n;
  out.conditions = c;
  const GroupSums& all = levels[0].begin()->second;
  const Rational mean(BigInt(all.sum), BigInt(all.count));
  out.variance = Rational(BigInt(all.sum_sq), BigInt(all.count)) - mean * mean;
  for (int i = 0; i < c; ++i) out.explained.push_back(level_energy[i + 1] - level_energy[i]);
  out.residual = Rational(BigInt(all.sum_sq), BigInt(all.count)) - level_energy[c];
  out.total = out.residual;
  for (const auto& term : out.explained) out.total += term;
  out.matches = out.total == out.variance;
  out.all_nonnegative = out.residual >= 0 &&
                        std::all_of(out.explained.begin(), out.explained.end(),
                                    [](const Rational& r) { return r >= 0; });
  return out;
}

namespace {

void check_window(const VincularPattern& pattern, int n, int m, int i) {
  if (m < 0 || m > i || i > pattern.last_block_size() - 1) {
    throw Error(ErrorKind::BadWindow, "need 0 <= m <= i <= b_j - 1");
  }
  if (n - m < pattern.size()) {
    throw Error(ErrorKind::BadWindow, "host too small for the window");
  }
}

}  // namespace

ConditionalTrial conditional_formula_trial(const VincularPattern& pattern, int n,
                                           int m, int i, std::span<const double> pinned,
                                           std::uint64_t seed, int inner_draws) {
  check_window(pattern, n, m, i);
  if (inner_draws < 2) {
    throw Error(ErrorKind::InvalidArgument, "need at least 2 inner draws");
  }
  ConditionalTrial trial;
  trial.pinned.assign(pinned.begin(), pinned.end());
  trial.formula = conditional_block_expectation(pattern, n, m, i, pinned);

  // Occurrence windows whose last block ends at n - m.
  std::vector<std::vector<int>> windows;
  for (const auto& set : enumerate_position_sets(n - m, pattern)) {
    if (set.positions.back() == n - m) windows.push_back(set.positions);
  }
  const auto inv = pattern.order().inverse();
  CounterRng rng(seed, 0);
  std::vector<double> u(n + 1);
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < inner_draws; ++d) {
    for (int p = 1; p <= n; ++p) u[p] = rng.uniform01();
    for (std::size_t q = 0; q < pinned.size(); ++q) u[n - m - q] = pinned[q];
    int hits = 0;
    for (const auto& w : windows) {
      bool ok = true;
      for (std::size_t r = 1; r < inv.size() && ok; ++r) {
        ok = u[w[inv[r - 1]]] < u[w[inv[r]]];
      }
      hits += ok;
    }
    sum += hits;
    sum_sq += static_cast<double>(hits) * hits;
  }
  const double draws = inner_draws;
  trial.estimate = sum / draws;
  const double var = std::max(0.0, (sum_sq - sum * sum / draws) / (draws - 1));
  trial.standard_error = std::sqrt(var / draws);
  const double gap = std::abs(trial.estimate - trial.formula);
  if (trial.standard_error > 0) {
    trial.deviation = gap / trial.standard_error;
  } else {
    trial.deviation = gap < 1e-12 ? 0.0 : INFINITY;
  }
  return trial;
}

ConditionalFormulaReport conditional_formula_check(const VincularPattern& pattern,
                                                   int n, int m, int i, int trials,
                                                   std::uint64_t seed, int inner_draws) {
  check_window(pattern, n, m, i);
  ConditionalFormulaReport report;
  CounterRng pins(seed, 0xC0FFEE);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> pinned(i - m + 1);
    for (auto& x : pinned) x = pins.uniform01();
    auto trial = conditional_formula_trial(pattern, n, m, i, pinned,
                                           mix64(seed + 1 + static_cast<std::uint64_t>(t)),
                                           inner_draws);
    report.max_deviation = std::max(report.max_deviation, trial.deviation);
    report.trials.push_back(std::move(trial));
  }
  return report;
}

Rational pinned_occurrence_probability(const Permutation& pi,
                                       std::span<const PositionSet> sets,
                                       const std::map<int, Rational>& pinned) {
  std::vector<int> positions;
  for (const auto& s : sets) {
    if (s.positions.size() != pi.size()) {
      throw Error(ErrorKind::SizeMismatch, "position set size differs from pattern size");
    }
    positions.insert(positions.end(), s.positions.begin(), s.positions.end());
  }
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  const int t = static_cast<int>(positions.size());
  if (t > 10) {
    throw Error(ErrorKind::SizeLimitExceeded, "too many positions to enumerate");
  }
  auto slot = [&](int p) {
    return static_cast<int>(std::lower_bound(positions.begin(), positions.end(), p) -
                            positions.begin());
  };
  // Pinned slots sorted by value, and the gap lengths between them.
  std::vector<std::pair<Rational, int>> fixed;
  for (const auto& [p, value] : pinned) {
    if (std::binary_search(positions.begin(), positions.end(), p)) {
      if (value < 0 || value > 1) {
        throw Error(ErrorKind::InvalidArgument, "pinned value outside [0, 1]");
      }
      fixed.emplace_back(value, slot(p));
    }
  }
  std::sort(fixed.begin(), fixed.end());
  for (std::size_t a = 1; a < fixed.size(); ++a) {
    if (fixed[a].first == fixed[a - 1].first) {
      throw Error(ErrorKind::DuplicateEntry, "pinned values must be distinct");
    }
  }
  std::vector<Rational> gap_length;
  Rational lower = 0;
  for (const auto& [value, s] : fixed) {
    gap_length.push_back(value - lower);
    lower = value;
  }
  gap_length.push_back(1 - lower);
  std::vector<char> is_fixed(t, 0);
  for (const auto& [value, s] : fixed) is_fixed[s] = 1;

  const auto inv = pi.inverse();
  std::vector<std::vector<int>> chains;
  for (const auto& s : sets) {
    std::vector<int> chain(pi.size());
    for (std::size_t r = 0; r < pi.size(); ++r) chain[r] = slot(s.positions[inv[r]]);
    chains.push_back(std::move(chain));
  }

  // order[r] = slot holding the r-th smallest value.
  std::vector<int> order(t);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> rank(t);
  Rational total = 0;
  do {
    for (int r = 0; r < t; ++r) rank[order[r]] = r;
    bool ok = true;
    for (std::size_t a = 1; a < fixed.size() && ok; ++a) {
      ok = rank[fixed[a - 1].second] < rank[fixed[a].second];
    }
    for (const auto& chain : chains) {
      for (std::size_t r = 1; r < chain.size() && ok; ++r) {
        ok = rank[chain[r - 1]] < rank[chain[r]];
      }
    }
    if (!ok) continue;
    Rational prob = 1;
    int gap = 0;
    int in_gap = 0;
    for (int r = 0; r < t; ++r) {
      if (is_fixed[order[r]]) {
        prob *= pow(gap_length[gap], in_gap) / Rational(factorial(in_gap));
        ++gap;
        in_gap = 0;
      } else {
        ++in_gap;
      }
    }
    prob *= pow(gap_length[gap], in_gap) / Rational(factorial(in_gap));
    total += prob;
  } while (std::next_permutation(order.begin(), order.end()));
  return total;
}

Rational conditional_covariance(const Permutation& pi, const PositionSet& first,
                                const PositionSet& second,
                                const std::map<int, Rational>& pinned) {
  const std::vector<PositionSet> both{first, second};
  return pinned_occurrence_probability(pi, both, pinned) -
         pinned_occurrence_probability(pi, std::span(both.data(), 1), pinned) *
             pinned_occurrence_probability(pi, std::span(both.data() + 1, 1), pinned);
}

}  // namespace vincstat
