#include "vincstat/moments.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "parallel.hpp"
#include "vincstat/enumeration.hpp"

namespace vincstat {

MomentLimits MomentLimits::from_environment() {
  MomentLimits limits;
  if (const char* env = std::getenv("VINCSTAT_MAX_K")) {
    try {
      const int k = std::stoi(env);
      if (k >= 1) {
        limits.max_k = k;
        limits.max_overlap = std::max(limits.max_overlap, 2 * k - 1);
      }
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument,
                  "VINCSTAT_MAX_K is not an integer: '" + std::string(env) + "'");
    }
  }
  return limits;
}

MomentLimits MomentLimits::unsafe() {
  MomentLimits limits;
  limits.max_k = 6;
  limits.max_overlap = 11;
  return limits;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

OverlapClass OverlapClass::from_pair(std::span<const int> first,
                                     std::span<const int> second) {
  OverlapClass cls;
  std::size_t a = 0;
  std::size_t b = 0;
  int s = 0;
  while (a < first.size() || b < second.size()) {
    const std::uint32_t bit = 1u << s;
    if (b == second.size() || (a < first.size() && first[a] < second[b])) {
      cls.i_mask |= bit;
      ++a;
    } else if (a == first.size() || second[b] < first[a]) {
      cls.j_mask |= bit;
      ++b;
    } else {
      cls.i_mask |= bit;
      cls.j_mask |= bit;
      ++a;
      ++b;
    }
    ++s;
  }
  cls.t = s;
  return cls;
}

bool OverlapClass::valid_for(int k) const noexcept {
  if (t < k || t > 2 * k - 1 || t > 24) return false;
  const std::uint32_t full = t == 32 ? ~0u : ((1u << t) - 1);
  return (i_mask | j_mask) == full && std::popcount(i_mask) == k &&
         std::popcount(j_mask) == k && (i_mask & j_mask) != 0;
}

Rational expectation(const VincularPattern& pattern, int n) {
  return Rational(BigInt(position_count(n, pattern)), factorial(pattern.size()));
}

namespace {

std::vector<int> mask_positions(std::uint32_t mask) {
  std::vector<int> out;
  for (int s = 0; mask; ++s, mask >>= 1) {
    if (mask & 1u) out.push_back(s);
  }
  return out;
}

}  // namespace

Rational joint_probability(const OverlapClass& cls, const Permutation& pi,
                           const MomentLimits& limits) {
  const int k = static_cast<int>(pi.size());
  if (!cls.valid_for(k)) {
    throw Error(ErrorKind::InvalidArgument,
                "overlap class is not an intersecting pair for size " +
                    std::to_string(k));
  }
  if (cls.t > limits.max_overlap) {
    throw Error(ErrorKind::SizeLimitExceeded,
                "overlap of size " + std::to_string(cls.t) +
                    " exceeds the enumeration limit " +
                    std::to_string(limits.max_overlap));
  }
  const auto inv = pi.inverse();
  const auto ipos = mask_positions(cls.i_mask);
  const auto jpos = mask_positions(cls.j_mask);
  // Positions of I (resp. J) listed by increasing pattern value.
  std::vector<int> ichain(k), jchain(k);
  for (int r = 0; r < k; ++r) {
    ichain[r] = ipos[inv[r]];
    jchain[r] = jpos[inv[r]];
  }
  auto increasing = [](const std::vector<int>& tau, const std::vector<int>& chain) {
    for (std::size_t r = 1; r < chain.size(); ++r) {
      if (tau[chain[r - 1]] > tau[chain[r]]) return false;
    }
    return true;
  };
  std::vector<int> tau(cls.t);
  std::iota(tau.begin(), tau.end(), 1);
  std::uint64_t hits = 0;
  do {
    hits += increasing(tau, ichain) && increasing(tau, jchain);
  } while (std::next_permutation(tau.begin(), tau.end()));
  return Rational(BigInt(hits), factorial(cls.t));
}

Rational covariance(const OverlapClass& cls, const Permutation& pi,
                    const MomentLimits& limits) {
  const BigInt kf = factorial(static_cast<int>(pi.size()));
  return joint_probability(cls, pi, limits) - Rational(BigInt(1), kf * kf);
}

Rational CovarianceCache::get(const OverlapClass& cls) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = values_.find(cls.key()); it != values_.end()) return it->second;
  }
  Rational value = covariance(cls, pi_, limits_);
  std::unique_lock lock(mutex_);
  return values_.emplace(cls.key(), std::move(value)).first->second;
}

std::size_t CovarianceCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

std::map<OverlapClass, std::uint64_t> overlap_census(const VincularPattern& pattern,
                                                     int n, int threads) {
  const int k = pattern.size();
  std::vector<int> flat;
  for (const auto& set : enumerate_position_sets(n, pattern)) {
    flat.insert(flat.end(), set.positions.begin(), set.positions.end());
  }
  const std::size_t count = flat.size() / std::max(k, 1);
  const int workers = resolve_threads(threads);
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(workers);

  detail::parallel_chunks(count, workers, [&](int w, std::size_t begin, std::size_t end) {
    auto& tally = partial[w];
    for (std::size_t a = begin; a < end; ++a) {
      const std::span<const int> first(flat.data() + a * k, k);
      for (std::size_t b = 0; b < count; ++b) {
        const std::span<const int> second(flat.data() + b * k, k);
        // Sets are ordered by their first position.
        if (second.front() > first.back()) break;
        if (second.back() < first.front()) continue;
        // Skip disjoint pairs before building the class.
        std::size_t x = 0, y = 0;
        bool meet = false;
        while (x < first.size() && y < second.size()) {
          if (first[x] == second[y]) {
            meet = true;
            break;
          }
          first[x] < second[y] ? ++x : ++y;
        }
        if (!meet) continue;
        ++tally[OverlapClass::from_pair(first, second).key()];
      }
    }
  });

  std::map<OverlapClass, std::uint64_t> census;
  for (const auto& tally : partial) {
    for (const auto& [key, c] : tally) {
      OverlapClass cls{static_cast<int>(key >> 48),
                       static_cast<std::uint32_t>((key >> 24) & 0xFFFFFF),
                       static_cast<std::uint32_t>(key & 0xFFFFFF)};
      census[cls] += c;
    }
  }
  return census;
}

Rational exact_variance_at(const VincularPattern& pattern, int n,
                           const MomentLimits& limits, CovarianceCache* cache) {
  if (pattern.size() > limits.max_k) {
    throw Error(ErrorKind::SizeLimitExceeded,
                "pattern size " + std::to_string(pattern.size()) +
                    " exceeds the exact-moments limit " +
                    std::to_string(limits.max_k));
  }
  std::optional<CovarianceCache> local;
  if (!cache) cache = &local.emplace(pattern.order(), limits);

  const auto census = overlap_census(pattern, n, limits.threads);
  std::vector<std::pair<OverlapClass, std::uint64_t>> entries(census.begin(),
                                                              census.end());
  std::vector<Rational> cov(entries.size());
  detail::parallel_chunks(entries.size(), resolve_threads(limits.threads),
                          [&](int, std::size_t begin, std::size_t end) {
                            for (std::size_t e = begin; e < end; ++e) {
                              cov[e] = cache->get(entries[e].first);
                            }
                          });
  // Fixed (sorted-class) order keeps the reduction independent of threads.
  Rational total = 0;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    total += cov[e] * BigInt(entries[e].second);
  }
  return total;
}

VariancePolynomial::VariancePolynomial(std::vector<Rational> coefficients,
                                       int valid_from)
    : coefficients_(std::move(coefficients)), valid_from_(valid_from) {
  while (!coefficients_.empty() && coefficients_.back() == 0) {
    coefficients_.pop_back();
  }
}

Rational VariancePolynomial::operator()(const Rational& n) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * n + *it;
  }
  return acc;
}

namespace {

// Coefficients (ascending) of the interpolating polynomial through
// (x_i, y_i), expanded from the Lagrange basis.
std::vector<Rational> lagrange_coefficients(const std::vector<std::int64_t>& xs,
                                            const std::vector<Rational>& ys) {
  const std::size_t count = xs.size();
  std::vector<Rational> result(count, Rational(0));
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t m = 0; m < count; ++m) {
      if (m == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * xs[m];
      }
      basis = std::move(next);
      denom *= Rational(xs[i] - xs[m]);
    }
    const Rational scale = ys[i] / denom;
    for (std::size_t d = 0; d < basis.size(); ++d) result[d] += basis[d] * scale;
  }
  return result;
}

}  // namespace

VariancePolynomial variance_polynomial(const VincularPattern& pattern,
                                       const MomentLimits& limits) {
  const int k = pattern.size();
  const int j = pattern.block_count();
  if (k < 2) {
    throw Error(ErrorKind::PatternTooSmall,
                "variance polynomial needs a pattern of size at least 2");
  }
  if (k > limits.max_k) {
    throw Error(ErrorKind::SizeLimitExceeded,
                "pattern size " + std::to_string(k) +
                    " exceeds the exact-moments limit " +
                    std::to_string(limits.max_k));
  }
  CovarianceCache cache(pattern.order(), limits);
  const int valid_from = 2 * (k - j);
  const int base = std::max(valid_from, k);
  std::vector<std::int64_t> xs;
  std::vector<Rational> ys;
  for (int node = base; node < base + 2 * j; ++node) {
    xs.push_back(node);
    ys.push_back(exact_variance_at(pattern, node, limits, &cache));
  }
  VariancePolynomial poly(lagrange_coefficients(xs, ys), valid_from);

  const int check = base + 2 * j;
  if (poly(check) != exact_variance_at(pattern, check, limits, &cache)) {
    throw Error(ErrorKind::DegreeCertificateFailed,
                "interpolated variance disagrees with the direct sum at n = " +
                    std::to_string(check));
  }
  if (poly.degree() != 2 * j - 1 || poly.coefficients().back() <= 0) {
    throw Error(ErrorKind::VarianceNotPositive,
                "variance polynomial of " + format_pattern(pattern) +
                    " does not have degree 2j-1 with positive leading coefficient");
  }
  return poly;
}

Rational leading_coefficient(const VariancePolynomial& poly) {
  if (poly.coefficients().empty()) return 0;
  return poly.coefficients().back();
}

std::int64_t upper_bound_threshold(const VariancePolynomial& poly) {
  // (lead + 1) n^d - p(n) is monic of degree d in n; every real root is
  // below 1 + max |c_i| over its lower coefficients, which are -c_i of p.
  Rational bound = 0;
  const auto coeffs = poly.coefficients();
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
    bound = std::max(bound, Rational(abs(coeffs[i])));
  }
  bound += 1;
  BigInt ceiling = boost::multiprecision::numerator(bound) /
                   boost::multiprecision::denominator(bound);
  if (ceiling * boost::multiprecision::denominator(bound) !=
      boost::multiprecision::numerator(bound)) {
    ceiling += 1;
  }
  return std::max<std::int64_t>(ceiling.convert_to<std::int64_t>(),
                                std::max(poly.valid_from(), 1));
}

double conditional_block_expectation(const VincularPattern& pattern, int n,
                                     int m, int i, std::span<const double> u) {
  const int k = pattern.size();
  const int j = pattern.block_count();
  const int bj = pattern.last_block_size();
  if (m < 0 || m > i || i > bj - 1) {
    throw Error(ErrorKind::BadWindow, "need 0 <= m <= i <= b_j - 1");
  }
  const int len = i - m + 1;
  if (static_cast<int>(u.size()) != len) {
    throw Error(ErrorKind::BadWindow,
                "expected " + std::to_string(len) + " pinned values");
  }
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (!(u[a] >= 0.0 && u[a] <= 1.0)) {
      throw Error(ErrorKind::BadWindow, "pinned values must lie in [0, 1]");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (u[a] == u[b]) throw Error(ErrorKind::BadWindow, "pinned values must be distinct");
    }
  }
  // Position order: U_{n-i}, ..., U_{n-m} against pi_{k-len+1}, ..., pi_k.
  std::vector<double> values(u.rbegin(), u.rend());
  const auto order = pattern.order().values();
  std::vector<int> tail(order.end() - len, order.end());
  for (int a = 0; a < len; ++a) {
    for (int b = a + 1; b < len; ++b) {
      if ((values[a] < values[b]) != (tail[a] < tail[b])) return 0.0;
    }
  }
  std::sort(values.begin(), values.end());
  std::sort(tail.begin(), tail.end());

  double product = 1.0;
  double lower = 0.0;
  int below = 0;
  for (int r = 0; r <= len; ++r) {
    const double upper = r < len ? values[r] : 1.0;
    const int rank = r < len ? tail[r] : k + 1;
    const int free_entries = rank - below - 1;
    product *= std::pow(upper - lower, free_entries) / std::tgamma(free_entries + 1.0);
    lower = upper;
    below = rank;
  }
  const std::int64_t top = static_cast<std::int64_t>(n) - m - k + j - 1;
  const double ways = top < 0 ? 0.0 : static_cast<double>(binomial(top, j - 1));
  return ways * product;
}

}  // namespace vincstat
