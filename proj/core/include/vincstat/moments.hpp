#pragma once

// Exact mean and variance of the occurrence count X(sigma_n) of a vincular
// pattern in a uniform permutation of size n.
//
// The variance is the sum of Cov(X_I, X_J) over ordered pairs of
// intersecting admissible sets (disjoint pairs are independent). The
// covariance of a pair depends only on how I and J interleave inside I u J,
// which is captured by OverlapClass; pairs are tallied per class and each
// class covariance is computed once from S_t. For n >= 2(k - j) the variance
// is a polynomial of degree 2j - 1 in n, recovered by exact interpolation.

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "vincstat/pattern.hpp"
#include "vincstat/rational.hpp"

namespace vincstat {

struct MomentLimits {
  int max_k = 5;        // largest pattern size for exact moments
  int max_overlap = 9;  // largest |I u J| enumerated over S_t
  int threads = 0;      // 0: std::thread::hardware_concurrency()

  // Honors VINCSTAT_MAX_K.
  static MomentLimits from_environment();

  // Pattern size 6, overlaps up to 11; slow.
  static MomentLimits unsafe();
};

int resolve_threads(int requested);

// Interleaving of two admissible sets inside their union {u_1 < ... < u_t}.
// Bit s-1 of i_mask (j_mask) is set when u_s belongs to I (J).
struct OverlapClass {
  int t = 0;
  std::uint32_t i_mask = 0;
  std::uint32_t j_mask = 0;

  static OverlapClass from_pair(std::span<const int> first,
                                std::span<const int> second);

  OverlapClass reversed() const noexcept { return {t, j_mask, i_mask}; }

  // Full cover of {1..t}, both masks of size k, nonempty intersection.
  bool valid_for(int k) const noexcept;

  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(t) << 48) |
           (static_cast<std::uint64_t>(i_mask) << 24) | j_mask;
  }

  friend bool operator==(const OverlapClass&, const OverlapClass&) = default;
  friend auto operator<=>(const OverlapClass&, const OverlapClass&) = default;
};

// E[X] = |I(n,k,A)| / k!.
Rational expectation(const VincularPattern& pattern, int n);

// P(X_I = X_J = 1) by exhaustive enumeration of S_t.
Rational joint_probability(const OverlapClass& cls, const Permutation& pi,
                           const MomentLimits& limits = {});

// joint_probability - 1/(k!)^2.
Rational covariance(const OverlapClass& cls, const Permutation& pi,
                    const MomentLimits& limits = {});

// Read-mostly memo of class covariances for one order permutation.
// Concurrent lookups share a lock; a miss computes outside the lock and the
// first insert wins (values are deterministic, so races are harmless).
class CovarianceCache {
 public:
  CovarianceCache(Permutation pi, MomentLimits limits)
      : pi_(std::move(pi)), limits_(limits) {}

  Rational get(const OverlapClass& cls);
  std::size_t size() const;
  const Permutation& order() const noexcept { return pi_; }

 private:
  Permutation pi_;
  MomentLimits limits_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, Rational> values_;
};

// Number of ordered intersecting pairs (I, J) in each overlap class.
std::map<OverlapClass, std::uint64_t> overlap_census(const VincularPattern& pattern,
                                                     int n, int threads = 0);

Rational exact_variance_at(const VincularPattern& pattern, int n,
                           const MomentLimits& limits = {},
                           CovarianceCache* cache = nullptr);

class VariancePolynomial {
 public:
  VariancePolynomial(std::vector<Rational> coefficients, int valid_from);

  // coefficients()[i] multiplies n^i.
  std::span<const Rational> coefficients() const noexcept { return coefficients_; }
  int valid_from() const noexcept { return valid_from_; }
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }

  Rational operator()(const Rational& n) const;
  Rational operator()(std::int64_t n) const { return (*this)(Rational(n)); }

 private:
  std::vector<Rational> coefficients_;  // trailing zeros trimmed
  int valid_from_;
};

// Interpolates through 2j consecutive nodes starting at max(2(k-j), k) and
// certifies the result against one further node. Throws
// DegreeCertificateFailed if the certificate disagrees and
// VarianceNotPositive if the degree is not 2j-1 with positive leading
// coefficient.
VariancePolynomial variance_polynomial(const VincularPattern& pattern,
                                       const MomentLimits& limits = {});

Rational leading_coefficient(const VariancePolynomial& poly);

// An n0 with poly(n) <= (leading + 1) * n^degree for every n >= n0, from the
// Cauchy root bound of the difference.
std::int64_t upper_bound_threshold(const VariancePolynomial& poly);

// E[A_m | U_{n-m}, ..., U_{n-i}] where A_m counts occurrences whose last
// block ends at position n - m, and u = (U_{n-m}, ..., U_{n-i}). Equals
// binom(n-m-k+j-1, j-1) times the probability that the free entries of one
// such occurrence land in the right gaps between the pinned values.
double conditional_block_expectation(const VincularPattern& pattern, int n,
                                     int m, int i, std::span<const double> u);

}  // namespace vincstat
