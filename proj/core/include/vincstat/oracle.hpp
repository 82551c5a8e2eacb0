#pragma once

// Brute-force ground truth over all of S_n for small n.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vincstat/enumeration.hpp"
#include "vincstat/pattern.hpp"
#include "vincstat/rational.hpp"

namespace vincstat {

struct OracleLimits {
  int max_n = 9;
  int threads = 0;

  // Honors VINCSTAT_ORACLE_MAX_N.
  static OracleLimits from_environment();
};

// value -> probability of X = value for uniform sigma in S_n.
std::map<std::uint64_t, Rational> brute_force_distribution(
    const VincularPattern& pattern, int n,
    const OracleLimits& limits = OracleLimits::from_environment());

struct ExactMoments {
  Rational mean;
  Rational variance;
};

ExactMoments brute_force_moments(const VincularPattern& pattern, int n,
                                 const OracleLimits& limits = OracleLimits::from_environment());

// Law of total variance with the conditions J_1 = sigma(n),
// J_2 = sigma(n-1), ..., J_c = sigma(n-c+1):
//   Var(Y) = E[Var(Y | J_1..J_c)]
//            + sum_{i<c} E[Var(E[Y | J_1..J_{i+1}] | J_1..J_i)].
struct VarianceDecomposition {
  int n = 0;
  int conditions = 0;
  std::vector<Rational> explained;  // entry i: E[Var(E[Y|J_1..J_{i+1}] | J_1..J_i)]
  Rational residual;                // E[Var(Y | J_1..J_c)]
  Rational total;                   // residual + sum of explained
  Rational variance;                // Var(Y) computed directly
  bool matches = false;
  bool all_nonnegative = false;
};

// c = 0 is allowed and leaves only the residual term.
VarianceDecomposition total_variance_check(
    const VincularPattern& pattern, int n, int c,
    const OracleLimits& limits = OracleLimits::from_environment());

struct ConditionalTrial {
  std::vector<double> pinned;  // (U_{n-m}, ..., U_{n-i})
  double formula = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double deviation = 0.0;  // |estimate - formula| / standard_error
};

struct ConditionalFormulaReport {
  std::vector<ConditionalTrial> trials;
  double max_deviation = 0.0;
};

// For each trial draws pinned values, then averages A_m over `inner_draws`
// fresh draws of the remaining uniforms and compares the average to
// conditional_block_expectation.
ConditionalFormulaReport conditional_formula_check(const VincularPattern& pattern,
                                                   int n, int m, int i, int trials,
                                                   std::uint64_t seed,
                                                   int inner_draws = 100000);

// Same comparison for caller-chosen pinned values.
ConditionalTrial conditional_formula_trial(const VincularPattern& pattern, int n,
                                           int m, int i, std::span<const double> pinned,
                                           std::uint64_t seed, int inner_draws);

// Probability that every listed position set is an occurrence of pi when
// sigma = red(U_1..U_n), given U_p = value for each pinned (p, value).
// Exact: sums, over the orderings of the involved positions that respect
// the pinned values, the chance that the free uniforms fall into the
// required gaps in the required order.
Rational pinned_occurrence_probability(
    const Permutation& pi, std::span<const PositionSet> sets,
    const std::map<int, Rational>& pinned);

// Cov(X_I, X_J | U_p = value for the pinned positions).
Rational conditional_covariance(const Permutation& pi, const PositionSet& first,
                                const PositionSet& second,
                                const std::map<int, Rational>& pinned);

}  // namespace vincstat
