#pragma once

// Monte Carlo check of the normal limit for the standardized occurrence
// count (X - e_n) / sqrt(v_n): one-sample Kolmogorov distance to N(0, 1),
// plug-in cumulants with bootstrap errors, and a log-log rate fit.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vincstat/moments.hpp"
#include "vincstat/pattern.hpp"

namespace vincstat {

// Standard normal distribution function.
double normal_cdf(double x) noexcept;

// sup_t |F_m(t) - Phi(t)| for the empirical distribution of xs.
double empirical_kolmogorov(std::span<const double> xs);

// Mean of sqrt(m) sup |F_m - F| under the null, sqrt(pi/2) ln 2, over
// sqrt(m): the level below which d_K estimates are noise.
double kolmogorov_noise_floor(std::uint64_t m) noexcept;

struct CumulantEstimate {
  std::array<double, 4> kappa{};           // kappa_1..kappa_4
  std::array<double, 4> standard_error{};  // bootstrap
};

// kappa_1 = mean, kappa_2 = m_2, kappa_3 = m_3, kappa_4 = m_4 - 3 m_2^2 from
// central sample moments. Standard errors from `resamples` bootstrap
// replicates drawn from stream `seed`.
CumulantEstimate sample_cumulants(std::span<const double> xs, int resamples = 200,
                                  std::uint64_t seed = 0, int threads = 0);

struct MonteCarloReport {
  std::string pattern;
  int n = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double d_k = 0.0;
  CumulantEstimate cumulants;
  bool used_exact_moments = false;
  double mean = 0.0;       // e_n used for standardization
  double variance = 0.0;   // v_n used for standardization
};

struct ExperimentOptions {
  int threads = 0;
  MomentLimits limits = MomentLimits::from_environment();
  int bootstrap_resamples = 200;
};

// Draws `samples` uniform permutations (sample s from stream s of seed),
// counts occurrences, standardizes with exact e_n and v_n when the pattern
// is within the exact-moments limit (sample moments otherwise), and
// summarizes. Also returns the standardized values when `values` is given.
MonteCarloReport run_experiment(const VincularPattern& pattern, int n,
                                std::uint64_t samples, std::uint64_t seed,
                                const ExperimentOptions& options = {},
                                std::vector<double>* values = nullptr);

struct RateFit {
  std::vector<std::pair<double, double>> points;  // (n, d_K)
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square on the log scale
};

// Least squares of log d_K on log n.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

}  // namespace vincstat
