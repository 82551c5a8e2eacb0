#include "vincstat/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"
#include "vincstat/enumeration.hpp"
#include "vincstat/sampling.hpp"

namespace vincstat {

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double empirical_kolmogorov(std::span<const double> xs) {
  if (xs.empty()) {
    throw Error(ErrorKind::EmptySample, "Kolmogorov distance of an empty sample");
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) / m - phi));
    sup = std::max(sup, std::abs(static_cast<double>(i) / m - phi));
  }
  return sup;
}

double kolmogorov_noise_floor(std::uint64_t m) noexcept {
  return std::sqrt(std::numbers::pi / 2.0) * std::numbers::ln2 /
         std::sqrt(static_cast<double>(m));
}

namespace {

std::array<double, 4> plug_in_cumulants(std::span<const double> xs) {
  const double m = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= m;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= m;
  m3 /= m;
  m4 /= m;
  return {mean, m2, m3, m4 - 3.0 * m2 * m2};
}

}  // namespace

CumulantEstimate sample_cumulants(std::span<const double> xs, int resamples,
                                  std::uint64_t seed, int threads) {
  if (xs.size() < 5) {
    throw Error(ErrorKind::TooFewSamples, "cumulant estimates need at least 5 values");
  }
  CumulantEstimate est;
  est.kappa = plug_in_cumulants(xs);
  if (resamples < 2) return est;

  std::vector<std::array<double, 4>> replicates(resamples);
  detail::parallel_chunks(
      static_cast<std::size_t>(resamples), resolve_threads(threads),
      [&](int, std::size_t begin, std::size_t end) {
        std::vector<double> draw(xs.size());
        for (std::size_t r = begin; r < end; ++r) {
          CounterRng rng(seed ^ 0xB005'7EA9'0000'0000ULL, r);
          for (auto& x : draw) x = xs[rng.bounded(xs.size())];
          replicates[r] = plug_in_cumulants(draw);
        }
      });
  for (int c = 0; c < 4; ++c) {
    double mean = 0.0;
    for (const auto& rep : replicates) mean += rep[c];
    mean /= resamples;
    double ss = 0.0;
    for (const auto& rep : replicates) ss += (rep[c] - mean) * (rep[c] - mean);
    est.standard_error[c] = std::sqrt(ss / (resamples - 1));
  }
  return est;
}

MonteCarloReport run_experiment(const VincularPattern& pattern, int n,
                                std::uint64_t samples, std::uint64_t seed,
                                const ExperimentOptions& options,
                                std::vector<double>* values) {
  const int k = pattern.size();
  if (k < 2) {
    throw Error(ErrorKind::PatternTooSmall,
                "the normal limit needs a pattern of size at least 2");
  }
  if (n < k) {
    throw Error(ErrorKind::InvalidArgument, "need n >= k");
  }
  if (samples < 100) {
    throw Error(ErrorKind::InvalidArgument, "need at least 100 samples");
  }

  std::vector<std::uint64_t> counts(samples);
  detail::parallel_chunks(samples, resolve_threads(options.threads),
                          [&](int, std::size_t begin, std::size_t end) {
                            std::vector<int> sigma(n);
                            for (std::size_t s = begin; s < end; ++s) {
                              CounterRng rng(seed, s);
                              shuffle_into(sigma, rng);
                              counts[s] = count_occurrences(sigma, pattern);
                            }
                          });

  MonteCarloReport report;
  report.pattern = format_pattern(pattern);
  report.n = n;
  report.samples = samples;
  report.seed = seed;

  if (k <= options.limits.max_k) {
    report.used_exact_moments = true;
    report.mean = to_double(expectation(pattern, n));
    const auto poly = variance_polynomial(pattern, options.limits);
    report.variance = to_double(n >= poly.valid_from()
                                    ? poly(n)
                                    : exact_variance_at(pattern, n, options.limits));
  } else {
    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= static_cast<double>(samples);
    double ss = 0.0;
    for (auto c : counts) ss += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    report.mean = mean;
    report.variance = ss / static_cast<double>(samples - 1);
  }
  if (!(report.variance > 0)) {
    throw Error(ErrorKind::DegenerateInput, "statistic has zero variance");
  }

  std::vector<double> standardized(samples);
  const double scale = std::sqrt(report.variance);
  for (std::size_t s = 0; s < samples; ++s) {
    standardized[s] = (static_cast<double>(counts[s]) - report.mean) / scale;
  }
  report.d_k = empirical_kolmogorov(standardized);
  report.cumulants = sample_cumulants(standardized, options.bootstrap_resamples,
                                      mix64(seed), options.threads);
  if (values) *values = std::move(standardized);
  return report;
}

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw Error(ErrorKind::DegenerateInput, "rate fit needs at least 3 points");
  }
  RateFit fit;
  fit.points.assign(points.begin(), points.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, d] : points) {
    if (!(n > 0) || !(d > 0)) {
      throw Error(ErrorKind::DegenerateInput, "rate fit needs positive n and d_K");
    }
    const double x = std::log(n), y = std::log(d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(points.size());
  const double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 1e-12 * std::max(1.0, m * sxx))) {
    throw Error(ErrorKind::DegenerateInput, "rate fit needs at least two distinct n");
  }
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0;
  for (const auto& [n, d] : points) {
    const double r = std::log(d) - (fit.intercept + fit.slope * std::log(n));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

}  // namespace vincstat
