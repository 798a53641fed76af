#include "rriqa/bkf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "rriqa/error.hpp"
#include "rriqa/quadrature.hpp"
#include "rriqa/special.hpp"

namespace rriqa {

void validate(const BkfParams& p) {
  if (!(p.alpha > 0.0) || !(p.alpha <= kAlphaMax) || !(p.beta > 0.0) || !std::isfinite(p.beta)) {
    throw Error(ErrorCode::InvalidParams,
                "BKF parameters alpha=" + std::to_string(p.alpha) + " beta=" + std::to_string(p.beta));
  }
}

SampleStats sample_stats(std::span<const double> x) {
  if (x.size() < 4) {
    throw Error(ErrorCode::TooFewSamples, "need at least 4 samples, got " + std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw Error(ErrorCode::DegenerateSample, "all samples are equal");
  return SampleStats{x.size(), mean, m2, m4 / (m2 * m2)};
}

BkfParams estimate(const SampleStats& stats) {
  if (!(stats.variance > 0.0) || !std::isfinite(stats.variance)) {
    throw Error(ErrorCode::DegenerateSample, "variance must be positive");
  }
  double alpha = kAlphaMax;
  if (stats.kurtosis > 3.0 + kKurtosisGuard) alpha = std::min(3.0 / (stats.kurtosis - 3.0), kAlphaMax);
  return BkfParams{alpha, stats.variance / alpha};
}

double log_pdf(double x, const BkfParams& p) {
  validate(p);
  const double a = p.alpha, b = p.beta;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    if (a <= 0.5) return std::numeric_limits<double>::infinity();
    // K_nu(z) ~ Gamma(nu) / 2 (2/z)^nu as z -> 0.
    return std::lgamma(a - 0.5) - std::lgamma(a) - std::log(2.0 * std::sqrt(std::numbers::pi)) -
           0.5 * std::log(0.5 * b);
  }
  const double nu = a - 0.5;
  return -0.5 * std::log(std::numbers::pi) - std::lgamma(a) + (-0.5 * a - 0.25) * std::log(0.5 * b) +
         nu * std::log(0.5 * ax) + log_bessel_k(nu, std::sqrt(2.0 / b) * ax);
}

double pdf(double x, const BkfParams& p) { return std::exp(log_pdf(x, p)); }

double cdf(double x, const BkfParams& p) {
  validate(p);
  if (x == 0.0) return 0.5;
  // Mass of (0, |x|], with the same origin substitution used for L2 work.
  const double ax = std::abs(x);
  const double power = p.alpha < 0.75 ? std::max(2.0, 1.0 / p.alpha) : 1.0;
  const auto r = integrate([&](double t) { return pdf(ax * std::pow(t, power), p) * ax * power * std::pow(t, power - 1.0); },
                           0.0, 1.0, 1e-13, 1e-12);
  const double half = std::min(r.value, 0.5);
  return x > 0.0 ? 0.5 + half : 0.5 - half;
}

std::vector<double> bkf_sample(const BkfParams& p, std::size_t n, std::uint64_t seed) {
  validate(p);
  if (n == 0) throw Error(ErrorCode::InvalidParams, "sample count must be positive");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> mixing(p.alpha, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) {
    const double g = mixing(rng);
    v = std::sqrt(p.beta * g) * normal(rng);
  }
  return out;
}

}  // namespace rriqa
