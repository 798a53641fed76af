#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rriqa {

inline constexpr double kAlphaMax = 1e3;
// Kurtosis must exceed 3 by this much before the shape formula is used.
inline constexpr double kKurtosisGuard = 3e-3;

// Bessel K Form density parameters: shape alpha, scale beta. The density
// has variance alpha * beta and kurtosis 3 + 3 / alpha.
struct BkfParams {
  double alpha = 1.0;
  double beta = 1.0;

  friend bool operator==(const BkfParams&, const BkfParams&) = default;
};

// Throws InvalidParams unless 0 < alpha <= kAlphaMax and 0 < beta < inf.
void validate(const BkfParams& p);

// Population moments: variance = m2, kurtosis = m4 / m2^2.
struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double kurtosis = 0.0;
};

SampleStats sample_stats(std::span<const double> x);

// alpha = 3 / (kurtosis - 3), beta = variance / alpha. Near-Gaussian
// samples (kurtosis <= 3 + kKurtosisGuard) get alpha = kAlphaMax.
BkfParams estimate(const SampleStats& stats);

// The BKF density
//   f(x) = |x/2|^(a - 1/2) K_{a-1/2}(sqrt(2/b) |x|) / (sqrt(pi) Gamma(a) (b/2)^(a/2 + 1/4)).
// At x == 0 the density is finite only for alpha > 1/2; for alpha <= 1/2
// this returns +inf, the limit value.
double pdf(double x, const BkfParams& p);
double log_pdf(double x, const BkfParams& p);

// P(X <= x) by quadrature of the density.
double cdf(double x, const BkfParams& p);

// Gamma scale mixture of Gaussians: sqrt(beta g) z with g ~ Gamma(alpha, 1)
// and z ~ N(0, 1), drawn from mt19937_64(seed).
std::vector<double> bkf_sample(const BkfParams& p, std::size_t n, std::uint64_t seed);

}  // namespace rriqa
