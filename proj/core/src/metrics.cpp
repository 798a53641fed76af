#include "rriqa/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "rriqa/error.hpp"
#include "rriqa/quadrature.hpp"
#include "rriqa/special.hpp"

namespace rriqa {

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::Q1: return "q1";
    case Measure::Q2: return "q2";
    case Measure::Q3: return "q3";
    case Measure::Q4: return "q4";
    case Measure::Q5: return "q5";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto m : {Measure::Q1, Measure::Q2, Measure::Q3, Measure::Q4, Measure::Q5}) {
    if (lower == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidParams, "unknown measure '" + std::string(name) + "'");
}

namespace {

void require_bands(std::span<const BandPair> bands) {
  if (bands.empty()) throw Error(ErrorCode::EmptyBands, "no bands to compare");
  for (const auto& b : bands) {
    validate(b.ref);
    validate(b.dist);
  }
}

void require_integrable(const BkfParams& p1, const BkfParams& p2) {
  validate(p1);
  validate(p2);
  const double a = std::min(p1.alpha, p2.alpha);
  if (a <= kL2AlphaLimit) {
    throw Error(ErrorCode::NonIntegrable, "L2 distance diverges for alpha = " + std::to_string(a));
  }
}

// Gamma(a - 1/2) / Gamma(a) for a > 1/2.
double xi(double a) { return std::exp(std::lgamma(a - 0.5) - std::lgamma(a)); }

}  // namespace

QualityScore q1(std::span<const BandPair> bands) {
  require_bands(bands);
  double s = 0.0;
  for (const auto& b : bands) s += std::abs(b.ref.alpha - b.dist.alpha);
  return {s, Measure::Q1};
}

QualityScore q2(std::span<const BandPair> bands) {
  require_bands(bands);
  double s = 0.0;
  for (const auto& b : bands) s += std::abs(b.ref.beta - b.dist.beta);
  return {s, Measure::Q2};
}

QualityScore q3(std::span<const BandPair> bands) {
  require_bands(bands);
  double s = 0.0;
  for (const auto& b : bands) {
    const double abs_dev = std::abs(b.ref.alpha - b.dist.alpha);
    s += std::sqrt(abs_dev * (abs_dev / b.ref.alpha));
  }
  return {s, Measure::Q3};
}

QualityScore q4(std::span<const BandPair> bands) {
  require_bands(bands);
  double s = 0.0;
  for (const auto& b : bands) {
    const double abs_dev = std::abs(b.ref.beta - b.dist.beta);
    s += std::sqrt(abs_dev * (abs_dev / b.ref.beta));
  }
  return {s, Measure::Q4};
}

QualityScore q5(std::span<const BandPair> bands, DistanceMethod method) {
  require_bands(bands);
  double s = 0.0;
  for (const auto& b : bands) {
    const double d = method == DistanceMethod::ClosedForm ? l2_distance_closed(b.ref, b.dist)
                                                          : l2_distance_quadrature(b.ref, b.dist);
    s += d * d;
  }
  return {std::sqrt(s), Measure::Q5};
}

QualityScore score(Measure m, std::span<const BandPair> bands) {
  switch (m) {
    case Measure::Q1: return q1(bands);
    case Measure::Q2: return q2(bands);
    case Measure::Q3: return q3(bands);
    case Measure::Q4: return q4(bands);
    case Measure::Q5: return q5(bands);
  }
  throw Error(ErrorCode::InvalidParams, "unknown measure");
}

double l2_distance_quadrature(const BkfParams& p1, const BkfParams& p2) {
  require_integrable(p1, p2);
  if (p1 == p2) return 0.0;
  const double amin = std::min(p1.alpha, p2.alpha);
  // (f1 - f2)^2 ~ |x|^(4 amin - 2) at the origin; x = s t^m leaves t^(m (4 amin - 1) - 1).
  const double power = std::max(2.0, 2.0 / (4.0 * amin - 1.0));
  const double scale = std::sqrt(std::max(p1.alpha * p1.beta, p2.alpha * p2.beta));
  const auto sq_diff = [&](double x) {
    const double d = pdf(x, p1) - pdf(x, p2);
    return d * d;
  };
  const auto r = integrate_half_line(sq_diff, scale, power, 1e-14, 1e-13);
  return std::sqrt(std::max(0.0, 2.0 * r.value));
}

double l2_distance_closed(const BkfParams& p1, const BkfParams& p2) {
  require_integrable(p1, p2);
  if (p1 == p2) return 0.0;
  const BkfParams& lo = p1.beta <= p2.beta ? p1 : p2;
  const BkfParams& hi = p1.beta <= p2.beta ? p2 : p1;

  const double w = 1.0 - lo.beta / hi.beta;
  double f = 0.0;
  try {
    f = hypergeometric_2f1(0.5, lo.alpha, lo.alpha + hi.alpha, w);
  } catch (const Error& e) {
    throw Error(ErrorCode::HypergeometricDivergence, e.detail());
  }
  const double self_lo = xi(2.0 * lo.alpha) / std::sqrt(lo.beta);
  const double self_hi = xi(2.0 * hi.alpha) / std::sqrt(hi.beta);
  const double cross = xi(lo.alpha + hi.alpha) / std::sqrt(hi.beta) * f;
  const double d2 = (self_lo + self_hi - 2.0 * cross) / std::sqrt(2.0 * std::numbers::pi);
  return std::sqrt(std::max(0.0, d2));
}

}  // namespace rriqa
