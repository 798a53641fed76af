#include "rriqa/distort.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {
namespace {

// Maps any integer index onto [0, n) by half-sample symmetric reflection.
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t k = i % period;
  if (k < 0) k += period;
  return static_cast<std::size_t>(k < static_cast<std::ptrdiff_t>(n) ? k : period - 1 - k);
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidSigma, "sigma must be positive and finite, got " + std::to_string(sigma));
  }
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
    taps[static_cast<std::size_t>(k + radius)] = w;
    sum += w;
  }
  for (auto& w : taps) w /= sum;
  return taps;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  const auto taps = gaussian_kernel(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(taps.size() / 2);
  const std::size_t w = img.width();
  const std::size_t h = img.height();

  Plane tmp(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] *
               img.at(reflect(static_cast<std::ptrdiff_t>(x) + k, w), y);
      }
      tmp(y, x) = acc;
    }
  }
  Plane out(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += taps[static_cast<std::size_t>(k + radius)] *
               tmp(reflect(static_cast<std::ptrdiff_t>(y) + k, h), x);
      }
      out(y, x) = acc;
    }
  }
  return GrayImage(std::move(out));
}

GrayImage add_white_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidSigma, "noise sigma must be non-negative, got " + std::to_string(sigma));
  }
  if (sigma == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> out(img.samples().begin(), img.samples().end());
  for (auto& v : out) v = std::clamp(v + noise(rng), 0.0, 255.0);
  return GrayImage(img.width(), img.height(), std::move(out));
}

}  // namespace rriqa
