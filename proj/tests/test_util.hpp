#pragma once

#include <cstdint>
#include <filesystem>
#include <algorithm>
#include <cmath>
#include <random>
#include <unistd.h>
#include <string>

#include "rriqa/image.hpp"

namespace rriqa::test {

inline Plane random_plane(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Plane p(rows, cols);
  for (auto& v : p.values()) v = u(rng);
  return p;
}

inline GrayImage random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  return GrayImage(random_plane(h, w, seed));
}

// Smooth blobs and edges plus mild texture; subbands are heavy tailed like
// those of natural images.
inline GrayImage scene_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Plane p(h, w, 0.0);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) p(y, x) = 60.0 + 80.0 * static_cast<double>(x + y) / static_cast<double>(w + h);
  }
  for (int k = 0; k < 12; ++k) {
    const double cx = u(rng) * w, cy = u(rng) * h, rad = 4.0 + u(rng) * w / 5.0, level = 40.0 + 170.0 * u(rng);
    const bool disk = u(rng) < 0.5;
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        const double dx = x - cx, dy = y - cy;
        const bool inside = disk ? dx * dx + dy * dy < rad * rad : std::abs(dx) < rad && std::abs(dy) < 0.6 * rad;
        if (inside) p(y, x) = level;
      }
    }
  }
  std::normal_distribution<double> n(0.0, 2.0);
  for (auto& v : p.values()) v = std::clamp(v + n(rng), 0.0, 255.0);
  return GrayImage(std::move(p));
}

inline std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rriqa_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace rriqa::test
