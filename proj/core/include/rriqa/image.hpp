#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rriqa {

// Dense row-major 2-D array of doubles. Used for images, subbands and
// low-pass planes alike.
class Plane {
 public:
  Plane() = default;
  Plane(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Plane(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Luminance image with nominal sample range [0, 255]. Samples are kept
// real-valued through the whole pipeline.
class GrayImage {
 public:
  GrayImage() = default;
  // Throws EmptyImage for a zero dimension and InvalidParams when
  // samples.size() != width * height.
  GrayImage(std::size_t width, std::size_t height, std::vector<double> samples);
  explicit GrayImage(Plane plane);

  std::size_t width() const noexcept { return plane_.cols(); }
  std::size_t height() const noexcept { return plane_.rows(); }

  double at(std::size_t x, std::size_t y) const noexcept { return plane_(y, x); }
  std::span<const double> samples() const noexcept { return plane_.values(); }
  const Plane& plane() const noexcept { return plane_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  Plane plane_;
};

// Centered crop to the largest multiple of `m` in each dimension. Offsets
// are floor((dim mod m) / 2).
GrayImage crop_to_multiple(const GrayImage& img, std::size_t m);

}  // namespace rriqa
