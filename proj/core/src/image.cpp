#include "rriqa/image.hpp"

#include <string>

#include "rriqa/error.hpp"

namespace rriqa {

Plane::Plane(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::InvalidParams, "plane data length does not match shape");
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> samples) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::EmptyImage, "image has a zero dimension");
  }
  if (samples.size() != width * height) {
    throw Error(ErrorCode::InvalidParams,
                "expected " + std::to_string(width * height) + " samples, got " +
                    std::to_string(samples.size()));
  }
  plane_ = Plane(height, width, std::move(samples));
}

GrayImage::GrayImage(Plane plane) : plane_(std::move(plane)) {
  if (plane_.rows() == 0 || plane_.cols() == 0) {
    throw Error(ErrorCode::EmptyImage, "image has a zero dimension");
  }
}

GrayImage crop_to_multiple(const GrayImage& img, std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidParams, "crop multiple must be positive");
  }
  if (img.width() < m || img.height() < m) {
    throw Error(ErrorCode::ImageTooSmall,
                std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                    " is smaller than " + std::to_string(m));
  }
  const std::size_t w = img.width() / m * m;
  const std::size_t h = img.height() / m * m;
  if (w == img.width() && h == img.height()) return img;

  const std::size_t x0 = (img.width() % m) / 2;
  const std::size_t y0 = (img.height() % m) / 2;
  Plane out(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) out(y, x) = img.at(x0 + x, y0 + y);
  }
  return GrayImage(std::move(out));
}

}  // namespace rriqa
