#pragma once

#include <cstdint>
#include <vector>

#include "rriqa/image.hpp"

namespace rriqa {

// Normalized 1-D Gaussian taps of radius ceil(3 sigma); size 2r+1.
std::vector<double> gaussian_kernel(double sigma);

// Separable Gaussian blur with half-sample symmetric borders
// (x[-1] = x[0], x[-2] = x[1], ...). Throws InvalidSigma unless sigma > 0.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

// Adds i.i.d. N(0, sigma^2) noise from a mt19937_64 seeded with `seed`,
// then clips to [0, 255]. sigma == 0 returns the input unchanged.
GrayImage add_white_noise(const GrayImage& img, double sigma, std::uint64_t seed);

}  // namespace rriqa
