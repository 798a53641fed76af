#pragma once

#include <filesystem>
#include <string_view>

#include "rriqa/image.hpp"

namespace rriqa {

// Netpbm reader. Accepts P2/P5 graymaps and P3/P6 pixmaps (converted with
// Rec. 601 luma 0.299 R + 0.587 G + 0.114 B). Any maxval in 1..65535 is
// rescaled so that maxval maps to 255.
GrayImage load_image(const std::filesystem::path& path);
GrayImage parse_netpbm(std::string_view bytes);

// Writes an 8-bit binary P5 file. Samples are rounded and clipped to [0, 255].
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace rriqa
