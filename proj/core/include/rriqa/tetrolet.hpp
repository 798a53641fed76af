#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rriqa/image.hpp"

namespace rriqa {

struct Cell {
  std::uint8_t row = 0;
  std::uint8_t col = 0;

  constexpr std::uint8_t flat() const noexcept { return static_cast<std::uint8_t>(row * 4 + col); }
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

// Four edge-connected cells of a 4x4 board, sorted by (row, col). The sorted
// position of a cell is its slot in the 4-point Haar analysis vector.
class Tetromino {
 public:
  // Throws InvalidParams unless the cells are distinct, in range and connected.
  explicit Tetromino(std::array<Cell, 4> cells);

  const std::array<Cell, 4>& cells() const noexcept { return cells_; }
  friend bool operator==(const Tetromino&, const Tetromino&) = default;

 private:
  std::array<Cell, 4> cells_;
};

struct Tiling {
  std::array<Tetromino, 4> tetrominoes;
  int index = 0;

  // labels()[r * 4 + c] is the position (0..3) of the tetromino covering (r, c).
  std::array<std::uint8_t, 16> labels() const noexcept;
};

inline constexpr int kTilingCount = 117;

class TilingCatalog {
 public:
  explicit TilingCatalog(std::vector<Tiling> tilings);

  std::size_t size() const noexcept { return tilings_.size(); }
  const Tiling& operator[](std::size_t i) const noexcept { return tilings_[i]; }
  std::span<const Tiling> tilings() const noexcept { return tilings_; }

  // Classes of tilings equivalent under the 8 symmetries of the square.
  std::size_t symmetry_class_count() const;
  // Distinct tetromino shapes up to rotation and reflection.
  std::size_t free_tetromino_count() const;

  // For each tiling, which of the distinct placed tetrominoes it uses.
  const std::vector<Tetromino>& placements() const noexcept { return placements_; }
  const std::array<std::uint16_t, 4>& placement_ids(std::size_t tiling) const noexcept {
    return placement_ids_[tiling];
  }

 private:
  std::vector<Tiling> tilings_;
  std::vector<Tetromino> placements_;
  std::vector<std::array<std::uint16_t, 4>> placement_ids_;
};

// Exhaustive backtracking over tetromino placements: the lowest uncovered
// cell (row-major) is filled by every placement whose first cell it is.
// The square tiling is moved to index 0; other tilings keep search order.
TilingCatalog enumerate_tilings();

// Process-wide catalog, built once on first use.
const TilingCatalog& tiling_catalog();

struct HaarCoefficients {
  double lowpass = 0.0;
  std::array<double, 3> details{};
};

// Orthonormal 4-point transform with rows
//   1/2 (1, 1, 1, 1), 1/2 (1, 1,-1,-1), 1/2 (1,-1, 1,-1), 1/2 (1,-1,-1, 1).
HaarCoefficients haar_tetromino(const std::array<double, 4>& values) noexcept;
std::array<double, 4> inverse_haar_tetromino(const HaarCoefficients& c) noexcept;

using Block4x4 = std::array<double, 16>;  // row-major

struct BlockAnalysis {
  int tiling_index = 0;
  std::array<double, 4> lowpass{};
  // details[3 * s + (l - 1)] is detail l of tetromino s.
  std::array<double, 12> details{};
  double cost = 0.0;  // l1 norm of the 12 details
};

// Selects the tiling with the smallest l1 detail norm; ties go to the
// smallest catalog index.
BlockAnalysis analyze_block(const Block4x4& block, const TilingCatalog& catalog);
BlockAnalysis analyze_block_with_tiling(const Block4x4& block, const Tiling& tiling);
Block4x4 synthesize_block(const BlockAnalysis& coeffs, const Tiling& tiling);

class IndexGrid {
 public:
  IndexGrid() = default;
  IndexGrid(std::size_t rows, std::size_t cols, int fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  int operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<const int> values() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

// One decomposition level applied to an H x W input.
struct TetroletLevel {
  Plane lowpass;                 // H/2 x W/2
  std::array<Plane, 3> details;  // detail index l = 1..3 at details[l - 1]
  IndexGrid tiling_choice;       // H/4 x W/4 catalog indices
};

struct TetroletDecomposition {
  std::vector<TetroletLevel> levels;  // levels[0] is the finest
  Plane final_lowpass;

  int level_count() const noexcept { return static_cast<int>(levels.size()); }
};

struct ForwardOptions {
  // Use this catalog index for every block instead of the l1 search.
  std::optional<int> forced_tiling;
};

// Requires width and height divisible by 2^(levels + 1).
TetroletDecomposition forward(const GrayImage& img, int levels, const ForwardOptions& opts = {});
TetroletDecomposition forward(const Plane& img, int levels, const ForwardOptions& opts = {});

// Rebuilds the image from final_lowpass, the details and the stored tiling
// choices. Throws MalformedDecomposition on inconsistent shapes or indices.
Plane inverse_plane(const TetroletDecomposition& dec);
GrayImage inverse(const TetroletDecomposition& dec);

// level in 1..J, detail_index in 1..3.
const Plane& subband(const TetroletDecomposition& dec, int level, int detail_index);

}  // namespace rriqa
