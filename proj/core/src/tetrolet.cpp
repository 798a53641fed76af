#include "rriqa/tetrolet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>
#include <tuple>
#include <string>

#include "rriqa/error.hpp"

namespace rriqa {
namespace {

using Mask = std::uint16_t;

Mask mask_of(const std::array<Cell, 4>& cells) {
  Mask m = 0;
  for (const auto& c : cells) m = static_cast<Mask>(m | (1u << c.flat()));
  return m;
}

bool edge_connected(const std::array<Cell, 4>& cells) {
  std::array<bool, 4> seen{true, false, false, false};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < 4; ++i) {
      if (seen[i]) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        if (!seen[j]) continue;
        const int dr = std::abs(cells[i].row - cells[j].row);
        const int dc = std::abs(cells[i].col - cells[j].col);
        if (dr + dc == 1) {
          seen[i] = grew = true;
          break;
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// The 8 symmetries of the square acting on (row, col) of an n x n board.
Cell transform(Cell c, int sym, int n) {
  int r = c.row, k = c.col;
  const int m = n - 1;
  switch (sym) {
    case 0: break;
    case 1: std::tie(r, k) = std::pair{k, m - r}; break;
    case 2: std::tie(r, k) = std::pair{m - r, m - k}; break;
    case 3: std::tie(r, k) = std::pair{m - k, r}; break;
    case 4: std::tie(r, k) = std::pair{r, m - k}; break;
    case 5: std::tie(r, k) = std::pair{m - r, k}; break;
    case 6: std::tie(r, k) = std::pair{k, r}; break;
    case 7: std::tie(r, k) = std::pair{m - k, m - r}; break;
    default: break;
  }
  return Cell{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(k)};
}

// Relabels by order of first appearance so equal partitions compare equal.
std::array<std::uint8_t, 16> canonical_labels(const std::array<std::uint8_t, 16>& labels) {
  std::array<int, 4> remap{-1, -1, -1, -1};
  int next = 0;
  std::array<std::uint8_t, 16> out{};
  for (std::size_t i = 0; i < 16; ++i) {
    auto& r = remap[labels[i]];
    if (r < 0) r = next++;
    out[i] = static_cast<std::uint8_t>(r);
  }
  return out;
}

std::vector<Tetromino> all_placements() {
  std::vector<Tetromino> out;
  for (unsigned m = 0; m < (1u << 16); ++m) {
    if (std::popcount(m) != 4) continue;
    std::array<Cell, 4> cells{};
    std::size_t k = 0;
    for (std::uint8_t i = 0; i < 16; ++i) {
      if (m & (1u << i)) cells[k++] = Cell{static_cast<std::uint8_t>(i / 4), static_cast<std::uint8_t>(i % 4)};
    }
    if (edge_connected(cells)) out.emplace_back(cells);
  }
  // Lexicographic order of the sorted flat cell indices.
  std::sort(out.begin(), out.end(), [](const Tetromino& a, const Tetromino& b) {
    return a.cells() < b.cells();
  });
  return out;
}

bool is_square_tiling(const Tiling& t) {
  const auto lab = t.labels();
  for (std::size_t i = 0; i < 16; ++i) {
    const std::size_t r = i / 4, c = i % 4;
    if (lab[i] != (r / 2) * 2 + c / 2) return false;
  }
  return true;
}

}  // namespace

Tetromino::Tetromino(std::array<Cell, 4> cells) : cells_(cells) {
  std::sort(cells_.begin(), cells_.end());
  for (std::size_t i = 0; i < 4; ++i) {
    if (cells_[i].row > 3 || cells_[i].col > 3) throw Error(ErrorCode::InvalidParams, "tetromino cell out of range");
    if (i > 0 && cells_[i] == cells_[i - 1]) throw Error(ErrorCode::InvalidParams, "duplicate tetromino cell");
  }
  if (!edge_connected(cells_)) throw Error(ErrorCode::InvalidParams, "tetromino cells are not connected");
}

std::array<std::uint8_t, 16> Tiling::labels() const noexcept {
  std::array<std::uint8_t, 16> out{};
  for (std::size_t s = 0; s < 4; ++s) {
    for (const auto& c : tetrominoes[s].cells()) out[c.flat()] = static_cast<std::uint8_t>(s);
  }
  return out;
}

TilingCatalog::TilingCatalog(std::vector<Tiling> tilings) : tilings_(std::move(tilings)) {
  for (std::size_t i = 0; i < tilings_.size(); ++i) {
    tilings_[i].index = static_cast<int>(i);
    std::array<std::uint16_t, 4> ids{};
    for (std::size_t s = 0; s < 4; ++s) {
      const auto& t = tilings_[i].tetrominoes[s];
      auto it = std::find(placements_.begin(), placements_.end(), t);
      if (it == placements_.end()) it = placements_.insert(placements_.end(), t);
      ids[s] = static_cast<std::uint16_t>(it - placements_.begin());
    }
    placement_ids_.push_back(ids);
  }
}

std::size_t TilingCatalog::symmetry_class_count() const {
  std::set<std::array<std::uint8_t, 16>> classes;
  for (const auto& t : tilings_) {
    const auto lab = t.labels();
    std::array<std::uint8_t, 16> best{};
    for (int sym = 0; sym < 8; ++sym) {
      std::array<std::uint8_t, 16> moved{};
      for (std::uint8_t i = 0; i < 16; ++i) {
        const Cell c = transform(Cell{static_cast<std::uint8_t>(i / 4), static_cast<std::uint8_t>(i % 4)}, sym, 4);
        moved[c.flat()] = lab[i];
      }
      const auto key = canonical_labels(moved);
      if (sym == 0 || key < best) best = key;
    }
    classes.insert(best);
  }
  return classes.size();
}

std::size_t TilingCatalog::free_tetromino_count() const {
  std::set<std::array<Cell, 4>> shapes;
  for (const auto& t : placements_) {
    std::array<Cell, 4> best{};
    for (int sym = 0; sym < 8; ++sym) {
      std::array<Cell, 4> moved{};
      for (std::size_t k = 0; k < 4; ++k) moved[k] = transform(t.cells()[k], sym, 4);
      std::uint8_t r0 = 255, c0 = 255;
      for (const auto& c : moved) {
        r0 = std::min(r0, c.row);
        c0 = std::min(c0, c.col);
      }
      for (auto& c : moved) c = Cell{static_cast<std::uint8_t>(c.row - r0), static_cast<std::uint8_t>(c.col - c0)};
      std::sort(moved.begin(), moved.end());
      if (sym == 0 || moved < best) best = moved;
    }
    shapes.insert(best);
  }
  return shapes.size();
}

TilingCatalog enumerate_tilings() {
  const auto placements = all_placements();
  std::vector<Tiling> found;
  std::vector<const Tetromino*> stack;

  std::function<void(Mask)> fill = [&](Mask covered) {
    if (covered == 0xFFFF) {
      found.push_back(Tiling{{*stack[0], *stack[1], *stack[2], *stack[3]}, 0});
      return;
    }
    const int first = std::countr_one(static_cast<unsigned>(covered));
    for (const auto& p : placements) {
      if (p.cells()[0].flat() != first) continue;
      const Mask m = mask_of(p.cells());
      if (m & covered) continue;
      stack.push_back(&p);
      fill(static_cast<Mask>(covered | m));
      stack.pop_back();
    }
  };
  fill(0);

  const auto sq = std::find_if(found.begin(), found.end(), is_square_tiling);
  std::rotate(found.begin(), sq, sq + 1);
  return TilingCatalog(std::move(found));
}

const TilingCatalog& tiling_catalog() {
  static const TilingCatalog catalog = enumerate_tilings();
  return catalog;
}

HaarCoefficients haar_tetromino(const std::array<double, 4>& v) noexcept {
  return HaarCoefficients{0.5 * (v[0] + v[1] + v[2] + v[3]),
                          {0.5 * (v[0] + v[1] - v[2] - v[3]),
                           0.5 * (v[0] - v[1] + v[2] - v[3]),
                           0.5 * (v[0] - v[1] - v[2] + v[3])}};
}

std::array<double, 4> inverse_haar_tetromino(const HaarCoefficients& c) noexcept {
  const double a = c.lowpass, d1 = c.details[0], d2 = c.details[1], d3 = c.details[2];
  return {0.5 * (a + d1 + d2 + d3), 0.5 * (a + d1 - d2 - d3),
          0.5 * (a - d1 + d2 - d3), 0.5 * (a - d1 - d2 + d3)};
}

namespace {

HaarCoefficients haar_of(const Block4x4& block, const Tetromino& t) noexcept {
  const auto& c = t.cells();
  return haar_tetromino({block[c[0].flat()], block[c[1].flat()], block[c[2].flat()], block[c[3].flat()]});
}

double l1(const HaarCoefficients& h) noexcept {
  return std::abs(h.details[0]) + std::abs(h.details[1]) + std::abs(h.details[2]);
}

}  // namespace

BlockAnalysis analyze_block_with_tiling(const Block4x4& block, const Tiling& tiling) {
  BlockAnalysis out;
  out.tiling_index = tiling.index;
  for (std::size_t s = 0; s < 4; ++s) {
    const auto h = haar_of(block, tiling.tetrominoes[s]);
    out.lowpass[s] = h.lowpass;
    for (std::size_t l = 0; l < 3; ++l) out.details[3 * s + l] = h.details[l];
    out.cost += l1(h);
  }
  return out;
}

BlockAnalysis analyze_block(const Block4x4& block, const TilingCatalog& catalog) {
  // Each placed tetromino is shared by many tilings; cost it once.
  const auto& placements = catalog.placements();
  std::vector<double> cost(placements.size());
  for (std::size_t p = 0; p < placements.size(); ++p) cost[p] = l1(haar_of(block, placements[p]));

  std::size_t best = 0;
  double best_cost = 0.0;
  for (std::size_t t = 0; t < catalog.size(); ++t) {
    const auto& ids = catalog.placement_ids(t);
    const double c = cost[ids[0]] + cost[ids[1]] + cost[ids[2]] + cost[ids[3]];
    // Distinct tilings can tie exactly; keep the lowest index despite rounding.
    if (t == 0 || c < best_cost - 1e-12 * std::max(1.0, best_cost)) {
      best = t;
      best_cost = c;
    }
  }
  return analyze_block_with_tiling(block, catalog[best]);
}

Block4x4 synthesize_block(const BlockAnalysis& coeffs, const Tiling& tiling) {
  Block4x4 block{};
  for (std::size_t s = 0; s < 4; ++s) {
    const auto v = inverse_haar_tetromino(
        {coeffs.lowpass[s], {coeffs.details[3 * s], coeffs.details[3 * s + 1], coeffs.details[3 * s + 2]}});
    const auto& cells = tiling.tetrominoes[s].cells();
    for (std::size_t k = 0; k < 4; ++k) block[cells[k].flat()] = v[k];
  }
  return block;
}

namespace {

TetroletLevel forward_level(const Plane& in, const TilingCatalog& catalog, const ForwardOptions& opts) {
  const std::size_t bh = in.rows() / 4, bw = in.cols() / 4;
  TetroletLevel level;
  level.lowpass = Plane(2 * bh, 2 * bw);
  for (auto& d : level.details) d = Plane(2 * bh, 2 * bw);
  level.tiling_choice = IndexGrid(bh, bw);

  for (std::size_t bi = 0; bi < bh; ++bi) {
    for (std::size_t bj = 0; bj < bw; ++bj) {
      Block4x4 block{};
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) block[r * 4 + c] = in(4 * bi + r, 4 * bj + c);
      }
      const auto a = opts.forced_tiling ? analyze_block_with_tiling(block, catalog[*opts.forced_tiling])
                                        : analyze_block(block, catalog);
      level.tiling_choice(bi, bj) = a.tiling_index;
      for (std::size_t s = 0; s < 4; ++s) {
        const std::size_t r = 2 * bi + s / 2, c = 2 * bj + s % 2;
        level.lowpass(r, c) = a.lowpass[s];
        for (std::size_t l = 0; l < 3; ++l) level.details[l](r, c) = a.details[3 * s + l];
      }
    }
  }
  return level;
}

Plane inverse_level(const Plane& lowpass, const TetroletLevel& level, const TilingCatalog& catalog) {
  const std::size_t bh = level.tiling_choice.rows(), bw = level.tiling_choice.cols();
  Plane out(4 * bh, 4 * bw);
  for (std::size_t bi = 0; bi < bh; ++bi) {
    for (std::size_t bj = 0; bj < bw; ++bj) {
      BlockAnalysis a;
      for (std::size_t s = 0; s < 4; ++s) {
        const std::size_t r = 2 * bi + s / 2, c = 2 * bj + s % 2;
        a.lowpass[s] = lowpass(r, c);
        for (std::size_t l = 0; l < 3; ++l) a.details[3 * s + l] = level.details[l](r, c);
      }
      const auto block = synthesize_block(a, catalog[static_cast<std::size_t>(level.tiling_choice(bi, bj))]);
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) out(4 * bi + r, 4 * bj + c) = block[r * 4 + c];
      }
    }
  }
  return out;
}

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedDecomposition, why); }

}  // namespace

TetroletDecomposition forward(const Plane& img, int levels, const ForwardOptions& opts) {
  if (levels < 1) throw Error(ErrorCode::InvalidParams, "level count must be positive");
  if (opts.forced_tiling && (*opts.forced_tiling < 0 || *opts.forced_tiling >= kTilingCount)) {
    throw Error(ErrorCode::IndexOutOfRange, "forced tiling index " + std::to_string(*opts.forced_tiling));
  }
  const std::size_t divisor = std::size_t{1} << (levels + 1);
  if (img.rows() == 0 || img.cols() == 0 || img.rows() % divisor != 0 || img.cols() % divisor != 0) {
    throw Error(ErrorCode::DimensionNotDivisible,
                std::to_string(img.cols()) + "x" + std::to_string(img.rows()) + " is not divisible by " +
                    std::to_string(divisor) + " for " + std::to_string(levels) + " levels");
  }
  const auto& catalog = tiling_catalog();
  TetroletDecomposition dec;
  const Plane* current = &img;
  for (int j = 0; j < levels; ++j) {
    dec.levels.push_back(forward_level(*current, catalog, opts));
    current = &dec.levels.back().lowpass;
  }
  dec.final_lowpass = dec.levels.back().lowpass;
  return dec;
}

TetroletDecomposition forward(const GrayImage& img, int levels, const ForwardOptions& opts) {
  return forward(img.plane(), levels, opts);
}

Plane inverse_plane(const TetroletDecomposition& dec) {
  if (dec.levels.empty()) malformed("no levels");
  const auto& catalog = tiling_catalog();
  for (std::size_t j = 0; j < dec.levels.size(); ++j) {
    const auto& lv = dec.levels[j];
    const std::size_t bh = lv.tiling_choice.rows(), bw = lv.tiling_choice.cols();
    if (bh == 0 || bw == 0) malformed("level " + std::to_string(j + 1) + " has no blocks");
    const auto shape_ok = [&](const Plane& p) { return p.rows() == 2 * bh && p.cols() == 2 * bw; };
    if (!shape_ok(lv.lowpass)) malformed("level " + std::to_string(j + 1) + " lowpass shape");
    for (const auto& d : lv.details) {
      if (!shape_ok(d)) malformed("level " + std::to_string(j + 1) + " detail shape");
    }
    for (int t : lv.tiling_choice.values()) {
      if (t < 0 || t >= static_cast<int>(catalog.size())) malformed("tiling index " + std::to_string(t));
    }
    if (j > 0) {
      const auto& prev = dec.levels[j - 1].lowpass;
      if (prev.rows() != 4 * bh || prev.cols() != 4 * bw) malformed("level " + std::to_string(j + 1) + " input shape");
    }
  }
  const auto& last = dec.levels.back().lowpass;
  if (dec.final_lowpass.rows() != last.rows() || dec.final_lowpass.cols() != last.cols()) {
    malformed("final lowpass shape");
  }

  Plane current = dec.final_lowpass;
  for (auto it = dec.levels.rbegin(); it != dec.levels.rend(); ++it) current = inverse_level(current, *it, catalog);
  return current;
}

GrayImage inverse(const TetroletDecomposition& dec) { return GrayImage(inverse_plane(dec)); }

const Plane& subband(const TetroletDecomposition& dec, int level, int detail_index) {
  if (level < 1 || level > dec.level_count() || detail_index < 1 || detail_index > 3) {
    throw Error(ErrorCode::IndexOutOfRange,
                "subband (" + std::to_string(level) + ", " + std::to_string(detail_index) + ") with " +
                    std::to_string(dec.level_count()) + " levels");
  }
  return dec.levels[static_cast<std::size_t>(level - 1)].details[static_cast<std::size_t>(detail_index - 1)];
}

}  // namespace rriqa
