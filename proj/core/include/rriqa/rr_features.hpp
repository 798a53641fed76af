#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rriqa/image.hpp"
#include "rriqa/metrics.hpp"

namespace rriqa {

inline constexpr int kFeatureLevels = 3;
inline constexpr std::size_t kFeatureBands = 9;
inline constexpr std::size_t kPayloadBytes = 2 * kFeatureBands;  // 144 bits
inline constexpr std::size_t kContainerBytes = 4 + 1 + 1 + kPayloadBytes;
inline constexpr std::uint8_t kContainerVersion = 1;
// Shapes below this make the L2 distance poorly conditioned near the
// integrability limit of 1/4.
inline constexpr double kAlphaFloor = 0.26;

// Fixed log10 ranges of the 8-bit quantizer.
inline constexpr double kLogAlphaLo = -0.6, kLogAlphaHi = 3.0;
inline constexpr double kLogBetaLo = -4.0, kLogBetaHi = 6.0;

struct FeatureEntry {
  BandId band;
  BkfParams params;
};

// Nine bands ordered (level 1..3) x (detail 1..3).
struct FeatureVector {
  std::array<FeatureEntry, kFeatureBands> entries{};
  std::size_t width = 0;   // after cropping; 0 when rebuilt from a payload
  std::size_t height = 0;
  int levels = kFeatureLevels;
};

// 9 alpha codes then 9 beta codes, band order.
struct QuantizedFeatures {
  std::array<std::uint8_t, kPayloadBytes> codes{};

  friend bool operator==(const QuantizedFeatures&, const QuantizedFeatures&) = default;
};

// Crop to a multiple of 16, three-level tetrolet transform, one BKF fit
// per detail subband. A zero-variance subband raises DegenerateSubband.
FeatureVector extract(const GrayImage& img);

std::uint8_t quantize_log(double value, double log_lo, double log_hi);
double dequantize_log(std::uint8_t code, double log_lo, double log_hi);

QuantizedFeatures quantize(const FeatureVector& fv);
// Alpha is floored at kAlphaFloor like extracted features.
FeatureVector dequantize(const QuantizedFeatures& qf);

// The bare 18-byte payload; other lengths raise MalformedPayload.
QuantizedFeatures payload_from_bytes(std::span<const std::uint8_t> bytes);

// "TQRR", version, level count, 18 payload bytes.
std::vector<std::uint8_t> serialize(const QuantizedFeatures& qf);
QuantizedFeatures deserialize(std::span<const std::uint8_t> bytes);

void write_features(const QuantizedFeatures& qf, const std::filesystem::path& path);
QuantizedFeatures read_features(const std::filesystem::path& path);
// True when the file starts with the container magic.
bool is_features_file(const std::filesystem::path& path);

std::vector<BandPair> pair_bands(const FeatureVector& ref, const FeatureVector& dist);
QualityScore compare(Measure m, const FeatureVector& ref, const FeatureVector& dist);

}  // namespace rriqa
