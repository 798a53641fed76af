#include "rriqa/rr_features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "rriqa/error.hpp"
#include "rriqa/tetrolet.hpp"

namespace rriqa {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'T', 'Q', 'R', 'R'};

std::string band_name(const BandId& b) {
  return "(" + std::to_string(b.level) + ", " + std::to_string(b.detail) + ")";
}

}  // namespace

FeatureVector extract(const GrayImage& img) {
  const std::size_t block = std::size_t{1} << (kFeatureLevels + 1);
  const auto cropped = crop_to_multiple(img, block);
  const auto dec = forward(cropped, kFeatureLevels);

  FeatureVector fv;
  fv.width = cropped.width();
  fv.height = cropped.height();
  std::size_t k = 0;
  for (int level = 1; level <= kFeatureLevels; ++level) {
    for (int detail = 1; detail <= 3; ++detail) {
      const BandId id{level, detail};
      BkfParams p;
      try {
        const auto stats = sample_stats(subband(dec, level, detail).values());
        p = estimate(stats);
        if (p.alpha < kAlphaFloor) p = BkfParams{kAlphaFloor, stats.variance / kAlphaFloor};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSample && e.code() != ErrorCode::TooFewSamples) throw;
        throw Error(ErrorCode::DegenerateSubband, "band " + band_name(id) + ": " + e.detail());
      }
      fv.entries[k++] = FeatureEntry{id, p};
    }
  }
  return fv;
}

std::uint8_t quantize_log(double value, double log_lo, double log_hi) {
  const double lv = std::clamp(std::log10(value), log_lo, log_hi);
  const double code = std::round((lv - log_lo) / (log_hi - log_lo) * 255.0);
  return static_cast<std::uint8_t>(std::clamp(code, 0.0, 255.0));
}

double dequantize_log(std::uint8_t code, double log_lo, double log_hi) {
  return std::pow(10.0, log_lo + (static_cast<double>(code) / 255.0) * (log_hi - log_lo));
}

QuantizedFeatures quantize(const FeatureVector& fv) {
  QuantizedFeatures qf;
  for (std::size_t i = 0; i < kFeatureBands; ++i) {
    validate(fv.entries[i].params);
    qf.codes[i] = quantize_log(fv.entries[i].params.alpha, kLogAlphaLo, kLogAlphaHi);
    qf.codes[kFeatureBands + i] = quantize_log(fv.entries[i].params.beta, kLogBetaLo, kLogBetaHi);
  }
  return qf;
}

FeatureVector dequantize(const QuantizedFeatures& qf) {
  FeatureVector fv;
  for (std::size_t i = 0; i < kFeatureBands; ++i) {
    const BandId id{static_cast<int>(i / 3) + 1, static_cast<int>(i % 3) + 1};
    // Codes 0 and 1 reconstruct below the extraction floor.
    const double alpha = std::max(kAlphaFloor, dequantize_log(qf.codes[i], kLogAlphaLo, kLogAlphaHi));
    fv.entries[i] = FeatureEntry{id, BkfParams{alpha, dequantize_log(qf.codes[kFeatureBands + i], kLogBetaLo, kLogBetaHi)}};
  }
  return fv;
}

QuantizedFeatures payload_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kPayloadBytes) {
    throw Error(ErrorCode::MalformedPayload,
                "payload must be " + std::to_string(kPayloadBytes) + " bytes, got " + std::to_string(bytes.size()));
  }
  QuantizedFeatures qf;
  std::copy(bytes.begin(), bytes.end(), qf.codes.begin());
  return qf;
}

std::vector<std::uint8_t> serialize(const QuantizedFeatures& qf) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(kContainerVersion);
  out.push_back(static_cast<std::uint8_t>(kFeatureLevels));
  out.insert(out.end(), qf.codes.begin(), qf.codes.end());
  return out;
}

QuantizedFeatures deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not a TQRR feature container");
  }
  if (bytes.size() < 6) throw Error(ErrorCode::MalformedPayload, "truncated container header");
  if (bytes[4] != kContainerVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "container version " + std::to_string(bytes[4]));
  }
  if (bytes[5] != kFeatureLevels) {
    throw Error(ErrorCode::MalformedPayload, "level count " + std::to_string(bytes[5]));
  }
  return payload_from_bytes(bytes.subspan(6));
}

void write_features(const QuantizedFeatures& qf, const std::filesystem::path& path) {
  const auto bytes = serialize(qf);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

QuantizedFeatures read_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return deserialize(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

bool is_features_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<char, 4> head{};
  if (!in.read(head.data(), head.size())) return false;
  return std::equal(kMagic.begin(), kMagic.end(), head.begin(),
                    [](std::uint8_t m, char c) { return m == static_cast<std::uint8_t>(c); });
}

std::vector<BandPair> pair_bands(const FeatureVector& ref, const FeatureVector& dist) {
  std::vector<BandPair> out;
  out.reserve(kFeatureBands);
  for (std::size_t i = 0; i < kFeatureBands; ++i) {
    if (ref.entries[i].band != dist.entries[i].band) {
      throw Error(ErrorCode::MalformedPayload, "band order mismatch at entry " + std::to_string(i));
    }
    out.push_back(BandPair{ref.entries[i].params, dist.entries[i].params, ref.entries[i].band});
  }
  return out;
}

QualityScore compare(Measure m, const FeatureVector& ref, const FeatureVector& dist) {
  const auto bands = pair_bands(ref, dist);
  return score(m, bands);
}

}  // namespace rriqa
