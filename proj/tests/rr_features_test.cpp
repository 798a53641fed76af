#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include "rriqa/distort.hpp"
#include "rriqa/error.hpp"
#include "rriqa/evaluation.hpp"
#include "rriqa/pgm.hpp"
#include "rriqa/rr_features.hpp"
#include "rriqa/tetrolet.hpp"
#include "test_util.hpp"

namespace rriqa {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an rriqa::Error";
  return ErrorCode::IoError;
}

std::vector<std::uint8_t> file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::filesystem::path kData = RRIQA_TEST_DATA;
const std::filesystem::path kGolden = RRIQA_GOLDEN_DIR;

TEST(Extract, NineOrderedBands) {
  const auto fv = extract(test::scene_image(100, 70, 1));
  EXPECT_EQ(fv.width, 96u);
  EXPECT_EQ(fv.height, 64u);
  EXPECT_EQ(fv.levels, 3);
  std::size_t k = 0;
  for (int l = 1; l <= 3; ++l)
    for (int d = 1; d <= 3; ++d) {
      const auto& e = fv.entries[k++];
      EXPECT_EQ(e.band, (BandId{l, d}));
      EXPECT_GE(e.params.alpha, kAlphaFloor);
      EXPECT_LE(e.params.alpha, kAlphaMax);
      EXPECT_GT(e.params.beta, 0.0);
    }
}

TEST(Extract, MatchesDirectPipeline) {
  const auto img = test::scene_image(64, 64, 2);
  const auto fv = extract(img);
  const auto dec = forward(img, 3);
  for (const auto& e : fv.entries) {
    const auto stats = sample_stats(subband(dec, e.band.level, e.band.detail).values());
    auto p = estimate(stats);
    if (p.alpha < kAlphaFloor) p = {kAlphaFloor, stats.variance / kAlphaFloor};
    EXPECT_DOUBLE_EQ(e.params.alpha, p.alpha);
    EXPECT_DOUBLE_EQ(e.params.beta, p.beta);
    // The floor keeps the fitted variance.
    EXPECT_NEAR(e.params.alpha * e.params.beta, stats.variance, 1e-9 * stats.variance);
  }
}

TEST(Extract, BlurRemovesFineEnergy) {
  const auto img = test::scene_image(128, 128, 3);
  const auto noisy = extract(add_white_noise(img, 20.0, 4));
  const auto blurred = extract(gaussian_blur(add_white_noise(img, 20.0, 4), 2.0));
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& n = noisy.entries[d].params;
    const auto& b = blurred.entries[d].params;
    EXPECT_LT(b.alpha * b.beta, n.alpha * n.beta);
  }
}

TEST(Extract, Errors) {
  EXPECT_EQ(code_of([] { extract(GrayImage(Plane(64, 64, 100.0))); }), ErrorCode::DegenerateSubband);
  EXPECT_EQ(code_of([] { extract(test::random_image(15, 40, 1)); }), ErrorCode::ImageTooSmall);
}

TEST(Extract, Deterministic) {
  const auto img = test::scene_image(80, 80, 5);
  const auto a = extract(img), b = extract(img);
  for (std::size_t i = 0; i < kFeatureBands; ++i) EXPECT_EQ(a.entries[i].params, b.entries[i].params);
  EXPECT_EQ(quantize(a), quantize(b));
}

TEST(Quantizer, Endpoints) {
  EXPECT_EQ(quantize_log(std::pow(10.0, -0.6), kLogAlphaLo, kLogAlphaHi), 0);
  EXPECT_EQ(quantize_log(1e3, kLogAlphaLo, kLogAlphaHi), 255);
  EXPECT_EQ(quantize_log(1e-9, kLogAlphaLo, kLogAlphaHi), 0);
  EXPECT_EQ(quantize_log(1e9, kLogAlphaLo, kLogAlphaHi), 255);
  EXPECT_DOUBLE_EQ(dequantize_log(0, kLogBetaLo, kLogBetaHi), 1e-4);
  EXPECT_DOUBLE_EQ(dequantize_log(255, kLogBetaLo, kLogBetaHi), 1e6);
}

TEST(Quantizer, HalfStepBound) {
  const double half = 3.6 / 255.0 / 2.0;
  EXPECT_NEAR(half, 0.00706, 1e-5);
  for (int i = 0; i <= 2000; ++i) {
    const double lg = -0.6 + 3.6 * i / 2000.0;
    const auto c = quantize_log(std::pow(10.0, lg), kLogAlphaLo, kLogAlphaHi);
    EXPECT_LE(std::abs(std::log10(dequantize_log(c, kLogAlphaLo, kLogAlphaHi)) - lg), half + 1e-12);
  }
}

TEST(Quantizer, IdempotentOnFeatures) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto q = quantize(extract(test::scene_image(64, 64, seed)));
    EXPECT_EQ(quantize(dequantize(q)), q);
    for (const auto& e : dequantize(q).entries) EXPECT_GE(e.params.alpha, kAlphaFloor);
  }
}

TEST(Payload, SizesAndLayout) {
  const auto fv = extract(test::scene_image(64, 64, 6));
  const auto q = quantize(fv);
  EXPECT_EQ(q.codes.size(), 18u);
  EXPECT_EQ(q.codes[0], quantize_log(fv.entries[0].params.alpha, kLogAlphaLo, kLogAlphaHi));
  EXPECT_EQ(q.codes[9], quantize_log(fv.entries[0].params.beta, kLogBetaLo, kLogBetaHi));
  const auto bytes = serialize(q);
  ASSERT_EQ(bytes.size(), 24u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "TQRR");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 3);
  EXPECT_TRUE(std::equal(q.codes.begin(), q.codes.end(), bytes.begin() + 6));
  EXPECT_EQ(serialize(deserialize(bytes)), bytes);
}

TEST(Payload, Rejections) {
  const std::vector<std::uint8_t> short_payload(17, 0);
  EXPECT_EQ(code_of([&] { payload_from_bytes(short_payload); }), ErrorCode::MalformedPayload);
  auto bytes = serialize(QuantizedFeatures{});
  auto bad = bytes;
  std::copy_n("XXXX", 4, bad.begin());
  EXPECT_EQ(code_of([&] { deserialize(bad); }), ErrorCode::BadMagic);
  auto v2 = bytes;
  v2[4] = 2;
  EXPECT_EQ(code_of([&] { deserialize(v2); }), ErrorCode::UnsupportedVersion);
  auto levels = bytes;
  levels[5] = 4;
  EXPECT_EQ(code_of([&] { deserialize(levels); }), ErrorCode::MalformedPayload);
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_EQ(code_of([&] { deserialize(longer); }), ErrorCode::MalformedPayload);
  EXPECT_EQ(code_of([] { deserialize(std::vector<std::uint8_t>{'T', 'Q'}); }), ErrorCode::BadMagic);
}

TEST(Payload, FileRoundTrip) {
  const auto q = quantize(extract(test::scene_image(64, 64, 7)));
  const auto path = test::temp_path("roundtrip.tqrr");
  write_features(q, path);
  EXPECT_EQ(std::filesystem::file_size(path), 24u);
  EXPECT_TRUE(is_features_file(path));
  EXPECT_EQ(read_features(path), q);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { read_features(path); }), ErrorCode::IoError);
}

TEST(Payload, GoldenContainer) {
  const auto img = load_image(kData / "camera.pgm");
  EXPECT_EQ(serialize(quantize(extract(img))), file_bytes(kGolden / "camera.tqrr"));
}

TEST(Compare, BandOrderMustMatch) {
  auto a = extract(test::scene_image(64, 64, 8));
  auto b = a;
  std::swap(b.entries[0], b.entries[1]);
  EXPECT_EQ(code_of([&] { pair_bands(a, b); }), ErrorCode::MalformedPayload);
  EXPECT_EQ(compare(Measure::Q5, a, a).value, 0.0);
}

std::string series(const std::vector<double>& raw, const std::vector<double>& quantized) {
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) s += " " + std::to_string(raw[i]) + "/" + std::to_string(quantized[i]);
  return s;
}

// Reference features at full precision, distorted features through the
// 144-bit payload.
TEST(Compare, QuantizationPreservesRanking) {
  int images = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto img = test::scene_image(96, 96, 100 + seed);
    const auto ref = extract(img);
    std::vector<double> raw, quantized;
    for (int k = 1; k <= 10; ++k) {
      const auto dist = extract(gaussian_blur(img, 0.4 * k));
      raw.push_back(compare(Measure::Q5, ref, dist).value);
      quantized.push_back(compare(Measure::Q5, ref, dequantize(quantize(dist))).value);
    }
    EXPECT_DOUBLE_EQ(spearman(raw, quantized), 1.0) << "seed " << seed << series(raw, quantized);
    ++images;
  }
  EXPECT_EQ(images, 20);
}

}  // namespace
}  // namespace rriqa
