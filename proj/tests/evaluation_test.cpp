#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "rriqa/distort.hpp"
#include "rriqa/error.hpp"
#include "rriqa/evaluation.hpp"
#include "rriqa/pgm.hpp"
#include "rriqa/rr_features.hpp"
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

// Ranks by counting: position among smaller values plus half the ties.
std::vector<double> brute_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double v : x) {
      less += v < x[i];
      equal += v == x[i];
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

double rms_residual(const LogisticFit& fit, const std::vector<double>& q, const std::vector<double>& d) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += std::pow(logistic(fit.params, q[i]) - d[i], 2);
  return std::sqrt(s / static_cast<double>(q.size()));
}

TEST(Logistic, Examples) {
  const LogisticParams unit{1, 0, 0, 1};
  EXPECT_DOUBLE_EQ(logistic(unit, 0.0), 0.5);
  EXPECT_NEAR(logistic(unit, 40.0), 1.0, 1e-15);
  EXPECT_EQ(logistic(unit, std::numeric_limits<double>::infinity()), 1.0);
  for (double q : {-10.0, 0.0, 3.0}) EXPECT_EQ(logistic({5, 5, 1, 2}, q), 5.0);
  EXPECT_EQ(code_of([] { logistic({1, 0, 0, 0}, 1.0); }), ErrorCode::InvalidParams);
}

TEST(Logistic, RecoversNoiselessData) {
  const LogisticParams truth{80, 10, 2, 0.7};
  std::vector<double> q, d;
  for (int i = 0; i < 50; ++i) {
    q.push_back(5.0 * i / 49.0);
    d.push_back(logistic(truth, q.back()));
  }
  const auto fit = fit_logistic(q, d);
  EXPECT_LT(rms_residual(fit, q, d), 1e-6);
  EXPECT_NEAR(fit.sse, std::pow(rms_residual(fit, q, d), 2) * 50, 1e-12);
}

TEST(Logistic, RecoversDecreasingAndShuffledData) {
  const LogisticParams truth{20, 95, 0.3, 0.05};
  std::vector<double> q, d;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 0.8);
  for (int i = 0; i < 40; ++i) {
    q.push_back(u(rng));
    d.push_back(logistic(truth, q.back()));
  }
  EXPECT_LT(rms_residual(fit_logistic(q, d), q, d), 1e-6);
}

TEST(Logistic, TraceNeverIncreases) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 3.0);
  std::vector<double> q, d;
  for (int i = 0; i < 60; ++i) {
    q.push_back(i * 0.1);
    d.push_back(logistic({70, 20, 3, 0.8}, q.back()) + noise(rng));
  }
  const auto fit = fit_logistic(q, d);
  ASSERT_GT(fit.trace.size(), 10u);
  for (std::size_t i = 1; i < fit.trace.size(); ++i) EXPECT_LE(fit.trace[i], fit.trace[i - 1]);
  EXPECT_DOUBLE_EQ(fit.trace.back(), fit.sse);
}

TEST(Logistic, Errors) {
  const std::vector<double> three{1, 2, 3};
  EXPECT_EQ(code_of([&] { fit_logistic(three, three); }), ErrorCode::TooFewPoints);
  const std::vector<double> flat(6, 2.0), d{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(code_of([&] { fit_logistic(flat, d); }), ErrorCode::DegenerateScores);
}

TEST(Correlation, PearsonExamples) {
  const std::vector<double> x{1, 2, 3}, y{2, 4, 6}, neg{-1, -2, -3};
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(pearson(x, neg), -1.0, 1e-15);
  const std::vector<double> c{4, 4, 4};
  EXPECT_EQ(code_of([&] { pearson(x, c); }), ErrorCode::ConstantInput);
}

TEST(Correlation, NullCorrelation) {
  std::vector<double> x(10000), y;
  std::iota(x.begin(), x.end(), 0.0);
  y = x;
  std::mt19937_64 rng(12);
  std::shuffle(y.begin(), y.end(), rng);
  EXPECT_LT(std::abs(pearson(x, y)), 0.05);
  EXPECT_LT(std::abs(spearman(x, y)), 0.05);
}

TEST(Correlation, AffineInvariance) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<double> x(200), y(200);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = n(rng);
    y[i] = 0.6 * x[i] + n(rng);
  }
  std::vector<double> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) xs[i] = 3.5 * x[i] - 7.0, ys[i] = 0.01 * y[i] + 100.0;
  EXPECT_NEAR(pearson(x, y), pearson(xs, ys), 1e-12);
}

TEST(Correlation, SpearmanExamples) {
  const std::vector<double> x{1, 2, 3, 4}, y{1, 8, 27, 64};
  EXPECT_NEAR(spearman(x, y), 1.0, 1e-15);
  std::vector<double> rev(y.rbegin(), y.rend());
  EXPECT_NEAR(spearman(x, rev), -1.0, 1e-15);
}

TEST(Correlation, SpearmanMonotoneInvariance) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<double> x(300), y(300), ex(300), cube(300);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = u(rng);
    y[i] = x[i] + u(rng);
    ex[i] = std::exp(x[i]);
    cube[i] = x[i] * x[i] * x[i];
  }
  EXPECT_NEAR(spearman(x, y), spearman(ex, y), 1e-12);
  EXPECT_NEAR(spearman(x, y), spearman(cube, y), 1e-12);
  std::vector<double> ny(y.size());
  std::transform(y.begin(), y.end(), ny.begin(), [](double v) { return -v; });
  EXPECT_NEAR(spearman(x, ny), -spearman(x, y), 1e-12);
}

TEST(Correlation, MidranksMatchBruteForce) {
  const std::vector<double> tie{3, 1, 4, 1, 5};
  EXPECT_EQ(midranks(tie), (std::vector<double>{3, 1.5, 4, 1.5, 5}));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> u(0, 12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(40);
    for (auto& v : x) v = u(rng);
    EXPECT_EQ(midranks(x), brute_ranks(x));
    std::vector<double> y(40);
    for (auto& v : y) v = u(rng);
    EXPECT_NEAR(spearman(x, y), pearson(brute_ranks(x), brute_ranks(y)), 1e-12);
  }
}

TEST(Manifest, Parsing) {
  std::istringstream in(
      "# subset\tref\tdist\tdmos\n"
      "\n"
      "noise\trefs/a.pgm\tdist/a1.pgm\t34.5\r\n"
      "blur\t/abs/b.pgm\tb1.pgm\t-2\n");
  const auto recs = parse_manifest(in, "/data");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].subset, "noise");
  EXPECT_EQ(recs[0].ref_path, std::filesystem::path("/data/refs/a.pgm"));
  EXPECT_EQ(recs[0].dmos, 34.5);
  EXPECT_EQ(recs[0].line, 3u);
  EXPECT_EQ(recs[1].ref_path, std::filesystem::path("/abs/b.pgm"));
  EXPECT_EQ(recs[1].dist_path, std::filesystem::path("/data/b1.pgm"));

  std::istringstream three("a\tb\tc\n");
  EXPECT_EQ(code_of([&] { parse_manifest(three); }), ErrorCode::CorruptFile);
  std::istringstream bad("a\tb\tc\tnope\n");
  EXPECT_EQ(code_of([&] { parse_manifest(bad); }), ErrorCode::CorruptFile);
  EXPECT_EQ(code_of([] { read_manifest("/nonexistent/manifest.tsv"); }), ErrorCode::IoError);
}

TEST(Summary, SyntheticSubsets) {
  const LogisticParams truth{60, 5, 1.2, 0.4};
  std::vector<PairScore> scores;
  for (int i = 0; i < 30; ++i) {
    const double q = 0.1 * i;
    scores.push_back({"exact", "r", "d", logistic(truth, q), q});
    scores.push_back({"ranked", "r", "d", std::exp(q) + q * q * q, q});
  }
  scores.push_back({"tiny", "r", "d", 1.0, 0.5});
  const auto report = summarize_scores(scores, Measure::Q5);
  ASSERT_EQ(report.subsets.size(), 2u);
  EXPECT_EQ(report.subsets[0].subset, "exact");
  EXPECT_EQ(report.subsets[0].n, 30u);
  EXPECT_NEAR(report.subsets[0].pearson, 1.0, 1e-6);
  EXPECT_NEAR(report.subsets[1].spearman, 1.0, 1e-12);
  ASSERT_EQ(report.skipped.size(), 1u);
  EXPECT_EQ(report.skipped[0].rfind("tiny", 0), 0u);

  std::ostringstream out;
  write_report(out, report);
  const auto text = out.str();
  EXPECT_NE(text.find("subset\tn\tpearson\tspearman"), std::string::npos);
  EXPECT_NE(text.find("\nexact\t30\t"), std::string::npos);
  EXPECT_NE(text.find("# skipped tiny"), std::string::npos);
}

class DatasetTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = test::temp_path("dataset");
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(DatasetTest, EndToEnd) {
  const auto ref = test::scene_image(64, 64, 9);
  save_pgm(ref, dir_ / "ref.pgm");
  const auto ref_fv = dequantize(quantize(extract(load_image(dir_ / "ref.pgm"))));
  const LogisticParams truth{90, 10, 1.0, 0.3};
  std::ostringstream manifest;
  manifest.precision(17);
  for (int k = 1; k <= 6; ++k) {
    const auto name = "blur" + std::to_string(k) + ".pgm";
    save_pgm(gaussian_blur(ref, 0.5 * k), dir_ / name);
    // DMOS built from the score the pipeline should recompute.
    const auto d = load_image(dir_ / name);
    const double q = compare(Measure::Q5, ref_fv, dequantize(quantize(extract(d)))).value;
    manifest << "blur\tref.pgm\t" << name << '\t' << logistic(truth, q) << '\n';
  }
  manifest << "blur\tref.pgm\tmissing.pgm\t50\n";
  {
    std::ofstream f(dir_ / "manifest.tsv");
    f << manifest.str();
  }
  const auto records = read_manifest(dir_ / "manifest.tsv");
  ASSERT_EQ(records.size(), 7u);
  const auto report = evaluate_dataset(records);
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0].line, 7u);
  EXPECT_NE(report.errors[0].message.find("IoError"), std::string::npos);
  ASSERT_EQ(report.subsets.size(), 1u);
  EXPECT_EQ(report.subsets[0].n, 6u);
  EXPECT_NEAR(report.subsets[0].pearson, 1.0, 1e-6);
  EXPECT_NEAR(std::abs(report.subsets[0].spearman), 1.0, 1e-12);
  EXPECT_EQ(report.scores.size(), 6u);

  EvaluateOptions raw;
  raw.quantized = false;
  const auto raw_report = evaluate_dataset(records, raw);
  EXPECT_EQ(raw_report.scores.size(), 6u);
  EXPECT_NE(raw_report.scores[0].q, report.scores[0].q);
}

}  // namespace
}  // namespace rriqa
