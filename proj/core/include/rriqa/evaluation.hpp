#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rriqa/metrics.hpp"

namespace rriqa {

// (g1 - g2) / (1 + exp(-(q - g3) / g4)) + g2
struct LogisticParams {
  double gamma1 = 1.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 1.0;
};

double logistic(const LogisticParams& g, double q);

struct LogisticFit {
  LogisticParams params;
  double sse = 0.0;
  // Best objective after every simplex iteration of the winning start.
  std::vector<double> trace;
};

// Least-squares fit by Nelder-Mead from three deterministic starts
// (g1 = max dmos, g2 = min dmos, g3 = median q, g4 in {+-range/4, range/10}).
LogisticFit fit_logistic(std::span<const double> q, std::span<const double> dmos);

double pearson(std::span<const double> x, std::span<const double> y);
// Pearson correlation of midranks.
double spearman(std::span<const double> x, std::span<const double> y);
// 1-based ranks; tied values share the mean of their positions.
std::vector<double> midranks(std::span<const double> x);

struct DatasetRecord {
  std::string subset;
  std::filesystem::path ref_path;
  std::filesystem::path dist_path;
  double dmos = 0.0;
  std::size_t line = 0;
};

// Tab-separated subset, ref, dist, dmos; '#' lines and blank lines are
// skipped. Relative paths resolve against base_dir.
std::vector<DatasetRecord> parse_manifest(std::istream& in, const std::filesystem::path& base_dir = {});
std::vector<DatasetRecord> read_manifest(const std::filesystem::path& path);

struct PairScore {
  std::string subset;
  std::filesystem::path ref_path;
  std::filesystem::path dist_path;
  double dmos = 0.0;
  double q = 0.0;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct SubsetReport {
  std::string subset;
  std::size_t n = 0;
  double pearson = 0.0;   // logistic-mapped score vs dmos
  double spearman = 0.0;  // raw score vs dmos
  LogisticParams gamma;
};

struct CorrelationReport {
  Measure measure = Measure::Q5;
  std::vector<SubsetReport> subsets;  // in order of first appearance
  std::vector<std::string> skipped;   // "<subset>: <reason>"
  std::vector<RecordError> errors;
  std::vector<PairScore> scores;
};

struct EvaluateOptions {
  Measure measure = Measure::Q5;
  // Features of both images pass through the 8-bit codec.
  bool quantized = true;
};

// Scores every record, then fits and correlates per subset. Records that
// fail to load or score are reported in `errors`; subsets with fewer than
// four usable records are listed in `skipped`.
CorrelationReport evaluate_dataset(std::span<const DatasetRecord> records, const EvaluateOptions& opts = {});
// The fitting and correlation half of evaluate_dataset.
CorrelationReport summarize_scores(std::vector<PairScore> scores, Measure measure);

void write_report(std::ostream& out, const CorrelationReport& report);
void write_scores(std::ostream& out, const CorrelationReport& report);

}  // namespace rriqa
