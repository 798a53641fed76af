#include "rriqa/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rriqa/error.hpp"
#include "rriqa/pgm.hpp"
#include "rriqa/rr_features.hpp"

namespace rriqa {

double logistic(const LogisticParams& g, double q) {
  if (g.gamma4 == 0.0 || !std::isfinite(g.gamma4)) {
    throw Error(ErrorCode::InvalidParams, "logistic gamma4 must be nonzero and finite");
  }
  return (g.gamma1 - g.gamma2) / (1.0 + std::exp(-(q - g.gamma3) / g.gamma4)) + g.gamma2;
}

namespace {

using Point = std::array<double, 4>;

LogisticParams to_params(const Point& p) { return {p[0], p[1], p[2], p[3]}; }

double sse(const Point& p, std::span<const double> q, std::span<const double> dmos) {
  if (p[3] == 0.0 || !std::isfinite(p[3])) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double r = dmos[i] - logistic(to_params(p), q[i]);
    s += r * r;
  }
  return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
}

struct SimplexResult {
  Point best;
  double value;
};

constexpr int kMaxIterations = 10000;
constexpr double kRelTol = 1e-10;

// One Nelder-Mead descent; appends the best value after each iteration.
SimplexResult nelder_mead(const Point& start, std::span<const double> q, std::span<const double> dmos,
                          std::vector<double>& trace) {
  constexpr std::size_t n = 4;
  std::array<Point, n + 1> pts;
  std::array<double, n + 1> val;
  pts[0] = start;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1] = start;
    const double step = start[i] != 0.0 ? 0.1 * std::abs(start[i]) : 0.1;
    pts[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) val[i] = sse(pts[i], q, dmos);

  std::array<std::size_t, n + 1> order;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    trace.push_back(val[best]);
    if (val[worst] - val[best] <= kRelTol * std::abs(val[best]) + 1e-300) break;

    Point centroid{};
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[order[k]][i] / n;
    }
    const auto along = [&](double t) {
      Point p;
      for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
      return p;
    };
    const Point refl = along(-1.0);
    const double frefl = sse(refl, q, dmos);
    if (frefl < val[best]) {
      const Point exp = along(-2.0);
      const double fexp = sse(exp, q, dmos);
      if (fexp < frefl) {
        pts[worst] = exp;
        val[worst] = fexp;
      } else {
        pts[worst] = refl;
        val[worst] = frefl;
      }
      continue;
    }
    if (frefl < val[second]) {
      pts[worst] = refl;
      val[worst] = frefl;
      continue;
    }
    const bool outside = frefl < val[worst];
    const Point con = along(outside ? -0.5 : 0.5);
    const double fcon = sse(con, q, dmos);
    if (fcon < (outside ? frefl : val[worst])) {
      pts[worst] = con;
      val[worst] = fcon;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      auto& p = pts[order[k]];
      for (std::size_t i = 0; i < n; ++i) p[i] = pts[best][i] + 0.5 * (p[i] - pts[best][i]);
      val[order[k]] = sse(p, q, dmos);
    }
  }
  const auto it = std::min_element(val.begin(), val.end());
  return {pts[static_cast<std::size_t>(it - val.begin())], *it};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

LogisticFit fit_logistic(std::span<const double> q, std::span<const double> dmos) {
  if (q.size() != dmos.size()) throw Error(ErrorCode::InvalidParams, "score and dmos lengths differ");
  if (q.size() < 4) throw Error(ErrorCode::TooFewPoints, "logistic fit needs at least 4 points");
  const auto [qmin, qmax] = std::minmax_element(q.begin(), q.end());
  if (*qmin == *qmax) throw Error(ErrorCode::DegenerateScores, "all objective scores are equal");
  const auto [dmin, dmax] = std::minmax_element(dmos.begin(), dmos.end());
  const double range = *qmax - *qmin;
  const double mid = median(std::vector<double>(q.begin(), q.end()));

  LogisticFit best;
  best.sse = std::numeric_limits<double>::infinity();
  for (double g4 : {range / 4.0, -range / 4.0, range / 10.0}) {
    std::vector<double> trace;
    SimplexResult r{{*dmax, *dmin, mid, g4}, 0.0};
    r.value = sse(r.best, q, dmos);
    // Fresh simplices around the incumbent until restarts stop paying off.
    for (int restart = 0; restart < 8; ++restart) {
      const double before = r.value;
      r = nelder_mead(r.best, q, dmos, trace);
      if (!(r.value < before * (1.0 - kRelTol))) break;
    }
    if (r.value < best.sse) {
      best.params = to_params(r.best);
      best.sse = r.value;
      best.trace = std::move(trace);
    }
  }
  return best;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidParams, "correlation inputs differ in length");
  if (x.size() < 2) throw Error(ErrorCode::TooFewPoints, "correlation needs at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ConstantInput, "correlation of a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> midranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  return pearson(rx, ry);
}

std::vector<DatasetRecord> parse_manifest(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 4) {
      throw Error(ErrorCode::CorruptFile, "manifest line " + std::to_string(lineno) + ": expected 4 tab-separated fields");
    }
    DatasetRecord r;
    r.subset = fields[0];
    r.ref_path = fields[1];
    r.dist_path = fields[2];
    if (r.ref_path.is_relative()) r.ref_path = base_dir / r.ref_path;
    if (r.dist_path.is_relative()) r.dist_path = base_dir / r.dist_path;
    std::size_t used = 0;
    try {
      r.dmos = std::stod(fields[3], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || !std::isfinite(r.dmos)) {
      throw Error(ErrorCode::CorruptFile, "manifest line " + std::to_string(lineno) + ": bad dmos '" + fields[3] + "'");
    }
    r.line = lineno;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DatasetRecord> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path());
}

CorrelationReport summarize_scores(std::vector<PairScore> scores, Measure measure) {
  CorrelationReport report;
  report.measure = measure;
  std::vector<std::string> order;
  std::map<std::string, std::vector<const PairScore*>> groups;
  for (const auto& s : scores) {
    auto& g = groups[s.subset];
    if (g.empty()) order.push_back(s.subset);
    g.push_back(&s);
  }
  for (const auto& name : order) {
    const auto& g = groups[name];
    if (g.size() < 4) {
      report.skipped.push_back(name + ": " + std::to_string(g.size()) + " usable records, need 4");
      continue;
    }
    std::vector<double> q, d;
    for (const auto* s : g) {
      q.push_back(s->q);
      d.push_back(s->dmos);
    }
    try {
      const auto fit = fit_logistic(q, d);
      std::vector<double> predicted;
      for (double v : q) predicted.push_back(logistic(fit.params, v));
      SubsetReport sr;
      sr.subset = name;
      sr.n = g.size();
      sr.gamma = fit.params;
      sr.pearson = pearson(predicted, d);
      sr.spearman = spearman(q, d);
      report.subsets.push_back(sr);
    } catch (const Error& e) {
      report.skipped.push_back(name + ": " + e.what());
    }
  }
  report.scores = std::move(scores);
  return report;
}

CorrelationReport evaluate_dataset(std::span<const DatasetRecord> records, const EvaluateOptions& opts) {
  std::map<std::filesystem::path, FeatureVector> ref_cache;
  std::vector<PairScore> scores;
  std::vector<RecordError> errors;
  for (const auto& r : records) {
    try {
      auto it = ref_cache.find(r.ref_path);
      if (it == ref_cache.end()) {
        auto fv = extract(load_image(r.ref_path));
        if (opts.quantized) fv = dequantize(quantize(fv));
        it = ref_cache.emplace(r.ref_path, fv).first;
      }
      auto dist = extract(load_image(r.dist_path));
      if (opts.quantized) dist = dequantize(quantize(dist));
      const double q = compare(opts.measure, it->second, dist).value;
      scores.push_back(PairScore{r.subset, r.ref_path, r.dist_path, r.dmos, q});
    } catch (const Error& e) {
      errors.push_back(RecordError{r.line, e.what()});
    }
  }
  auto report = summarize_scores(std::move(scores), opts.measure);
  report.errors = std::move(errors);
  return report;
}

void write_report(std::ostream& out, const CorrelationReport& report) {
  std::ostringstream buf;
  buf << std::setprecision(6);
  buf << "# measure " << to_string(report.measure) << '\n';
  buf << "subset\tn\tpearson\tspearman\tabs_pearson\tabs_spearman\tgamma1\tgamma2\tgamma3\tgamma4\n";
  for (const auto& s : report.subsets) {
    buf << s.subset << '\t' << s.n << '\t' << s.pearson << '\t' << s.spearman << '\t' << std::abs(s.pearson) << '\t'
        << std::abs(s.spearman) << '\t' << s.gamma.gamma1 << '\t' << s.gamma.gamma2 << '\t' << s.gamma.gamma3 << '\t'
        << s.gamma.gamma4 << '\n';
  }
  for (const auto& s : report.skipped) buf << "# skipped " << s << '\n';
  for (const auto& e : report.errors) buf << "# error line " << e.line << ": " << e.message << '\n';
  out << buf.str();
}

void write_scores(std::ostream& out, const CorrelationReport& report) {
  std::ostringstream buf;
  buf << std::setprecision(10);
  buf << "subset\tref\tdist\tdmos\t" << to_string(report.measure) << '\n';
  for (const auto& s : report.scores) {
    buf << s.subset << '\t' << s.ref_path.string() << '\t' << s.dist_path.string() << '\t' << s.dmos << '\t' << s.q
        << '\n';
  }
  out << buf.str();
}

}  // namespace rriqa
