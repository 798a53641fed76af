#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "rriqa/distort.hpp"
#include "rriqa/error.hpp"
#include "rriqa/evaluation.hpp"
#include "rriqa/pgm.hpp"
#include "rriqa/rr_features.hpp"
#include "rriqa/selfcheck.hpp"
#include "rriqa/tetrolet.hpp"

namespace rriqa::cli {
namespace {

std::string six_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

FeatureVector features_of(const std::string& path) {
  if (is_features_file(path)) return dequantize(read_features(path));
  return dequantize(quantize(extract(load_image(path))));
}

void print_histogram(std::ostream& out, const Plane& band, int level, int detail, int bins, double range) {
  const auto vals = band.values();
  if (range <= 0.0) {
    for (double v : vals) range = std::max(range, std::abs(v));
    if (range == 0.0) range = 1.0;
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  std::size_t outside = 0;
  const double width = 2.0 * range / bins;
  for (double v : vals) {
    if (v < -range || v > range) {
      ++outside;
      continue;
    }
    auto k = static_cast<std::size_t>(std::floor((v + range) / width));
    counts[std::min(k, counts.size() - 1)]++;
  }
  out << "# level " << level << " detail " << detail << " bins " << bins << " n " << vals.size() << " outside "
      << outside << '\n';
  out << "lo\thi\tcount\n";
  for (int b = 0; b < bins; ++b) {
    out << six_digits(-range + b * width) << '\t' << six_digits(-range + (b + 1) * width) << '\t'
        << counts[static_cast<std::size_t>(b)] << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduced-reference image quality from tetrolet-domain Bessel K Form statistics", "rriqa"};
  app.require_subcommand(1);

  std::string in_path, out_path, features_path, measure_name = "q5", manifest, dump_path;
  double blur = 0.0, noise = 0.0, range = 0.0;
  std::uint64_t seed = 0;
  int level = 1, detail = 1, bins = 64;
  bool raw_params = false;

  auto* extract_cmd = app.add_subcommand("extract", "Write the reduced-reference feature file for an image");
  extract_cmd->add_option("image", in_path, "Reference image (PGM/PPM)")->required();
  extract_cmd->add_option("--out", out_path, "Output .tqrr file")->required();

  auto* score_cmd = app.add_subcommand("score", "Score a distorted image against reference features");
  score_cmd->add_option("--ref-features", features_path, "Reference .tqrr file")->required();
  score_cmd->add_option("distorted", in_path, "Distorted image, or a second .tqrr file")->required();
  score_cmd->add_option("--measure", measure_name, "q1..q5")->capture_default_str();

  auto* eval_cmd = app.add_subcommand("evaluate", "Correlate scores with subjective DMOS over a manifest");
  eval_cmd->add_option("--manifest", manifest, "Tab-separated subset/ref/dist/dmos manifest")->required();
  eval_cmd->add_option("--measure", measure_name, "q1..q5")->capture_default_str();
  eval_cmd->add_flag("--raw-params", raw_params, "Use unquantized parameters");
  eval_cmd->add_option("--dump-scores", dump_path, "Write per-pair scores to this file");

  auto* distort_cmd = app.add_subcommand("distort", "Apply Gaussian blur or white noise to an image");
  distort_cmd->add_option("image", in_path, "Input image")->required();
  auto* blur_opt = distort_cmd->add_option("--blur", blur, "Gaussian blur sigma");
  auto* noise_opt = distort_cmd->add_option("--noise", noise, "White noise sigma");
  distort_cmd->add_option("--seed", seed, "Noise seed")->capture_default_str();
  distort_cmd->add_option("--out", out_path, "Output PGM")->required();
  blur_opt->excludes(noise_opt);
  noise_opt->excludes(blur_opt);

  auto* tilings_cmd = app.add_subcommand("tilings", "Print the 117 tetromino tilings of a 4x4 block");

  auto* hist_cmd = app.add_subcommand("histogram", "Histogram of one tetrolet detail subband");
  hist_cmd->add_option("image", in_path, "Input image")->required();
  hist_cmd->add_option("--level", level, "Level 1..3")->check(CLI::Range(1, kFeatureLevels))->capture_default_str();
  hist_cmd->add_option("--detail", detail, "Detail index 1..3")->check(CLI::Range(1, 3))->capture_default_str();
  hist_cmd->add_option("--bins", bins, "Number of bins")->check(CLI::PositiveNumber)->capture_default_str();
  hist_cmd->add_option("--range", range, "Histogram covers [-range, range]; default max |c|");

  auto* self_cmd = app.add_subcommand("selfcheck", "Run built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*extract_cmd) {
      const auto qf = quantize(extract(load_image(in_path)));
      write_features(qf, out_path);
    } else if (*score_cmd) {
      const Measure m = parse_measure(measure_name);
      const auto ref = dequantize(read_features(features_path));
      const auto dist = features_of(in_path);
      out << six_digits(compare(m, ref, dist).value) << '\n';
    } else if (*eval_cmd) {
      EvaluateOptions opts;
      opts.measure = parse_measure(measure_name);
      opts.quantized = !raw_params;
      const auto report = evaluate_dataset(read_manifest(manifest), opts);
      write_report(out, report);
      if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) throw Error(ErrorCode::IoError, "cannot write " + dump_path);
        write_scores(dump, report);
      }
    } else if (*distort_cmd) {
      if (blur_opt->count() == 0 && noise_opt->count() == 0) {
        err << "usage error: distort needs --blur or --noise\n";
        return 2;
      }
      const auto img = load_image(in_path);
      save_pgm(blur_opt->count() ? gaussian_blur(img, blur) : add_white_noise(img, noise, seed), out_path);
    } else if (*tilings_cmd) {
      for (const auto& t : tiling_catalog().tilings()) {
        out << t.index << ' ';
        for (auto l : t.labels()) out << static_cast<char>('0' + l);
        out << '\n';
      }
    } else if (*hist_cmd) {
      const auto img = crop_to_multiple(load_image(in_path), std::size_t{1} << (kFeatureLevels + 1));
      const auto dec = forward(img, kFeatureLevels);
      print_histogram(out, subband(dec, level, detail), level, detail, bins, range);
    } else if (*self_cmd) {
      bool ok = true;
      for (const auto& r : run_selfcheck()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rriqa::cli
